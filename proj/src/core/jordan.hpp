#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geodesic.hpp"
#include "involution.hpp"
#include "tri_surface.hpp"

namespace geodiam {

// Pair (u, v) on a curve with v = I(u), minimizing the surface distance.
struct MinimalAntipodalPair {
  SurfacePoint u, v;
  double distance = 0;
  double s_u = 0, s_v = 0;  // arclength positions of u and v on the curve
  int qualifying_samples = 0;
};

// Scans `gamma` (a curve from x to I(x)) at `resolution` arclength samples;
// among samples whose image lands back on the curve (within eps_point),
// returns the pair with the smallest exact distance. The endpoints always
// qualify, so the result exists.
MinimalAntipodalPair minimal_antipodal_pair(const TriSurface& s,
                                            const GeodesicPath& gamma,
                                            const Involution& inv,
                                            int resolution);

// Simple closed curve on the surface, stored cyclically with
// points.front() == points.back().
struct ClosedCurve {
  std::vector<SurfacePoint> points;
  std::vector<Vec3> embedded;
  int junction_u = 0;   // index of the u-tilde junction
  int junction_v = -1;  // index of the v-tilde junction (arc boundary)

  int segment_count() const { return static_cast<int>(points.size()) - 1; }
};

// Builds a closed curve from explicit points (first and last must coincide)
// and verifies simplicity by a pairwise segment-distance scan.
ClosedCurve make_closed_curve(const TriSurface& s,
                              std::vector<SurfacePoint> points);

// Concatenates `sub_arc` (from u to I(u)) with its image under I, reversed.
// Raises SimplicityViolation when the two arcs intersect off their endpoints.
ClosedCurve build_jordan_curve(const TriSurface& s, const GeodesicPath& sub_arc,
                               const Involution& inv);

struct Fragment {
  int face = -1;
  std::vector<Vec2> polygon;  // CCW in the face chart
  std::vector<Vec2> hole;     // inner loop for the loop-in-face case
  bool whole_face = false;
  int region = -1;
};

// The two disk regions a simple closed curve cuts out of a sphere surface.
class RegionSplit {
 public:
  const std::vector<Fragment>& fragments() const { return fragments_; }
  std::array<int, 2> region_fragment_count() const;
  std::array<double, 2> region_area() const { return region_area_; }
  std::array<int, 2> region_whole_faces() const { return region_whole_faces_; }

  // 0 or 1; -1 when the point is on (or within tolerance of) the curve.
  int region_of(const SurfacePoint& p) const;

  std::string to_json() const;

 private:
  friend RegionSplit classify_regions(const TriSurface& s, const ClosedCurve& curve);
  const TriSurface* surface_ = nullptr;
  std::vector<Fragment> fragments_;
  std::vector<std::vector<int>> face_fragments_;
  std::vector<Vec3> curve_points_;
  std::array<double, 2> region_area_{0, 0};
  std::array<int, 2> region_whole_faces_{0, 0};
};

// Cuts the faces crossed by the curve into fragments, floods the fragment
// adjacency graph (adjacency across curve-covered edge intervals removed) and
// asserts exactly two connected regions.
RegionSplit classify_regions(const TriSurface& s, const ClosedCurve& curve);

struct SwapReport {
  int samples = 0;
  int swapped = 0;
  int skipped_on_curve = 0;
  bool passed = false;
  std::string justification;
  std::string to_json() const;
};

// Samples points off the curve and asserts that I exchanges the two regions.
// Raises SwapViolation (with the offending sample) on failure.
SwapReport check_region_swap(const TriSurface& s, const Involution& inv,
                             const RegionSplit& split, int nsamples,
                             uint64_t seed);

struct ChainReport {
  // a = rho(x,t)+rho(t,y)-rho(x,y), b = same through the images,
  // c = rho(x,t)+rho(I(x),t)-rho(x,I(x)), d = same at y.
  double a = 0, b = 0, c = 0, d = 0;
  double rho_xy = 0, rho_x_ix = 0, rho_y_iy = 0;
  std::string to_json() const;
};

ChainReport equality_chain_check(const TriSurface& s, const Involution& inv,
                                 const SurfacePoint& x, const SurfacePoint& y,
                                 const SurfacePoint& t);

// Point on `path` closest to the curve (the first such point at minimal
// distance); used to pick the proof's intersection point t.
SurfacePoint curve_path_intersection(const TriSurface& s,
                                     const ClosedCurve& curve,
                                     const GeodesicPath& path);

}  // namespace geodiam
