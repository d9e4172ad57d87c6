#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tri_surface.hpp"

namespace geodiam {

// A shortest curve as an edge-crossing polyline. Interior points lie on mesh
// edges; `edges[i]` is the mesh edge carrying `points[i+1]`.
struct GeodesicPath {
  std::vector<SurfacePoint> points;
  std::vector<int> edges;
  double length = 0;

  std::string to_json(const TriSurface& s) const;
  std::string to_polyline_obj(const TriSurface& s) const;
};

struct DistanceOptions {
  uint64_t node_budget = 1'000'000;
};

// Exact shortest path between two surface points on a validated convex
// surface, via best-first search over edge-sequence unfoldings. Among
// equal-length optima returns the lexicographically smallest edge sequence.
// Raises BudgetExceeded when the node budget runs out.
GeodesicPath exact_distance(const TriSurface& s, const SurfacePoint& p,
                            const SurfacePoint& q,
                            const DistanceOptions& opts = {});

// Single-source multi-target variant sharing one search tree.
std::vector<GeodesicPath> exact_distances(const TriSurface& s,
                                          const SurfacePoint& p,
                                          std::span<const SurfacePoint> targets,
                                          const DistanceOptions& opts = {});

// Point at the given arclength from the source (canonical form).
SurfacePoint point_along(const TriSurface& s, const GeodesicPath& path,
                         double arclength);

// Sub-polyline between two arclengths, 0 <= s0 <= s1 <= length.
GeodesicPath subpath(const TriSurface& s, const GeodesicPath& path, double s0,
                     double s1);

// Max of |sum of 3D segments - unfolded straight length| and the deviation of
// unfolded polyline points from the straight segment.
double straightness_defect(const TriSurface& s, const GeodesicPath& path);

// Smallest face shared by two surface points (they must share one).
int segment_host_face(const TriSurface& s, const SurfacePoint& a,
                      const SurfacePoint& b);

}  // namespace geodiam
