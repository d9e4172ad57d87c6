#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tri_surface.hpp"

namespace geodiam {

struct InvolutionCheckReport {
  double involutivity_defect = 0;   // max |I(I(p)) - p| over samples
  double isometry_defect = 0;       // max |rho(I(x),I(y)) - rho(x,y)|
  int isometry_pairs = 0;
  double min_antipodal_chord = 0;   // min |p - I(p)| over samples
  double refined_min_antipodal = 0; // after local minimization
  bool fixed_point_free = false;
  int samples = 0;
  uint64_t seed = 0;
  std::string to_json() const;
};

// An involutive isometry of a surface. Central symmetries on exactly
// symmetric meshes act through precomputed vertex/face permutations, so a
// double application reproduces the input bit for bit; a geometric fallback
// (reflect through the center, re-locate) covers faces without a mirror twin.
class Involution {
 public:
  enum class Kind { CentralSymmetry, VertexPermutation };

  // Central symmetry about the surface's declared center.
  // Raises NotSymmetric when the vertex set is not closed under reflection.
  static Involution central_symmetry(const TriSurface& s);

  // Map induced by a vertex permutation; every face image must exist in the
  // mesh. The permutation need not be involutive or free of fixed points --
  // check() measures both (identity maps are constructible on purpose).
  static Involution vertex_permutation(const TriSurface& s, std::vector<int> perm);

  // {"type":"vertex-permutation","perm":[...]} or {"type":"central-symmetry"}.
  static Involution from_json(const TriSurface& s, const std::string& json_text);

  Kind kind() const { return kind_; }
  const TriSurface& surface() const { return *surface_; }

  SurfacePoint apply(const SurfacePoint& p) const;

  // Involutivity, isometry (on min(200, nsamples/2) pairs, distances via the
  // exact engine) and fixed-point-freeness on seeded samples.
  InvolutionCheckReport check(int nsamples, uint64_t seed) const;

  // Cheap gate used as a precondition by antipodal workflows.
  bool quick_precondition_ok() const;

 private:
  Kind kind_ = Kind::CentralSymmetry;
  const TriSurface* surface_ = nullptr;
  std::optional<Vec3> center_;
  std::vector<int> vertex_image_;
  std::vector<int> face_image_;  // -1 where no combinatorial twin exists

  double refine_min_chord(const SurfacePoint& start, double start_val) const;
};

}  // namespace geodiam
