#pragma once

#include <string>

#include "involution.hpp"
#include "pattern_search.hpp"
#include "sampler.hpp"
#include "tri_surface.hpp"

namespace geodiam {

struct DiameterReport {
  double diameter = 0;
  SurfacePoint p, q;
  bool antipodal = false;  // q == I(p) within eps_point
  std::string method;      // "brute" | "antipodal"
  int samples_used = 0;
  int refine_rounds = 0;
  double chord_lower = 0;  // |p - q| in 3D
  double graph_upper = 0;  // subdivision-graph bound on the final pair
  // Sampled points whose objective came within eps_match of the maximum.
  int near_max_count = 0;

  std::string to_json(const TriSurface& s) const;
};

struct DiameterOptions {
  Sampler sampler{Sampler::Strategy::FaceUniform, 500, 42};
  bool refine = true;
  RefineOptions refine_opts{};
  int refine_alternations = 6;
  // Refinement restarts from the best k sampled candidates; the sampled
  // maximum alone can sit in the wrong basin on bumpy random hulls.
  int refine_top_k = 3;
  int max_brute_samples = 2000;
  uint64_t node_budget = 1'000'000;
};

// Oracle: exact distances over all unordered sample pairs, optional local
// refinement of the best pair (alternating pattern search on each endpoint).
DiameterReport brute_force_diameter(const TriSurface& s,
                                    const DiameterOptions& opts = {});

// Theorem-driven reduction: maximizes rho(x, I(x)) over samples (O(n) exact
// queries), optional refinement. Requires I to pass involutivity and
// fixed-point-freeness checks.
DiameterReport antipodal_diameter(const TriSurface& s, const Involution& inv,
                                  const DiameterOptions& opts = {});

struct FarthestReport {
  SurfacePoint point;
  double distance = 0;
};

FarthestReport farthest_point(const TriSurface& s, const SurfacePoint& from,
                              const DiameterOptions& opts = {});

struct CrossMethodReport {
  DiameterReport brute;
  DiameterReport antipodal;
  double agreement_defect = 0;
  bool agree = false;  // defect <= eps_match
};

// Runs both diameter methods, then lets each polish from the other's
// maximizer until the values stabilize. The cross-seeding removes search
// luck from the comparison without removing its power: if a maximizing pair
// were not antipodal, no amount of antipodal polishing could reach the pair
// value and the defect would stand.
CrossMethodReport diameter_cross_check(const TriSurface& s, const Involution& inv,
                                       const DiameterOptions& opts = {});

}  // namespace geodiam
