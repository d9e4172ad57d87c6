#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diameter.hpp"
#include "jordan.hpp"

namespace geodiam {

struct VerifyOptions {
  int trials = 20;
  uint64_t seed = 1;
  int hull_points = 50;
  Vec3 semi_axes{1, 1, 1};
  int samples = 500;
  bool refine = true;
  int swap_samples = 200;
  int scan_resolution = 4096;
  uint64_t node_budget = 1'000'000;
};

struct VerifyTrialReport {
  uint64_t seed = 0;
  int vertices = 0, faces = 0;
  double diam_brute = 0, diam_antipodal = 0, agreement_defect = 0;
  double minimal_pair_distance = 0;
  int curve_segments = 0;
  bool curve_simple = false;
  int regions = 0;
  int swap_samples = 0;
  double chain_a = 0, chain_b = 0, chain_c = 0, chain_d = 0;
  bool passed = false;
  std::string error;
};

struct VerifyReport {
  std::vector<VerifyTrialReport> trials;
  bool passed = false;
  std::string to_json() const;
};

// Runs the full construction per trial on a fresh random symmetric hull:
// both diameter methods, the minimal antipodal pair on the x..I(x) geodesic,
// the closed curve, the two-region split, the region swap and the
// equality-chain quantities for the maximizing pair.
VerifyReport verify_theorem(const VerifyOptions& opts);

}  // namespace geodiam
