#pragma once

#include <string>
#include <vector>

#include "tri_surface.hpp"

namespace geodiam {

// Weighted graph with an involutive node permutation: the exact, discrete
// model on which the antipodal-diameter statement can be checked with
// all-pairs shortest paths and no floating-point subtlety.
struct DiscreteLengthSpace {
  int nodes = 0;
  std::vector<std::array<double, 3>> edges;  // (i, j, w), w > 0
  std::vector<int> involution;

  static DiscreteLengthSpace from_json(const std::string& text);
  std::string to_json() const;

  // Raises InvalidSpace when disconnected, weights non-positive, or the
  // permutation is not an involution / has fixed points.
  void validate() const;
};

struct DiscreteCheckReport {
  double diameter = 0;           // max over all node pairs
  double antipodal_diameter = 0; // max over pairs (i, perm(i))
  bool equal = false;
  double tolerance = 0;          // 0 for integer weights, 1e-12 otherwise
  int nodes = 0;
  std::string to_json() const;
};

DiscreteCheckReport discrete_theorem_check(const DiscreteLengthSpace& space);

// Test-corpus builders.
DiscreteLengthSpace cycle_space(int half);  // C_{2*half}, unit weights
// Graph of a triangulated surface; unit or Euclidean edge weights. The
// involution is the vertex map v -> closest vertex to -v (must be exact).
DiscreteLengthSpace surface_graph_space(const TriSurface& s, bool unit_weights);

}  // namespace geodiam
