#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tri_surface.hpp"

namespace geodiam {

// Deterministic point sampling: identical (strategy, count, seed) triples
// produce identical point lists on every platform.
struct Sampler {
  enum class Strategy {
    FaceUniform,  // area-weighted random faces, uniform barycentric
    Lattice,      // all vertices + all edge midpoints (count ignored)
  };
  Strategy strategy = Strategy::FaceUniform;
  int count = 500;
  uint64_t seed = 42;

  static Strategy parse_strategy(const std::string& name);
};

std::vector<SurfacePoint> sample_points(const TriSurface& s, const Sampler& sampler);

}  // namespace geodiam
