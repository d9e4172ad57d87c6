#pragma once

#include <functional>

#include "tri_surface.hpp"

namespace geodiam {

// Walk distance `travel` from `start` along the in-plane direction `dir`,
// crossing edges by unrolling the direction into each next face. Stops early
// at (rare) vertex grazes. Returns the canonical endpoint.
SurfacePoint trace_walk(const TriSurface& s, const SurfacePoint& start,
                        Vec3 dir, double travel);

struct RefineOptions {
  int max_shrink_rounds = 60;
  double initial_radius = -1;  // <= 0: mean edge length / 4
  double min_radius = -1;      // <= 0: eps_point
  int max_evals = 20000;
};

// Derivative-free compass search over the surface: evaluates the objective at
// a shrinking 4-point stencil in the current face chart, walking across faces
// when a stencil point leaves the face. Never returns a point with a smaller
// objective than the start.
SurfacePoint refine_local_max(
    const TriSurface& s, const std::function<double(const SurfacePoint&)>& objective,
    const SurfacePoint& start, const RefineOptions& opts = {});

}  // namespace geodiam
