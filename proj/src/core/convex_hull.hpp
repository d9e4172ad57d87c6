#pragma once

#include <cstdint>
#include <vector>

#include "tri_surface.hpp"
#include "vec.hpp"

namespace geodiam {

// Triangulated convex hull of a 3D point set (incremental construction).
// Raises DegenerateInput when all points are coplanar.
TriSurface convex_hull(const std::vector<Vec3>& points,
                       std::optional<Vec3> center = std::nullopt);

// Hull of points U (-points); centrally symmetric about the origin.
TriSurface symmetric_hull_of_points(std::vector<Vec3> points);

// n seeded samples on the ellipsoid with the given semi-axes, symmetrized.
TriSurface build_symmetric_hull(int n, const Vec3& semi_axes, uint64_t seed);

}  // namespace geodiam
