#pragma once

#include "tri_surface.hpp"

namespace geodiam {

// Shortest-path length between p and q in the subdivision graph whose nodes
// are the mesh vertices plus 3^level - 1 evenly spaced nodes per edge, with
// an edge between every node pair sharing a face (weight = 3D distance).
// Upper bound on the exact distance, non-increasing in level.
double graph_distance(const TriSurface& s, const SurfacePoint& p,
                      const SurfacePoint& q, int level);

}  // namespace geodiam
