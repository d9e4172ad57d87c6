#pragma once

namespace geodiam {

// Scale-relative tolerance factors. Absolute values are resolved against a
// surface's bounding-box diagonal (or a path's length for straightness).
struct Tolerances {
  double point_rel = 1e-10;       // point identity, x bbox diagonal
  double degenerate_rel = 1e-12;  // face area floor, x bbox diagonal^2
  double convex_rad = 1e-9;       // dihedral slack, radians
  double isometry_rel = 1e-8;     // isometry defect, x bbox diagonal
  double straight_rel = 1e-9;     // path straightness, x path length
  double match_rel = 1e-6;        // cross-method agreement, x bbox diagonal
  double chain_rel = 1e-6;        // equality-chain defect, x bbox diagonal
};

}  // namespace geodiam
