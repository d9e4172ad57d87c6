#pragma once

#include <string>

#include "core/error.hpp"
#include "core/tri_surface.hpp"

namespace geodiam::testing {

inline SurfacePoint at(const TriSurface& s, double x, double y, double z) {
  return s.locate({x, y, z}, 1e-6 * std::max(1.0, s.bbox_diag()));
}

inline SurfacePoint vertex_point(const TriSurface& s, int v) {
  int f = s.vertex_faces(v).front();
  SurfacePoint sp;
  sp.face = f;
  const auto& fv = s.face(f);
  for (int k = 0; k < 3; ++k) sp.bary[k] = fv[k] == v ? 1.0 : 0.0;
  return s.canonical(sp);
}

inline ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace geodiam::testing
