#pragma once

// Exhaustive unfolding oracle: enumerates every edge sequence up to a depth
// bound by plain depth-first search and re-checks feasibility of the straight
// unfolded segment against each crossed edge, with no best-first pruning and
// no window propagation. Slow but structurally independent of the engine.

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/tri_surface.hpp"
#include "core/vec.hpp"

namespace geodiam::testing {

class UnfoldOracle {
 public:
  explicit UnfoldOracle(const TriSurface& s, int max_depth = 12)
      : s_(s), max_depth_(max_depth) {}

  double distance(const SurfacePoint& p, const SurfacePoint& q) {
    SurfacePoint cp = s_.canonical(p), cq = s_.canonical(q);
    best_ = 1e300;
    if (s_.same_point(cp, cq)) return 0.0;

    auto pf = s_.incident_faces(cp);
    auto qf = s_.incident_faces(cq);
    target_faces_ = qf;
    for (int f : pf)
      if (std::find(qf.begin(), qf.end(), f) != qf.end())
        best_ = std::min(best_, dist(s_.embed(cp), s_.embed(cq)));

    qpos_ = s_.embed(cq);
    for (int f : pf) start_from_face(f, cp);
    return best_;
  }

 private:
  const TriSurface& s_;
  int max_depth_;
  double best_ = 1e300;
  Vec3 qpos_;
  std::vector<int> target_faces_;

  struct Crossing {
    Vec2 a, b;  // unfolded edge endpoints
  };

  // Face layout in the plane during one DFS branch.
  struct FlatFace {
    std::array<int, 3> ids;
    std::array<Vec2, 3> pos;
  };

  void start_from_face(int f, const SurfacePoint& p) {
    const auto& fv = s_.face(f);
    Vec3 n = s_.face_normal(f);
    Vec3 e1 = normalized(s_.vertex(fv[1]) - s_.vertex(fv[0]));
    Vec3 e2 = normalized(cross(n, e1));
    Vec3 origin = s_.embed(p);
    FlatFace flat;
    flat.ids = fv;
    for (int k = 0; k < 3; ++k) {
      Vec3 d = s_.vertex(fv[k]) - origin;
      flat.pos[k] = {dot(d, e1), dot(d, e2)};
    }
    std::vector<Crossing> crossings;
    dfs(f, flat, crossings, 1);
  }

  void try_target(int f, const FlatFace& flat,
                  const std::vector<Crossing>& crossings) {
    if (std::find(target_faces_.begin(), target_faces_.end(), f) ==
        target_faces_.end())
      return;
    auto bq = s_.bary_in_face(f, qpos_);
    Vec2 T{0, 0};
    for (int k = 0; k < 3; ++k) T = T + flat.pos[k] * std::max(0.0, bq[k]);

    // The straight segment from the origin to T must cross every unfolded
    // edge inside its span, at increasing ray parameters.
    double prev_r = 0;
    const double tol = 1e-9;
    for (const Crossing& c : crossings) {
      double denom = cross(T, c.b - c.a);
      if (std::abs(denom) < 1e-300) return;
      double r = cross(c.a, c.b - c.a) / denom;
      double ca = cross(T, c.a), cb = cross(T, c.b);
      double tden = ca - cb;
      if (std::abs(tden) < 1e-300) return;
      double t = ca / tden;
      if (t < -tol || t > 1 + tol) return;
      if (r < prev_r - tol || r > 1 + tol) return;
      prev_r = r;
    }
    best_ = std::min(best_, norm(T));
  }

  void dfs(int f, const FlatFace& flat, std::vector<Crossing>& crossings,
           int depth) {
    try_target(f, flat, crossings);
    if (depth >= max_depth_) return;

    const auto& fv = s_.face(f);
    for (int k = 0; k < 3; ++k) {
      int g = s_.face_neighbor(f, k);
      if (g < 0) continue;
      // Skip the edge we came in through.
      if (!crossings.empty()) {
        int e = s_.face_edge(f, k);
        const auto& ed = s_.edge(e);
        Vec2 pa{}, pb{};
        for (int m = 0; m < 3; ++m) {
          if (flat.ids[m] == ed.v0) pa = flat.pos[m];
          if (flat.ids[m] == ed.v1) pb = flat.pos[m];
        }
        const Crossing& last = crossings.back();
        if ((dist(pa, last.a) < 1e-12 && dist(pb, last.b) < 1e-12) ||
            (dist(pa, last.b) < 1e-12 && dist(pb, last.a) < 1e-12))
          continue;
      }

      int va = fv[k], vb = fv[(k + 1) % 3];
      Vec2 A{}, B{};
      for (int m = 0; m < 3; ++m) {
        if (flat.ids[m] == va) A = flat.pos[m];
        if (flat.ids[m] == vb) B = flat.pos[m];
      }

      // Unfold the neighbor about (A, B), apex opposite this face's interior.
      const auto& gv = s_.face(g);
      int apex = -1;
      for (int v : gv)
        if (v != va && v != vb) apex = v;
      Vec2 AB = B - A;
      double lab = norm(AB);
      if (lab <= 0) continue;
      double la = dist(s_.vertex(apex), s_.vertex(va));
      double lb = dist(s_.vertex(apex), s_.vertex(vb));
      double u = (la * la - lb * lb + lab * lab) / (2 * lab);
      double h2 = la * la - u * u;
      double h = h2 > 0 ? std::sqrt(h2) : 0;
      Vec2 e2d = AB / lab;
      Vec2 other{};
      for (int m = 0; m < 3; ++m)
        if (flat.ids[m] != va && flat.ids[m] != vb) other = flat.pos[m];
      double side_old = cross(AB, other - A);
      Vec2 C = A + e2d * u + perp(e2d) * (side_old > 0 ? -h : h);

      FlatFace next;
      next.ids = gv;
      for (int m = 0; m < 3; ++m) {
        if (gv[m] == va)
          next.pos[m] = A;
        else if (gv[m] == vb)
          next.pos[m] = B;
        else
          next.pos[m] = C;
      }
      crossings.push_back({A, B});
      dfs(g, next, crossings, depth + 1);
      crossings.pop_back();
    }
  }
};

inline double oracle_distance(const TriSurface& s, const SurfacePoint& p,
                              const SurfacePoint& q, int max_depth = 12) {
  UnfoldOracle oracle(s, max_depth);
  return oracle.distance(p, q);
}

}  // namespace geodiam::testing
