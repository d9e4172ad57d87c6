#include "pattern_search.hpp"

#include <cmath>

#include "error.hpp"

namespace geodiam {

SurfacePoint trace_walk(const TriSurface& s, const SurfacePoint& start,
                        Vec3 dir, double travel) {
  SurfacePoint cur = s.canonical(start);
  int f = cur.face;
  Vec3 pos = s.embed(cur);
  // Step off edges/vertices so the first crossing test is unambiguous.
  pos = pos + (s.face_centroid(f) - pos) * 1e-9;

  // Project the direction into the current face plane.
  Vec3 n = s.face_normal(f);
  dir = dir - n * dot(dir, n);
  double dn = norm(dir);
  if (dn <= 0) return cur;
  dir = dir / dn;

  const int max_hops = 256;
  for (int hop = 0; hop < max_hops && travel > 0; ++hop) {
    const auto& fv = s.face(f);
    // First crossing of the ray pos + t*dir with the face's edges.
    double best_t = 1e300;
    int best_slot = -1;
    for (int k = 0; k < 3; ++k) {
      Vec3 a = s.vertex(fv[k]), b = s.vertex(fv[(k + 1) % 3]);
      // Solve in the face plane: the edge normal within the plane.
      Vec3 edge = b - a;
      Vec3 inward = cross(s.face_normal(f), edge);
      double denom = dot(dir, inward);
      if (denom >= -1e-300) continue;  // moving away from this edge
      double t = dot(a - pos, inward) / denom;
      if (t > 1e-12 * s.bbox_diag() && t < best_t) {
        best_t = t;
        best_slot = k;
      }
    }
    if (best_slot < 0 || best_t >= travel) {
      pos = pos + dir * travel;
      break;
    }
    // Cross into the neighbor; transport the direction isometrically.
    pos = pos + dir * best_t;
    travel -= best_t;
    int g = s.face_neighbor(f, best_slot);
    if (g < 0) break;
    int e = s.face_edge(f, best_slot);
    const auto& ed = s.edge(e);
    Vec3 t_hat = normalized(s.vertex(ed.v1) - s.vertex(ed.v0));
    Vec3 nf = s.face_normal(f), ng = s.face_normal(g);
    double a_comp = dot(dir, t_hat);
    double b_comp = dot(dir, cross(nf, t_hat));
    dir = t_hat * a_comp + cross(ng, t_hat) * b_comp;
    dir = normalized(dir);
    f = g;
    // Nudge off the edge to keep the barycentric classification stable.
    Vec3 centroid = s.face_centroid(f);
    pos = pos + (centroid - pos) * 1e-12;
  }

  SurfacePoint sp;
  sp.face = f;
  sp.bary = s.bary_in_face(f, pos);
  for (double& b : sp.bary) b = std::max(0.0, b);
  double sum = sp.bary[0] + sp.bary[1] + sp.bary[2];
  for (double& b : sp.bary) b /= sum;
  return s.canonical(sp);
}

SurfacePoint refine_local_max(
    const TriSurface& s, const std::function<double(const SurfacePoint&)>& objective,
    const SurfacePoint& start, const RefineOptions& opts) {
  SurfacePoint best = s.canonical(start);
  double best_val = objective(best);
  int evals = 1;

  double radius = opts.initial_radius > 0 ? opts.initial_radius
                                          : s.mean_edge_length() / 4.0;
  double min_radius = opts.min_radius > 0 ? opts.min_radius : s.eps_point();

  int shrinks = 0;
  int round = 0;
  while (shrinks < opts.max_shrink_rounds && radius > min_radius &&
         evals < opts.max_evals) {
    // Chart axes of the current face, rotated by a per-round golden-angle
    // offset so poll directions never stay aligned with an objective crease.
    const auto& fv = s.face(best.face);
    Vec3 n = s.face_normal(best.face);
    Vec3 a1 = normalized(s.vertex(fv[1]) - s.vertex(fv[0]));
    Vec3 a2 = normalized(cross(n, a1));
    double theta = 2.3999632297286533 * round++;
    Vec3 e1 = a1 * std::cos(theta) + a2 * std::sin(theta);
    Vec3 e2 = a2 * std::cos(theta) - a1 * std::sin(theta);

    bool moved = false;
    const double r2 = std::sqrt(0.5);
    const Vec3 dirs[8] = {e1,
                          -e1,
                          e2,
                          -e2,
                          (e1 + e2) * r2,
                          (e1 - e2) * r2,
                          (e2 - e1) * r2,
                          (e1 + e2) * -r2};
    SurfacePoint step_best = best;
    double step_val = best_val;
    for (const Vec3& d : dirs) {
      SurfacePoint cand = trace_walk(s, best, d, radius);
      double v = objective(cand);
      ++evals;
      if (v > step_val + 1e-15 * std::max(1.0, std::abs(step_val))) {
        step_val = v;
        step_best = cand;
        moved = true;
      }
    }
    if (moved) {
      best = step_best;
      best_val = step_val;
    } else {
      radius *= 0.5;
      ++shrinks;
    }
  }
  return best;
}

}  // namespace geodiam
