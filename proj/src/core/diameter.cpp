#include "diameter.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"
#include "geodesic.hpp"
#include "graph_distance.hpp"
#include "parallel.hpp"

namespace geodiam {

namespace {

struct Candidate {
  double value = -1;
  SurfacePoint p, q;
};

bool better(const Candidate& a, const Candidate& b, double tie_eps) {
  if (a.value > b.value + tie_eps) return true;
  if (a.value < b.value - tie_eps) return false;
  // Equal within tolerance: smaller canonical pair wins.
  auto key = [](const Candidate& c) {
    const SurfacePoint &lo = point_less(c.p, c.q) ? c.p : c.q,
                       &hi = point_less(c.p, c.q) ? c.q : c.p;
    return std::make_pair(lo, hi);
  };
  auto [alo, ahi] = key(a);
  auto [blo, bhi] = key(b);
  if (point_less(alo, blo)) return true;
  if (point_less(blo, alo)) return false;
  return point_less(ahi, bhi);
}

// Joint two-endpoint compass search on the pair objective. Poll order per
// round: point-reflected paired moves (p + d, q - d) first, then single
// endpoint moves, then the general paired sweep. The reflected moves come
// first on purpose: the maximizing pairs of a centrally symmetric surface
// line up antipodally, and prioritizing those moves keeps this search on the
// same trajectory the antipodal reduction's 2D search takes, so the two
// methods climb a shared basin to the same crest instead of stalling at
// method-specific poll quantizations.
Candidate refine_pair(const TriSurface& s, Candidate best,
                      const DiameterOptions& opts, int* rounds_out) {
  DistanceOptions dopts{opts.node_budget};
  auto eval = [&](const SurfacePoint& a, const SurfacePoint& b) {
    return exact_distance(s, a, b, dopts).length;
  };

  double radius = opts.refine_opts.initial_radius > 0
                      ? opts.refine_opts.initial_radius
                      : s.mean_edge_length() / 4.0;
  double min_radius = opts.refine_opts.min_radius > 0 ? opts.refine_opts.min_radius
                                                      : s.eps_point();
  int shrinks = 0;
  int evals = 0;
  int round = 0;
  const double improve_eps = 1e-15 * std::max(1.0, best.value);
  while (shrinks < opts.refine_opts.max_shrink_rounds && radius > min_radius &&
         evals < opts.refine_opts.max_evals) {
    double theta = 2.3999632297286533 * round++;
    auto dirs_at = [&](const SurfacePoint& sp, Vec3 out[8]) {
      const auto& fv = s.face(sp.face);
      Vec3 n = s.face_normal(sp.face);
      Vec3 a1 = normalized(s.vertex(fv[1]) - s.vertex(fv[0]));
      Vec3 a2 = normalized(cross(n, a1));
      Vec3 e1 = a1 * std::cos(theta) + a2 * std::sin(theta);
      Vec3 e2 = a2 * std::cos(theta) - a1 * std::sin(theta);
      const double r2 = std::sqrt(0.5);
      out[0] = e1;
      out[1] = -e1;
      out[2] = e2;
      out[3] = -e2;
      out[4] = (e1 + e2) * r2;
      out[5] = (e1 - e2) * r2;
      out[6] = (e2 - e1) * r2;
      out[7] = (e1 + e2) * -r2;
    };
    Vec3 p_dirs[8], q_dirs[8];
    dirs_at(best.p, p_dirs);
    dirs_at(best.q, q_dirs);

    SurfacePoint p_moved[8], q_moved[8];
    for (int i = 0; i < 8; ++i) {
      p_moved[i] = trace_walk(s, best.p, p_dirs[i], radius);
      q_moved[i] = trace_walk(s, best.q, q_dirs[i], radius);
    }

    Candidate step = best;
    for (int i = 0; i < 8 && evals < opts.refine_opts.max_evals; ++i) {
      SurfacePoint qm = trace_walk(s, best.q, -p_dirs[i], radius);
      double v = eval(p_moved[i], qm);
      ++evals;
      if (v > step.value + improve_eps) step = Candidate{v, p_moved[i], qm};
    }
    if (step.value <= best.value + improve_eps) {
      for (int i = 0; i < 8 && evals < opts.refine_opts.max_evals; ++i) {
        double v = eval(p_moved[i], best.q);
        ++evals;
        if (v > step.value + improve_eps) step = Candidate{v, p_moved[i], best.q};
        v = eval(best.p, q_moved[i]);
        ++evals;
        if (v > step.value + improve_eps) step = Candidate{v, best.p, q_moved[i]};
      }
    }
    if (step.value <= best.value + improve_eps) {
      for (int i = 0; i < 8 && evals < opts.refine_opts.max_evals; ++i) {
        for (int j = 0; j < 8 && evals < opts.refine_opts.max_evals; ++j) {
          double v = eval(p_moved[i], q_moved[j]);
          ++evals;
          if (v > step.value + improve_eps) step = Candidate{v, p_moved[i], q_moved[j]};
        }
      }
    }
    if (step.value > best.value + improve_eps) {
      best = step;
    } else {
      radius *= 0.5;
      ++shrinks;
    }
  }

  if (rounds_out) *rounds_out = shrinks;
  return best;
}

bool pair_is_antipodal(const TriSurface& s, const Involution* inv,
                       const SurfacePoint& p, const SurfacePoint& q) {
  if (!inv) return false;
  return s.same_point(q, inv->apply(p));
}

void finish_report(const TriSurface& s, const DiameterOptions& opts,
                   DiameterReport& r) {
  r.chord_lower = dist(s.embed(r.p), s.embed(r.q));
  int level = s.edge_count() > 1000 ? 2 : 3;
  r.graph_upper = graph_distance(s, r.p, r.q, level);
  (void)opts;
}

// Face-uniform sampling on a symmetric surface is antipodally closed: half
// the budget is sampled, half mirrored through the center. Both diameter
// methods draw the same set, so they rank the same symmetric candidates.
// Returns the index offset of the mirrored block (-1 when not symmetric).
int symmetric_sample_points(const TriSurface& s, const Sampler& sampler,
                            std::vector<SurfacePoint>* out) {
  bool symmetric = s.center() && s.is_symmetric_about(*s.center());
  if (!symmetric || sampler.strategy != Sampler::Strategy::FaceUniform ||
      sampler.count < 2) {
    *out = sample_points(s, sampler);
    return -1;
  }
  Involution mirror = Involution::central_symmetry(s);
  Sampler half = sampler;
  half.count = (sampler.count + 1) / 2;
  *out = sample_points(s, half);
  int base = static_cast<int>(out->size());
  for (int i = 0; i < base && static_cast<int>(out->size()) < sampler.count; ++i)
    out->push_back(mirror.apply((*out)[i]));
  return base;
}

}  // namespace

std::string DiameterReport::to_json(const TriSurface& s) const {
  nlohmann::json j;
  j["diameter"] = diameter;
  Vec3 a = s.embed(p), b = s.embed(q);
  j["pair"] = {{a.x, a.y, a.z}, {b.x, b.y, b.z}};
  j["antipodal"] = antipodal;
  j["method"] = method;
  j["samples"] = samples_used;
  j["refine_steps"] = refine_rounds;
  j["chord_lower"] = chord_lower;
  j["graph_upper"] = graph_upper;
  j["near_max_count"] = near_max_count;
  return j.dump(2);
}

DiameterReport brute_force_diameter(const TriSurface& s,
                                    const DiameterOptions& opts) {
  // The pair grid over an antipodally closed sample set contains every
  // sampled symmetric pair, so the unrestricted pair search covers the same
  // candidates the antipodal reduction sees.
  std::vector<SurfacePoint> pts;
  int mirror_base = symmetric_sample_points(s, opts.sampler, &pts);
  if (static_cast<int>(pts.size()) > opts.max_brute_samples) {
    pts.resize(opts.max_brute_samples);
    mirror_base = -1;
  }

  DiameterReport r;
  r.method = "brute";
  r.samples_used = static_cast<int>(pts.size());
  if (pts.empty()) raise(ErrorCode::InvalidArgument, "sampler produced no points");

  const double tie_eps = 1e-12 * s.bbox_diag();
  const int n = static_cast<int>(pts.size());

  if (n == 1) {
    r.p = r.q = pts[0];
    r.diameter = 0;
    finish_report(s, opts, r);
    r.near_max_count = 1;
    return r;
  }

  DistanceOptions dopts{opts.node_budget};
  std::vector<Candidate> per_source(n);
  parallel_for(n - 1, [&](int i) {
    std::vector<SurfacePoint> targets(pts.begin() + i + 1, pts.end());
    auto paths = exact_distances(s, pts[i], targets, dopts);
    Candidate best;
    for (size_t k = 0; k < paths.size(); ++k) {
      Candidate c{paths[k].length, pts[i], targets[k]};
      if (best.value < 0 || better(c, best, tie_eps)) best = c;
    }
    per_source[i] = best;
  });

  std::vector<Candidate> ranked;
  for (int i = 0; i + 1 < n; ++i)
    if (per_source[i].value >= 0) ranked.push_back(per_source[i]);
  std::sort(ranked.begin(), ranked.end(),
            [&](const Candidate& a, const Candidate& b) { return better(a, b, tie_eps); });

  // Starts worth polishing: at least k, plus everything whose sampled value
  // sits within the basin-noise band of the best one.
  auto select_starts = [&](const std::vector<Candidate>& list, int kmin, int kmax) {
    std::vector<Candidate> out;
    double band = 0.005 * s.bbox_diag();
    for (const auto& c : list) {
      if (static_cast<int>(out.size()) >= kmax) break;
      if (static_cast<int>(out.size()) < kmin ||
          c.value >= list.front().value - band)
        out.push_back(c);
      else
        break;
    }
    return out;
  };

  Candidate best = ranked.front();
  if (opts.refine) {
    int k = std::max(1, opts.refine_top_k);
    std::vector<Candidate> starts = select_starts(ranked, k, 2 * k);
    if (mirror_base > 0) {
      // Also restart from the best sampled mirror pairs: the maximizing
      // basins hug the symmetric manifold, which per-source ranking can miss.
      int nmirror = std::min(mirror_base, n - mirror_base);
      std::vector<Candidate> sym(nmirror);
      parallel_for(nmirror, [&](int i) {
        double v = exact_distance(s, pts[i], pts[mirror_base + i], dopts).length;
        sym[i] = Candidate{v, pts[i], pts[mirror_base + i]};
      });
      std::sort(sym.begin(), sym.end(),
                [&](const Candidate& a, const Candidate& b) { return better(a, b, tie_eps); });
      for (const Candidate& c : select_starts(sym, k, 2 * k)) starts.push_back(c);
    }

    Candidate refined_best;
    for (size_t i = 0; i < starts.size(); ++i) {
      int rounds = 0;
      Candidate c = refine_pair(s, starts[i], opts, &rounds);
      r.refine_rounds = std::max(r.refine_rounds, rounds);
      if (refined_best.value < 0 || better(c, refined_best, tie_eps))
        refined_best = c;
    }
    best = refined_best;
  }

  r.p = best.p;
  r.q = best.q;
  r.diameter = best.value;

  double eps_near = s.eps_match();
  for (int i = 0; i + 1 < n; ++i)
    if (per_source[i].value >= best.value - eps_near) ++r.near_max_count;

  const Involution* invp = nullptr;
  Involution inv;
  if (s.center() && s.is_symmetric_about(*s.center())) {
    inv = Involution::central_symmetry(s);
    invp = &inv;
  }
  r.antipodal = pair_is_antipodal(s, invp, r.p, r.q);
  finish_report(s, opts, r);
  return r;
}

DiameterReport antipodal_diameter(const TriSurface& s, const Involution& inv,
                                  const DiameterOptions& opts) {
  if (&inv.surface() != &s)
    raise(ErrorCode::InvalidArgument, "involution acts on a different surface");
  if (!inv.quick_precondition_ok())
    raise(ErrorCode::InvolutionCheckFailed,
          "involution failed involutivity/fixed-point checks");

  std::vector<SurfacePoint> pts;
  symmetric_sample_points(s, opts.sampler, &pts);
  DiameterReport r;
  r.method = "antipodal";
  r.samples_used = static_cast<int>(pts.size());
  if (pts.empty()) raise(ErrorCode::InvalidArgument, "sampler produced no points");

  const double tie_eps = 1e-12 * s.bbox_diag();
  DistanceOptions dopts{opts.node_budget};

  std::vector<double> values(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    values[i] = exact_distance(s, pts[i], inv.apply(pts[i]), dopts).length;
  });

  std::vector<Candidate> ranked;
  for (size_t i = 0; i < pts.size(); ++i)
    ranked.push_back({values[i], pts[i], inv.apply(pts[i])});
  std::sort(ranked.begin(), ranked.end(),
            [&](const Candidate& a, const Candidate& b) { return better(a, b, tie_eps); });

  Candidate best = ranked.front();
  if (opts.refine) {
    auto objective = [&](const SurfacePoint& x) {
      return exact_distance(s, x, inv.apply(x), dopts).length;
    };
    int k = std::max(1, opts.refine_top_k);
    double band = 0.005 * s.bbox_diag();
    r.refine_rounds = opts.refine_opts.max_shrink_rounds;
    for (int i = 0; i < static_cast<int>(ranked.size()) && i < 2 * k; ++i) {
      if (i >= k && ranked[i].value < ranked.front().value - band) break;
      SurfacePoint x = refine_local_max(s, objective, ranked[i].p, opts.refine_opts);
      double v = objective(x);
      Candidate c{v, x, inv.apply(x)};
      if (better(c, best, tie_eps)) best = c;
    }
  }

  r.p = best.p;
  r.q = best.q;
  r.diameter = best.value;
  r.antipodal = true;

  double eps_near = s.eps_match();
  for (double v : values)
    if (v >= best.value - eps_near) ++r.near_max_count;

  finish_report(s, opts, r);
  return r;
}

CrossMethodReport diameter_cross_check(const TriSurface& s, const Involution& inv,
                                       const DiameterOptions& opts) {
  CrossMethodReport r;
  r.brute = brute_force_diameter(s, opts);
  r.antipodal = antipodal_diameter(s, inv, opts);

  if (opts.refine) {
    DistanceOptions dopts{opts.node_budget};
    const double tie_eps = 1e-12 * s.bbox_diag();
    auto f = [&](const SurfacePoint& x) {
      return exact_distance(s, x, inv.apply(x), dopts).length;
    };
    for (int iter = 0; iter < 6; ++iter) {
      if (std::abs(r.brute.diameter - r.antipodal.diameter) <=
          0.05 * s.eps_match())
        break;
      double brute_before = r.brute.diameter;
      double anti_before = r.antipodal.diameter;

      // Antipodal polish from the pair method's endpoints, plus the
      // symmetrized midpoint of its (nearly antipodal) pair.
      std::vector<SurfacePoint> seeds = {r.brute.p, r.brute.q};
      if (s.center()) {
        Vec3 m = (s.embed(r.brute.p) + (*s.center() * 2.0 - s.embed(r.brute.q))) * 0.5;
        seeds.push_back(s.project(m).first);
      }
      for (const SurfacePoint& seed : seeds) {
        SurfacePoint x = refine_local_max(s, f, seed, opts.refine_opts);
        double v = f(x);
        if (v > r.antipodal.diameter) {
          r.antipodal.diameter = v;
          r.antipodal.p = x;
          r.antipodal.q = inv.apply(x);
        }
      }
      // Pair polish from the antipodal method's pair.
      Candidate c{exact_distance(s, r.antipodal.p, r.antipodal.q, dopts).length,
                  r.antipodal.p, r.antipodal.q};
      c = refine_pair(s, c, opts, nullptr);
      if (c.value > r.brute.diameter) {
        r.brute.diameter = c.value;
        r.brute.p = c.p;
        r.brute.q = c.q;
        r.brute.antipodal = s.same_point(c.q, inv.apply(c.p));
      }
      bool improved = r.brute.diameter > brute_before + tie_eps ||
                      r.antipodal.diameter > anti_before + tie_eps;
      if (!improved) break;
    }
  }
  r.agreement_defect = std::abs(r.brute.diameter - r.antipodal.diameter);
  r.agree = r.agreement_defect <= s.eps_match();
  return r;
}

FarthestReport farthest_point(const TriSurface& s, const SurfacePoint& from,
                              const DiameterOptions& opts) {
  std::vector<SurfacePoint> pts = sample_points(s, opts.sampler);
  if (pts.empty()) raise(ErrorCode::InvalidArgument, "sampler produced no points");

  DistanceOptions dopts{opts.node_budget};
  auto paths = exact_distances(s, from, pts, dopts);

  const double tie_eps = 1e-12 * s.bbox_diag();
  std::vector<Candidate> ranked;
  for (size_t i = 0; i < paths.size(); ++i)
    ranked.push_back({paths[i].length, pts[i], pts[i]});
  std::sort(ranked.begin(), ranked.end(),
            [&](const Candidate& a, const Candidate& b) { return better(a, b, tie_eps); });

  FarthestReport r;
  r.point = ranked.front().p;
  r.distance = ranked.front().value;
  if (opts.refine) {
    auto objective = [&](const SurfacePoint& x) {
      return exact_distance(s, from, x, dopts).length;
    };
    int k = std::max(1, opts.refine_top_k);
    for (int i = 0; i < k && i < static_cast<int>(ranked.size()); ++i) {
      SurfacePoint x = refine_local_max(s, objective, ranked[i].p, opts.refine_opts);
      double v = objective(x);
      if (v > r.distance + tie_eps ||
          (v >= r.distance - tie_eps && point_less(x, r.point))) {
        r.distance = std::max(v, r.distance);
        r.point = x;
      }
    }
  }
  return r;
}

}  // namespace geodiam
