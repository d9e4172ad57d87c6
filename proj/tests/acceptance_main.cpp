// Acceptance suite: one check per shipped guarantee, each printed as a
// PASS/FAIL line with its measured value, tolerance and runtime. Returns a
// nonzero exit code when any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "core/convex_hull.hpp"
#include "core/diameter.hpp"
#include "core/discrete_space.hpp"
#include "core/error.hpp"
#include "core/geodesic.hpp"
#include "core/graph_distance.hpp"
#include "core/involution.hpp"
#include "core/jordan.hpp"
#include "core/rng.hpp"
#include "core/sampler.hpp"
#include "core/tri_surface.hpp"
#include "core/verify.hpp"
#include "support/unfold_oracle.hpp"

using namespace geodiam;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail, double elapsed, double budget_s) {
  bool in_time = elapsed <= budget_s;
  bool passed = ok && in_time;
  std::printf("[%d] %-34s %s  (%s; %.1fs of %.0fs budget)\n", criterion,
              name.c_str(), passed ? "PASS" : "FAIL", detail.c_str(), elapsed,
              budget_s);
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

SurfacePoint locate(const TriSurface& s, double x, double y, double z) {
  return s.locate({x, y, z}, 1e-6 * s.bbox_diag());
}

// ---- 1. cross-method agreement on boxes and random hulls -------------------

void criterion_1() {
  auto start_all = Clock::now();
  struct Case {
    std::string name;
    TriSurface surface;
  };
  std::vector<Case> cases;
  cases.push_back({"box 1x1x1", TriSurface::box(1, 1, 1)});
  cases.push_back({"box 1x1x2", TriSurface::box(1, 1, 2)});
  cases.push_back({"box 1x2x4", TriSurface::box(1, 2, 4)});
  for (int i = 0; i < 20; ++i)
    cases.push_back({"hull seed " + std::to_string(100 + i),
                     build_symmetric_hull(50, {1, 1, 1}, 100 + i)});

  bool ok = true;
  double worst_rel = 0;
  double worst_time = 0;
  std::string worst_case;
  for (auto& c : cases) {
    auto start = Clock::now();
    const TriSurface& s = c.surface;
    Involution inv = Involution::central_symmetry(s);
    DiameterOptions opts;
    opts.sampler = {Sampler::Strategy::FaceUniform, 500, 42};
    opts.refine = true;
    CrossMethodReport cross = diameter_cross_check(s, inv, opts);
    double defect = cross.agreement_defect;
    double tol = 1e-6 * s.bbox_diag();
    double elapsed = seconds_since(start);
    worst_time = std::max(worst_time, elapsed);
    if (defect / s.bbox_diag() > worst_rel) {
      worst_rel = defect / s.bbox_diag();
      worst_case = c.name;
    }
    if (defect > tol || elapsed > 60.0) {
      ok = false;
      std::printf("    -> %s: defect %.3g (tol %.3g), %.1fs\n", c.name.c_str(),
                  defect, tol, elapsed);
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "23 surfaces, worst defect %.2e x bbox (%s), slowest %.1fs",
                worst_rel, worst_case.c_str(), worst_time);
  report(1, "cross-method agreement", ok && worst_time <= 60.0, detail,
         seconds_since(start_all), 23 * 60.0);
}

// ---- 2. exact-distance golden values ----------------------------------------

void criterion_2() {
  auto start = Clock::now();
  bool ok = true;
  char detail[200];

  TriSurface cube = TriSurface::box(1, 1, 1);
  SurfacePoint a = locate(cube, 0.5, 0.5, 0.5);
  SurfacePoint b = locate(cube, -0.5, -0.5, -0.5);
  double engine_cube = exact_distance(cube, a, b).length;
  double oracle_cube = testing::oracle_distance(cube, a, b, 6);
  double sqrt5 = std::sqrt(5.0);
  ok = ok && std::abs(engine_cube - sqrt5) <= 1e-9;
  ok = ok && std::abs(oracle_cube - sqrt5) <= 1e-9;

  TriSurface box = TriSurface::box(30, 12, 12);
  SurfacePoint p = locate(box, -15, 0, 5);
  SurfacePoint q = locate(box, 15, 0, -5);
  double engine_box = exact_distance(box, p, q).length;
  double oracle_box = testing::oracle_distance(box, p, q, 12);
  ok = ok && std::abs(engine_box - 40.0) <= 1e-6;
  ok = ok && std::abs(oracle_box - 40.0) <= 1e-6;

  std::snprintf(detail, sizeof detail,
                "cube %.12f vs sqrt5 (oracle %.12f); box %.9f vs 40 (oracle %.9f)",
                engine_cube, oracle_cube, engine_box, oracle_box);
  report(2, "exact-distance golden values", ok, detail, seconds_since(start), 5.0);
}

// ---- 3. footnote-1 reproduction ---------------------------------------------

void criterion_3() {
  auto start = Clock::now();
  TriSurface s = TriSurface::box(1, 1, 4);
  SurfacePoint from = locate(s, 0.5, 0.5, 2.0);
  SurfacePoint opposite = locate(s, -0.5, -0.5, -2.0);
  double opp_dist = exact_distance(s, from, opposite).length;

  DiameterOptions opts;
  opts.sampler = {Sampler::Strategy::FaceUniform, 2000, 42};
  opts.refine = true;
  FarthestReport far = farthest_point(s, from, opts);

  double sep = dist(s.embed(far.point), s.embed(opposite));
  bool ok = far.distance > opp_dist && sep > 10 * s.eps_point();
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "farthest %.9f > opposite %.9f, separation %.3g (floor %.3g)",
                far.distance, opp_dist, sep, 10 * s.eps_point());
  report(3, "hermit point leaves the antipode", ok, detail,
         seconds_since(start), 120.0);
}

// ---- 4. discrete exact oracle -----------------------------------------------

void criterion_4() {
  auto start = Clock::now();
  bool ok = true;
  int graphs = 0;

  for (int half = 2; half <= 50; ++half) {
    auto r = discrete_theorem_check(cycle_space(half));
    ok = ok && r.equal && r.tolerance == 0.0 &&
         r.diameter == static_cast<double>(half);
    ++graphs;
  }
  auto check_surface = [&](const TriSurface& s, bool unit) {
    auto r = discrete_theorem_check(surface_graph_space(s, unit));
    ok = ok && r.equal;
    ++graphs;
  };
  TriSurface ico = icosahedron_surface();
  TriSurface sub2 = subdivide_midpoint(subdivide_midpoint(ico, true), true);
  check_surface(octahedron_surface(), true);
  check_surface(ico, true);
  check_surface(sub2, true);
  check_surface(sub2, false);  // euclidean weights, 1e-12 comparison

  char detail[120];
  std::snprintf(detail, sizeof detail, "A = D on all %d graphs", graphs);
  report(4, "discrete exact oracle", ok, detail, seconds_since(start), 10.0);
}

// ---- 5. proof-construction pipeline -----------------------------------------

void criterion_5() {
  auto start = Clock::now();
  VerifyOptions opts;
  opts.trials = 20;
  opts.seed = 1;
  opts.hull_points = 50;
  opts.samples = 500;
  opts.swap_samples = 200;
  opts.scan_resolution = 4096;
  VerifyReport r = verify_theorem(opts);

  int passed = 0;
  double worst_chain = -1e300;
  for (const auto& t : r.trials) {
    passed += t.passed ? 1 : 0;
    for (double v : {t.chain_a, t.chain_b, t.chain_c, t.chain_d})
      worst_chain = std::max(worst_chain, v);
    if (!t.passed)
      std::printf("    -> trial seed %llu failed: %s\n",
                  static_cast<unsigned long long>(t.seed), t.error.c_str());
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%d/20 trials, worst chain defect %.2e", passed, worst_chain);
  report(5, "proof-construction pipeline", r.passed, detail,
         seconds_since(start), 600.0);
}

// ---- 6. engine invariant suite ----------------------------------------------

void criterion_6() {
  auto start = Clock::now();
  bool ok = true;
  std::string fail_note;

  TriSurface cube = TriSurface::box(1, 1, 1);
  TriSurface hull = build_symmetric_hull(50, {1, 1, 1}, 8);

  // Symmetry on 250 pairs per surface.
  for (const TriSurface* sp : {&cube, &hull}) {
    const TriSurface& s = *sp;
    auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 500, 1234});
    for (int i = 0; i + 1 < 500 && ok; i += 2) {
      double ab = exact_distance(s, pts[i], pts[i + 1]).length;
      double ba = exact_distance(s, pts[i + 1], pts[i]).length;
      if (std::abs(ab - ba) > 1e-9 * std::max(ab, 1e-9)) {
        ok = false;
        fail_note = "symmetry";
      }
    }
  }

  // Triangle inequality on 500 triples.
  {
    auto pts = sample_points(cube, {Sampler::Strategy::FaceUniform, 1500, 777});
    for (int i = 0; i + 2 < 1500 && ok; i += 3) {
      double pq = exact_distance(cube, pts[i], pts[i + 1]).length;
      double qr = exact_distance(cube, pts[i + 1], pts[i + 2]).length;
      double pr = exact_distance(cube, pts[i], pts[i + 2]).length;
      if (pr > pq + qr + 1e-9 * std::max(1.0, pr)) {
        ok = false;
        fail_note = "triangle inequality";
      }
    }
  }

  // Chord / graph sandwich on 500 pairs, plus path straightness.
  {
    auto pts = sample_points(cube, {Sampler::Strategy::FaceUniform, 1000, 4321});
    for (int i = 0; i + 1 < 1000 && ok; i += 2) {
      GeodesicPath path = exact_distance(cube, pts[i], pts[i + 1]);
      double chord = dist(cube.embed(pts[i]), cube.embed(pts[i + 1]));
      double g2 = graph_distance(cube, pts[i], pts[i + 1], 2);
      if (path.length < chord - 1e-12 ||
          g2 < path.length - 1e-9 * std::max(1.0, path.length)) {
        ok = false;
        fail_note = "sandwich";
      }
      if (straightness_defect(cube, path) >
          1e-9 * std::max(path.length, 1e-6)) {
        ok = false;
        fail_note = "straightness";
      }
    }
  }

  // Graph oracle within 2% at level 4 on 100 cube pairs.
  double worst_ratio = 1.0;
  {
    auto pts = sample_points(cube, {Sampler::Strategy::FaceUniform, 200, 2024});
    for (int i = 0; i + 1 < 200 && ok; i += 2) {
      double exact = exact_distance(cube, pts[i], pts[i + 1]).length;
      if (exact <= 1e-9) continue;
      double g4 = graph_distance(cube, pts[i], pts[i + 1], 4);
      worst_ratio = std::max(worst_ratio, g4 / exact);
      if (g4 > 1.02 * exact) {
        ok = false;
        fail_note = "graph convergence";
      }
    }
  }

  char detail[160];
  std::snprintf(detail, sizeof detail, "%s; worst graph/exact ratio %.5f",
                ok ? "all invariants hold" : ("failed: " + fail_note).c_str(),
                worst_ratio);
  report(6, "engine invariant suite", ok, detail, seconds_since(start), 120.0);
}

// ---- 7. involution suite ------------------------------------------------------

void criterion_7() {
  auto start = Clock::now();
  bool ok = true;
  double worst_inv = 0, worst_iso_rel = 0, worst_min = 1e300;

  std::vector<TriSurface> corpus;
  corpus.push_back(TriSurface::box(1, 1, 1));
  corpus.push_back(TriSurface::box(1, 1, 2));
  corpus.push_back(TriSurface::box(1, 2, 4));
  corpus.push_back(TriSurface::box(1, 1, 4));
  corpus.push_back(TriSurface::box(30, 12, 12));
  corpus.push_back(octahedron_surface());
  corpus.push_back(build_symmetric_hull(50, {1, 1, 1}, 7));
  corpus.push_back(build_symmetric_hull(50, {1.4, 1, 0.7}, 13));

  for (const TriSurface& s : corpus) {
    Involution inv = Involution::central_symmetry(s);
    auto r = inv.check(1000, 99);
    worst_inv = std::max(worst_inv, r.involutivity_defect);
    worst_iso_rel = std::max(worst_iso_rel, r.isometry_defect / s.bbox_diag());
    worst_min = std::min(worst_min, r.min_antipodal_chord);
    if (r.involutivity_defect > 1e-12 ||
        r.isometry_defect > 1e-8 * s.bbox_diag() ||
        !(r.min_antipodal_chord > 0) || !r.fixed_point_free)
      ok = false;
  }
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "8 surfaces; involutivity %.2e (<=1e-12), isometry %.2e x bbox "
                "(<=1e-8), min antipodal chord %.3g",
                worst_inv, worst_iso_rel, worst_min);
  report(7, "involution suite", ok, detail, seconds_since(start), 60.0);
}

// ---- 8. sphere limit sanity -----------------------------------------------------

void criterion_8() {
  auto start = Clock::now();
  TriSurface s = build_symmetric_hull(400, {1, 1, 1}, 3);
  Involution inv = Involution::central_symmetry(s);
  DiameterOptions opts;
  opts.sampler = {Sampler::Strategy::FaceUniform, 500, 42};
  opts.refine = true;
  DiameterReport r = antipodal_diameter(s, inv, opts);

  const double pi = 3.14159265358979323846;
  bool ok = r.diameter >= 0.98 * pi && r.diameter <= 1.02 * pi;
  // Cross-check against the graph oracle upper bound on the final pair.
  double g = graph_distance(s, r.p, r.q, 2);
  ok = ok && r.diameter <= g + 1e-9;

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "antipodal diameter %.6f vs pi (ratio %.4f), graph bound %.6f",
                r.diameter, r.diameter / pi, g);
  report(8, "sphere limit sanity", ok, detail, seconds_since(start), 120.0);
}

}  // namespace

int main() {
  auto start = Clock::now();
  std::printf("geodiam acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%s (%d failure%s, %.1fs total)\n",
              g_failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED",
              g_failures, g_failures == 1 ? "" : "s", seconds_since(start));
  return g_failures == 0 ? 0 : 1;
}
