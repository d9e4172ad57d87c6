#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/convex_hull.hpp"
#include "core/error.hpp"
#include "core/geodesic.hpp"
#include "core/graph_distance.hpp"
#include "core/rng.hpp"
#include "core/sampler.hpp"
#include "core/tri_surface.hpp"
#include "support/test_util.hpp"
#include "support/unfold_oracle.hpp"

using namespace geodiam;
using namespace geodiam::testing;

namespace {
const double kSqrt5 = std::sqrt(5.0);
}

TEST_CASE("oracle and engine agree on the cube corner pair") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint p = at(s, 0.5, 0.5, 0.5);
  SurfacePoint q = at(s, -0.5, -0.5, -0.5);

  double oracle = oracle_distance(s, p, q, 6);
  CHECK(oracle == doctest::Approx(kSqrt5).epsilon(1e-12));

  GeodesicPath path = exact_distance(s, p, q);
  CHECK(std::abs(path.length - kSqrt5) <= 1e-9);
  CHECK(std::abs(path.length - oracle) <= 1e-12);
}

TEST_CASE("oracle and engine agree on the long-box crossing") {
  // Source on one 12x12 end, one unit below the top edge; target on the
  // opposite end, one unit above the bottom edge. Shortest route spirals
  // over four sides and has length exactly 40.
  TriSurface s = TriSurface::box(30, 12, 12);
  SurfacePoint p = at(s, -15, 0, 5);
  SurfacePoint q = at(s, 15, 0, -5);

  GeodesicPath path = exact_distance(s, p, q);
  CHECK(std::abs(path.length - 40.0) <= 1e-6);

  double oracle = oracle_distance(s, p, q, 12);
  CHECK(std::abs(oracle - 40.0) <= 1e-6);
  CHECK(std::abs(path.length - oracle) <= 1e-9);
}

TEST_CASE("identical endpoints give a single-point path") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint p = at(s, 0.5, 0.1, -0.2);
  GeodesicPath path = exact_distance(s, p, p);
  CHECK(path.length == 0.0);
  CHECK(path.points.size() == 1);
}

TEST_CASE("same-face pairs use the straight chord") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint p = at(s, 0.5, 0.1, 0.1);
  SurfacePoint q = at(s, 0.5, -0.3, 0.2);
  GeodesicPath path = exact_distance(s, p, q);
  CHECK(path.points.size() == 2);
  CHECK(path.length == doctest::Approx(dist(s.embed(p), s.embed(q))).epsilon(1e-14));
}

TEST_CASE("engine matches the oracle on random cube pairs") {
  TriSurface s = TriSurface::box(1, 1, 2);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 24, 5});
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    double engine = exact_distance(s, pts[i], pts[i + 1]).length;
    double oracle = oracle_distance(s, pts[i], pts[i + 1], 10);
    CHECK(engine == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("distance is symmetric") {
  TriSurface s = build_symmetric_hull(40, {1, 1, 1}, 3);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 60, 17});
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    double ab = exact_distance(s, pts[i], pts[i + 1]).length;
    double ba = exact_distance(s, pts[i + 1], pts[i]).length;
    CHECK(std::abs(ab - ba) <= 1e-9 * std::max(ab, 1e-9));
  }
}

TEST_CASE("triangle inequality holds on sampled triples") {
  TriSurface s = TriSurface::box(1, 1, 1);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 90, 23});
  for (size_t i = 0; i + 2 < pts.size(); i += 3) {
    double pq = exact_distance(s, pts[i], pts[i + 1]).length;
    double qr = exact_distance(s, pts[i + 1], pts[i + 2]).length;
    double pr = exact_distance(s, pts[i], pts[i + 2]).length;
    CHECK(pr <= pq + qr + 1e-9 * std::max(1.0, pr));
  }
}

TEST_CASE("chord and graph oracle sandwich the exact distance") {
  TriSurface s = TriSurface::box(1, 1, 1);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 40, 31});
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    const auto &p = pts[i], &q = pts[i + 1];
    double exact = exact_distance(s, p, q).length;
    double chord = dist(s.embed(p), s.embed(q));
    CHECK(exact >= chord - 1e-12);
    double prev = 1e300;
    for (int level = 0; level <= 3; ++level) {
      double g = graph_distance(s, p, q, level);
      CHECK(g >= exact - 1e-9 * std::max(1.0, exact));
      CHECK(g <= prev + 1e-12);  // non-increasing in level
      prev = g;
    }
  }
}

TEST_CASE("graph oracle on cube corners at level 0 uses face diagonals") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint p = at(s, 0.5, 0.5, 0.5);
  SurfacePoint q = at(s, -0.5, -0.5, -0.5);
  // Level 0 has only mesh vertices, but the triangulated quads contribute
  // their diagonals: the best corner route is one cube edge plus a diagonal.
  double g0 = graph_distance(s, p, q, 0);
  CHECK(g0 == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(g0 >= kSqrt5);
}

TEST_CASE("graph oracle converges to the exact value") {
  TriSurface s = TriSurface::box(1, 1, 1);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 30, 77});
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    double exact = exact_distance(s, pts[i], pts[i + 1]).length;
    double g4 = graph_distance(s, pts[i], pts[i + 1], 4);
    if (exact > 1e-12) CHECK(g4 <= 1.02 * exact);
  }
}

TEST_CASE("every returned path is straight in its unfolding") {
  TriSurface s = build_symmetric_hull(50, {1.3, 1, 0.7}, 9);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 40, 41});
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    GeodesicPath path = exact_distance(s, pts[i], pts[i + 1]);
    CHECK(straightness_defect(s, path) <=
          1e-9 * std::max(path.length, 1e-6 * s.bbox_diag()));
  }
}

TEST_CASE("point_along interpolates by arclength") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint p = at(s, 0.5, 0.1, 0.1);
  SurfacePoint q = at(s, 0.5, -0.3, 0.2);
  GeodesicPath path = exact_distance(s, p, q);
  CHECK(s.same_point(point_along(s, path, 0), p));
  CHECK(s.same_point(point_along(s, path, path.length), q));
  Vec3 mid = s.embed(point_along(s, path, path.length / 2));
  CHECK(dist(mid, (s.embed(p) + s.embed(q)) * 0.5) <= 1e-12);
  CHECK(code_of([&] { point_along(s, path, -0.5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { point_along(s, path, path.length + 0.5); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("subpath slices by arclength") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint p = at(s, 0.5, 0.5, 0.5);
  SurfacePoint q = at(s, -0.5, -0.5, -0.5);
  GeodesicPath path = exact_distance(s, p, q);
  GeodesicPath half = subpath(s, path, 0, path.length / 2);
  CHECK(half.length == doctest::Approx(path.length / 2).epsilon(1e-12));
  CHECK(s.same_point(half.points.front(), p));
  GeodesicPath whole = subpath(s, path, 0, path.length);
  CHECK(whole.length == doctest::Approx(path.length).epsilon(1e-12));
  CHECK(whole.points.size() == path.points.size());
}

TEST_CASE("node budget is honored") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint p = at(s, 0.5, 0.5, 0.5);
  SurfacePoint q = at(s, -0.5, -0.5, -0.5);
  DistanceOptions opts;
  opts.node_budget = 2;
  CHECK(code_of([&] { exact_distance(s, p, q, opts); }) ==
        ErrorCode::BudgetExceeded);
}

TEST_CASE("queries are deterministic") {
  TriSurface s = build_symmetric_hull(30, {1, 1, 1}, 21);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 10, 55});
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    GeodesicPath a = exact_distance(s, pts[i], pts[i + 1]);
    GeodesicPath b = exact_distance(s, pts[i], pts[i + 1]);
    CHECK(a.length == b.length);
    REQUIRE(a.points.size() == b.points.size());
    CHECK(a.edges == b.edges);
    for (size_t k = 0; k < a.points.size(); ++k)
      CHECK(dist(s.embed(a.points[k]), s.embed(b.points[k])) == 0.0);
  }
}

TEST_CASE("multi-target results match individual queries") {
  TriSurface s = build_symmetric_hull(30, {1, 1, 1}, 13);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 20, 66});
  SurfacePoint src = pts[0];
  std::vector<SurfacePoint> targets(pts.begin() + 1, pts.end());
  auto multi = exact_distances(s, src, targets);
  for (size_t i = 0; i < targets.size(); ++i) {
    double single = exact_distance(s, src, targets[i]).length;
    CHECK(multi[i].length == doctest::Approx(single).epsilon(1e-13));
  }
}

TEST_CASE("isometry compatibility: the engine respects central symmetry") {
  TriSurface s = build_symmetric_hull(40, {1, 1.2, 0.9}, 29);
  auto pts = sample_points(s, {Sampler::Strategy::FaceUniform, 40, 71});
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    double d1 = exact_distance(s, pts[i], pts[i + 1]).length;
    SurfacePoint ip = s.locate(-s.embed(pts[i]), 1e-9 * s.bbox_diag());
    SurfacePoint iq = s.locate(-s.embed(pts[i + 1]), 1e-9 * s.bbox_diag());
    double d2 = exact_distance(s, ip, iq).length;
    CHECK(std::abs(d1 - d2) <= s.eps_isometry());
  }
}
