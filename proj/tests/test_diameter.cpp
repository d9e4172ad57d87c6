#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/convex_hull.hpp"
#include "core/diameter.hpp"
#include "core/error.hpp"
#include "core/geodesic.hpp"
#include "core/pattern_search.hpp"
#include "core/tri_surface.hpp"
#include "support/test_util.hpp"

using namespace geodiam;
using namespace geodiam::testing;

namespace {
const double kSqrt5 = std::sqrt(5.0);

DiameterOptions fast_opts(Sampler sampler, bool refine) {
  DiameterOptions o;
  o.sampler = sampler;
  o.refine = refine;
  return o;
}
}  // namespace

TEST_CASE("lattice sampler on the cube yields 26 points") {
  TriSurface s = TriSurface::box(1, 1, 1);
  auto pts = sample_points(s, {Sampler::Strategy::Lattice, 0, 0});
  CHECK(pts.size() == 26);  // 8 vertices + 18 edge midpoints
}

TEST_CASE("brute force on the cube lattice finds the corner pair") {
  TriSurface s = TriSurface::box(1, 1, 1);
  auto r = brute_force_diameter(s, fast_opts({Sampler::Strategy::Lattice, 0, 0}, false));
  CHECK(r.method == "brute");
  CHECK(r.samples_used == 26);
  CHECK(r.diameter >= kSqrt5 - 1e-12);
  CHECK(r.antipodal);  // opposite corners are a symmetric pair
  CHECK(r.chord_lower <= r.diameter + 1e-12);
  CHECK(r.graph_upper >= r.diameter - 1e-9);
}

TEST_CASE("single-sample brute force degenerates to a zero diameter") {
  TriSurface s = TriSurface::box(1, 1, 1);
  auto r = brute_force_diameter(s, fast_opts({Sampler::Strategy::FaceUniform, 1, 9}, false));
  CHECK(r.samples_used == 1);
  CHECK(r.diameter == 0.0);
  CHECK(s.same_point(r.p, r.q));
}

TEST_CASE("refinement never loses value") {
  TriSurface s = TriSurface::box(1, 1, 2);
  Sampler sampler{Sampler::Strategy::FaceUniform, 60, 11};
  auto rough = brute_force_diameter(s, fast_opts(sampler, false));
  auto refined = brute_force_diameter(s, fast_opts(sampler, true));
  CHECK(refined.diameter >= rough.diameter - 1e-12);
}

TEST_CASE("pattern search climbs to an in-face maximum") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Vec3 target{0.18, -0.07, 0.5};
  auto objective = [&](const SurfacePoint& p) {
    return -norm2(s.embed(p) - target);
  };
  SurfacePoint start = at(s, -0.2, 0.3, 0.5);
  RefineOptions opts;
  SurfacePoint result = refine_local_max(s, objective, start, opts);
  CHECK(dist(s.embed(result), target) <= 1e-6);
}

TEST_CASE("pattern search returns the start for a constant objective") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint start = at(s, 0.1, 0.2, 0.5);
  SurfacePoint result =
      refine_local_max(s, [](const SurfacePoint&) { return 1.0; }, start, {});
  CHECK(s.same_point(result, start));
}

TEST_CASE("trace_walk stays on the surface and covers the distance") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint start = at(s, 0.1, 0.2, 0.5);
  SurfacePoint moved = trace_walk(s, start, {1, 0, 0}, 0.9);
  auto [snapped, d] = s.project(s.embed(moved));
  CHECK(d <= 1e-12);
  CHECK(dist(s.embed(moved), s.embed(start)) > 0.3);
}

TEST_CASE("antipodal and brute methods agree on the octahedron lattice") {
  TriSurface s = octahedron_surface();
  Involution inv = Involution::central_symmetry(s);
  Sampler lattice{Sampler::Strategy::Lattice, 0, 0};
  auto anti = antipodal_diameter(s, inv, fast_opts(lattice, true));
  auto brute = brute_force_diameter(s, fast_opts(lattice, true));
  CHECK(anti.method == "antipodal");
  CHECK(anti.antipodal);
  CHECK(anti.diameter >= std::sqrt(6.0) - 1e-9);  // the vertex pair value
  CHECK(std::abs(anti.diameter - brute.diameter) <= s.eps_match());
  CHECK(s.same_point(anti.q, inv.apply(anti.p)));
}

TEST_CASE("cross-method agreement on a box") {
  TriSurface s = TriSurface::box(1, 1, 2);
  Involution inv = Involution::central_symmetry(s);
  DiameterOptions opts = fast_opts({Sampler::Strategy::FaceUniform, 200, 42}, true);
  auto brute = brute_force_diameter(s, opts);
  auto anti = antipodal_diameter(s, inv, opts);
  CHECK(std::abs(brute.diameter - anti.diameter) <= s.eps_match());
  CHECK(anti.diameter >= kSqrt5 - 1e-9);  // cube-corner route lower bound
}

TEST_CASE("antipodal diameter on the cube reaches the corner pair") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  auto r = antipodal_diameter(s, inv, fast_opts({Sampler::Strategy::Lattice, 0, 0}, true));
  CHECK(r.diameter >= kSqrt5 - 1e-9);
  CHECK(r.antipodal);
}

TEST_CASE("antipodal mode rejects broken involutions") {
  TriSurface s = octahedron_surface();
  Involution identity = Involution::vertex_permutation(s, {0, 1, 2, 3, 4, 5});
  CHECK(code_of([&] { antipodal_diameter(s, identity, {}); }) ==
        ErrorCode::InvolutionCheckFailed);
}

TEST_CASE("reports are deterministic") {
  TriSurface s = TriSurface::box(1, 1, 2);
  DiameterOptions opts = fast_opts({Sampler::Strategy::FaceUniform, 80, 8}, true);
  auto a = brute_force_diameter(s, opts);
  auto b = brute_force_diameter(s, opts);
  CHECK(a.diameter == b.diameter);
  CHECK(s.embed(a.p).x == s.embed(b.p).x);
  CHECK(s.embed(a.q).z == s.embed(b.q).z);
}

TEST_CASE("farthest point from a cube vertex is the opposite vertex") {
  TriSurface s = TriSurface::box(1, 1, 1);
  SurfacePoint from = at(s, 0.5, 0.5, 0.5);
  auto r = farthest_point(s, from, fast_opts({Sampler::Strategy::FaceUniform, 300, 4}, true));
  CHECK(r.distance >= kSqrt5 - 1e-6);
  CHECK(r.distance <= kSqrt5 + 1e-6);
  CHECK(dist(s.embed(r.point), {-0.5, -0.5, -0.5}) <= 1e-3);
}

TEST_CASE("farthest point from itself is trivial") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Sampler one{Sampler::Strategy::FaceUniform, 1, 12};
  SurfacePoint only = sample_points(s, one)[0];
  auto r = farthest_point(s, only, fast_opts(one, false));
  CHECK(r.distance == 0.0);
  CHECK(s.same_point(r.point, only));
}

TEST_CASE("on a long box the hermit point leaves the opposite vertex") {
  TriSurface s = TriSurface::box(1, 1, 4);
  SurfacePoint from = at(s, 0.5, 0.5, 2.0);
  SurfacePoint opposite = at(s, -0.5, -0.5, -2.0);
  double opp = exact_distance(s, from, opposite).length;
  CHECK(opp == doctest::Approx(std::sqrt(20.0)).epsilon(1e-12));

  auto r = farthest_point(s, from, fast_opts({Sampler::Strategy::FaceUniform, 600, 2}, true));
  CHECK(r.distance > opp);
  CHECK(dist(s.embed(r.point), s.embed(opposite)) > 10 * s.eps_point());
}
