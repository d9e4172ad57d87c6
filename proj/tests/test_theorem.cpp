#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/convex_hull.hpp"
#include "core/diameter.hpp"
#include "core/error.hpp"
#include "core/geodesic.hpp"
#include "core/jordan.hpp"
#include "core/tri_surface.hpp"
#include "core/verify.hpp"
#include "support/test_util.hpp"

using namespace geodiam;
using namespace geodiam::testing;

namespace {
const double kSqrt5 = std::sqrt(5.0);

GeodesicPath concat_paths(const TriSurface& s, std::vector<GeodesicPath> parts) {
  GeodesicPath out = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) {
    const GeodesicPath& next = parts[i];
    for (size_t k = 1; k < next.points.size(); ++k) {
      out.length += dist(s.embed(next.points[k - 1]), s.embed(next.points[k]));
      out.points.push_back(next.points[k]);
      if (k - 1 < next.edges.size()) out.edges.push_back(next.edges[k - 1]);
    }
  }
  return out;
}
}  // namespace

TEST_CASE("minimal antipodal pair on a vertex geodesic is the endpoints") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  SurfacePoint x = at(s, 0.5, 0.5, 0.5);
  GeodesicPath gamma = exact_distance(s, x, inv.apply(x));

  auto mp = minimal_antipodal_pair(s, gamma, inv, 64);
  CHECK(mp.distance == doctest::Approx(kSqrt5).epsilon(1e-12));
  CHECK(s.same_point(mp.u, x));
  CHECK(s.same_point(mp.v, inv.apply(x)));
  CHECK(mp.qualifying_samples == 2);
}

TEST_CASE("resolution 2 scans only the endpoints") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  SurfacePoint x = at(s, 0.3, -0.2, 0.5);
  GeodesicPath gamma = exact_distance(s, x, inv.apply(x));
  auto mp = minimal_antipodal_pair(s, gamma, inv, 2);
  CHECK(s.same_point(mp.u, x));
  CHECK(mp.distance ==
        doctest::Approx(exact_distance(s, x, inv.apply(x)).length).epsilon(1e-12));
  CHECK(code_of([&] { minimal_antipodal_pair(s, gamma, inv, 1); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("interior antipodal pairs are found on a synthetic detour curve") {
  // Route a curve from a cube vertex to its antipode through the two opposite
  // face centers: the scan must find the strictly closer interior pair.
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  SurfacePoint x = at(s, 0.5, 0.5, 0.5);
  SurfacePoint c = at(s, 0.0, 0.0, 0.5);
  SurfacePoint ix = inv.apply(x), ic = inv.apply(c);

  GeodesicPath gamma = concat_paths(
      s, {exact_distance(s, x, c), exact_distance(s, c, ic),
          exact_distance(s, ic, ix)});
  CHECK(gamma.length > kSqrt5);

  auto mp = minimal_antipodal_pair(s, gamma, inv, 513);
  CHECK(mp.qualifying_samples > 2);
  CHECK(mp.distance < kSqrt5 - 0.1);
  CHECK(mp.distance >= 2.0 - 1e-9);  // rho(c, -c) = 2 is the floor here
  CHECK(exact_distance(s, mp.u, mp.v).length ==
        doctest::Approx(mp.distance).epsilon(1e-12));
}

TEST_CASE("the Jordan curve from a cube diagonal is simple and splits the cube") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  SurfacePoint x = at(s, 0.5, 0.5, 0.5);
  GeodesicPath gamma = exact_distance(s, x, inv.apply(x));
  auto mp = minimal_antipodal_pair(s, gamma, inv, 256);
  GeodesicPath sub = subpath(s, gamma, std::min(mp.s_u, mp.s_v),
                             std::max(mp.s_u, mp.s_v));

  ClosedCurve eta = build_jordan_curve(s, sub, inv);
  CHECK(eta.segment_count() == 2 * static_cast<int>(sub.points.size() - 1));
  CHECK(s.same_point(eta.points.front(), eta.points.back()));

  RegionSplit split = classify_regions(s, eta);
  auto wf = split.region_whole_faces();
  CHECK(wf[0] >= 1);
  CHECK(wf[1] >= 1);
  auto areas = split.region_area();
  CHECK(areas[0] + areas[1] == doctest::Approx(s.total_area()).epsilon(1e-9));

  SwapReport swap = check_region_swap(s, inv, split, 100, 77);
  CHECK(swap.passed);
  CHECK(swap.swapped >= 100);
}

TEST_CASE("a self-overlapping arc is rejected as non-simple") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  SurfacePoint x = at(s, 0.5, 0.5, 0.5);
  SurfacePoint c = at(s, 0.0, 0.0, 0.5);
  SurfacePoint ix = inv.apply(x), ic = inv.apply(c);
  // gamma and I(gamma) share the whole first leg: simplicity must fail.
  GeodesicPath detour = concat_paths(
      s, {exact_distance(s, x, c), exact_distance(s, c, ic),
          exact_distance(s, ic, ix)});
  CHECK(code_of([&] { build_jordan_curve(s, detour, inv); }) ==
        ErrorCode::SimplicityViolation);
}

TEST_CASE("build_jordan_curve rejects non-antipodal endpoints") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  GeodesicPath not_antipodal =
      exact_distance(s, at(s, 0.5, 0.1, 0.1), at(s, -0.5, 0.3, 0.2));
  CHECK(code_of([&] { build_jordan_curve(s, not_antipodal, inv); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("the octahedron equator splits into two four-face regions") {
  TriSurface s = octahedron_surface();
  Involution inv = Involution::central_symmetry(s);
  // Vertices 0,2,1,3 are +x,+y,-x,-y: the z=0 equator, an edge cycle.
  std::vector<SurfacePoint> pts = {vertex_point(s, 0), vertex_point(s, 2),
                                   vertex_point(s, 1), vertex_point(s, 3),
                                   vertex_point(s, 0)};
  ClosedCurve eta = make_closed_curve(s, pts);
  RegionSplit split = classify_regions(s, eta);
  auto wf = split.region_whole_faces();
  CHECK(wf[0] == 4);
  CHECK(wf[1] == 4);

  // All eight face centers swap hemispheres under the central symmetry.
  for (int f = 0; f < s.face_count(); ++f) {
    SurfacePoint center{f, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    int r1 = split.region_of(center);
    int r2 = split.region_of(inv.apply(center));
    CHECK(r1 >= 0);
    CHECK(r2 == 1 - r1);
  }

  SwapReport swap = check_region_swap(s, inv, split, 64, 5);
  CHECK(swap.passed);
}

TEST_CASE("a tiny loop inside one face cuts off a small disk") {
  TriSurface s = TriSurface::box(1, 1, 1);
  int f = 0;
  auto mk = [&](double b0, double b1) {
    SurfacePoint sp;
    sp.face = f;
    sp.bary = {b0, b1, 1 - b0 - b1};
    return s.canonical(sp);
  };
  std::vector<SurfacePoint> loop = {mk(0.5, 0.25), mk(0.25, 0.5), mk(0.3, 0.3),
                                    mk(0.5, 0.25)};
  ClosedCurve eta = make_closed_curve(s, loop);
  RegionSplit split = classify_regions(s, eta);
  auto areas = split.region_area();
  double small = std::min(areas[0], areas[1]);
  double large = std::max(areas[0], areas[1]);
  CHECK(small > 0);
  CHECK(small < 0.05 * large);
  CHECK(areas[0] + areas[1] == doctest::Approx(s.total_area()).epsilon(1e-9));
}

TEST_CASE("region swap rejects the identity at the precondition") {
  TriSurface s = octahedron_surface();
  Involution identity = Involution::vertex_permutation(s, {0, 1, 2, 3, 4, 5});
  Involution central = Involution::central_symmetry(s);
  std::vector<SurfacePoint> pts = {vertex_point(s, 0), vertex_point(s, 2),
                                   vertex_point(s, 1), vertex_point(s, 3),
                                   vertex_point(s, 0)};
  RegionSplit split = classify_regions(s, make_closed_curve(s, pts));
  CHECK(code_of([&] { check_region_swap(s, identity, split, 10, 1); }) ==
        ErrorCode::InvolutionCheckFailed);
  CHECK(check_region_swap(s, central, split, 10, 1).passed);
}

TEST_CASE("equality chain vanishes for a maximizing pair on the cube") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  DiameterOptions opts;
  opts.sampler = {Sampler::Strategy::Lattice, 0, 0};
  auto brute = brute_force_diameter(s, opts);

  SurfacePoint x = brute.p, y = brute.q;
  GeodesicPath gamma = exact_distance(s, x, inv.apply(x));
  auto mp = minimal_antipodal_pair(s, gamma, inv, 256);
  GeodesicPath sub = subpath(s, gamma, std::min(mp.s_u, mp.s_v),
                             std::max(mp.s_u, mp.s_v));
  ClosedCurve eta = build_jordan_curve(s, sub, inv);
  GeodesicPath gamma_y = exact_distance(s, y, inv.apply(y));
  SurfacePoint t = curve_path_intersection(s, eta, gamma_y);

  ChainReport chain = equality_chain_check(s, inv, x, y, t);
  for (double v : {chain.a, chain.b, chain.c, chain.d}) {
    CHECK(v >= -1e-9);
    CHECK(v <= 1e-6 * s.bbox_diag());
  }
  CHECK(std::abs(chain.rho_x_ix - chain.rho_y_iy) <= s.eps_chain());
}

TEST_CASE("equality chain shows slack for a generic off-path point") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  SurfacePoint x = at(s, 0.5, 0.5, 0.5);
  SurfacePoint y = at(s, -0.5, -0.5, -0.5);
  SurfacePoint t = at(s, 0.5, -0.37, 0.11);  // nowhere near either geodesic
  ChainReport chain = equality_chain_check(s, inv, x, y, t);
  CHECK(std::max(chain.c, chain.d) > 1e-3);
}

TEST_CASE("equality chain degenerates cleanly when x equals y") {
  TriSurface s = TriSurface::box(1, 1, 1);
  Involution inv = Involution::central_symmetry(s);
  SurfacePoint x = at(s, 0.5, 0.2, 0.1);
  SurfacePoint t = at(s, 0.5, 0.3, -0.2);
  ChainReport chain = equality_chain_check(s, inv, x, x, t);
  CHECK(chain.rho_xy == 0.0);
  CHECK(chain.c == doctest::Approx(chain.d).epsilon(1e-12));
}

TEST_CASE("single verify-theorem trial passes end to end") {
  VerifyOptions opts;
  opts.trials = 1;
  opts.seed = 4;
  opts.hull_points = 24;
  opts.samples = 120;
  opts.swap_samples = 60;
  opts.scan_resolution = 512;
  VerifyReport r = verify_theorem(opts);
  REQUIRE(r.trials.size() == 1);
  if (!r.trials[0].passed) MESSAGE(r.trials[0].error);
  CHECK(r.passed);
  CHECK(r.trials[0].regions == 2);
  CHECK(r.trials[0].agreement_defect <= 1e-6 * 4.0);
}
