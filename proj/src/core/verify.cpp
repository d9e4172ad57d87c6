#include "verify.hpp"

#include <cmath>

#include <json.hpp>

#include "convex_hull.hpp"
#include "error.hpp"
#include "geodesic.hpp"

namespace geodiam {

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  auto arr = nlohmann::json::array();
  for (const auto& t : trials) {
    nlohmann::json tj;
    tj["seed"] = t.seed;
    tj["vertices"] = t.vertices;
    tj["faces"] = t.faces;
    tj["diam_brute"] = t.diam_brute;
    tj["diam_antipodal"] = t.diam_antipodal;
    tj["agreement_defect"] = t.agreement_defect;
    tj["minimal_pair_distance"] = t.minimal_pair_distance;
    tj["curve_segments"] = t.curve_segments;
    tj["curve_simple"] = t.curve_simple;
    tj["regions"] = t.regions;
    tj["swap_samples"] = t.swap_samples;
    tj["chain"] = {t.chain_a, t.chain_b, t.chain_c, t.chain_d};
    tj["passed"] = t.passed;
    if (!t.error.empty()) tj["error"] = t.error;
    arr.push_back(tj);
  }
  j["trials"] = arr;
  j["passed"] = passed;
  int ok = 0;
  for (const auto& t : trials) ok += t.passed ? 1 : 0;
  j["trials_passed"] = ok;
  return j.dump(2);
}

namespace {

VerifyTrialReport run_trial(uint64_t seed, const VerifyOptions& opts) {
  VerifyTrialReport t;
  t.seed = seed;

  TriSurface s = build_symmetric_hull(opts.hull_points, opts.semi_axes, seed);
  t.vertices = s.vertex_count();
  t.faces = s.face_count();
  auto vr = s.validate();
  if (!vr.passed) {
    t.error = "surface validation failed";
    return t;
  }

  Involution inv = Involution::central_symmetry(s);

  DiameterOptions dopts;
  dopts.sampler = {Sampler::Strategy::FaceUniform, opts.samples, seed ^ 0x5eedull};
  dopts.refine = opts.refine;
  dopts.node_budget = opts.node_budget;

  CrossMethodReport cross = diameter_cross_check(s, inv, dopts);
  t.diam_brute = cross.brute.diameter;
  t.diam_antipodal = cross.antipodal.diameter;
  t.agreement_defect = cross.agreement_defect;

  // The proof's construction, built from the maximizing pair (x, y).
  const SurfacePoint x = cross.brute.p;
  const SurfacePoint y = cross.brute.q;
  GeodesicPath gamma = exact_distance(s, x, inv.apply(x), {opts.node_budget});

  // Minimal antipodal pair; rescan finer if the curve fails simplicity.
  ClosedCurve eta;
  int resolution = opts.scan_resolution;
  for (int attempt = 0;; ++attempt) {
    MinimalAntipodalPair mp = minimal_antipodal_pair(s, gamma, inv, resolution);
    t.minimal_pair_distance = mp.distance;
    GeodesicPath sub = subpath(s, gamma, std::min(mp.s_u, mp.s_v),
                               std::max(mp.s_u, mp.s_v));
    try {
      eta = build_jordan_curve(s, sub, inv);
      break;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SimplicityViolation && attempt < 2) {
        resolution *= 4;
        continue;
      }
      throw;
    }
  }
  t.curve_simple = true;
  t.curve_segments = eta.segment_count();

  RegionSplit split = classify_regions(s, eta);
  t.regions = 2;

  SwapReport swap =
      check_region_swap(s, inv, split, opts.swap_samples, seed ^ 0x51a9ull);
  t.swap_samples = swap.swapped;

  GeodesicPath gamma_y = exact_distance(s, y, inv.apply(y), {opts.node_budget});
  SurfacePoint tpoint = curve_path_intersection(s, eta, gamma_y);
  ChainReport chain = equality_chain_check(s, inv, x, y, tpoint);
  t.chain_a = chain.a;
  t.chain_b = chain.b;
  t.chain_c = chain.c;
  t.chain_d = chain.d;

  double eps_match = s.eps_match();
  double chain_lo = -1e-9, chain_hi = s.eps_chain();
  bool chain_ok = chain.a >= chain_lo && chain.a <= chain_hi &&
                  chain.b >= chain_lo && chain.b <= chain_hi &&
                  chain.c >= chain_lo && chain.c <= chain_hi &&
                  chain.d >= chain_lo && chain.d <= chain_hi;
  t.passed = t.agreement_defect <= eps_match && swap.passed && chain_ok;
  if (!t.passed && t.error.empty()) {
    if (t.agreement_defect > eps_match)
      t.error = "diameter methods disagree";
    else if (!swap.passed)
      t.error = "region swap incomplete";
    else
      t.error = "equality chain out of tolerance";
  }
  return t;
}

}  // namespace

VerifyReport verify_theorem(const VerifyOptions& opts) {
  if (opts.trials < 1) raise(ErrorCode::InvalidArgument, "trials must be >= 1");
  VerifyReport report;
  report.passed = true;
  for (int i = 0; i < opts.trials; ++i) {
    uint64_t seed = opts.seed + static_cast<uint64_t>(i);
    VerifyTrialReport t;
    try {
      t = run_trial(seed, opts);
    } catch (const Error& e) {
      t.seed = seed;
      t.error = std::string(error_code_name(e.code())) + ": " + e.what();
      t.passed = false;
    }
    report.passed = report.passed && t.passed;
    report.trials.push_back(std::move(t));
  }
  return report;
}

}  // namespace geodiam
