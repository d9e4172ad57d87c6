// geodiam command-line front end. Talks to the library exclusively through
// the C API in geodiam/geodiam.h.
//
// Exit codes: 0 success, 1 check failed, 2 bad input, 3 budget exceeded.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geodiam/geodiam.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

int exit_code_for(gd_status status) {
  switch (status) {
    case GD_OK:
      return kExitOk;
    case GD_E_BUDGET_EXCEEDED:
      return kExitBudget;
    case GD_E_SWAP_VIOLATION:
    case GD_E_SIMPLICITY_VIOLATION:
    case GD_E_REGION_COUNT_VIOLATION:
      return kExitCheckFailed;
    default:
      return kExitBadInput;
  }
}

int fail(gd_status status, const std::string& context) {
  std::cerr << "error: " << context << ": " << gd_status_name(status) << " ("
            << gd_last_error() << ")\n";
  return exit_code_for(status);
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { gd_string_free(s); }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  out << text << "\n";
}

bool parse_triple(const std::string& text, double out[3]) {
  char extra;
  return std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &out[0], &out[1], &out[2],
                     &extra) == 3;
}

// --surface accepts "box:a,b,c", "hull:n,seed" or an OBJ path.
gd_status make_surface(const std::string& spec, const std::string& axes_text,
                       gd_surface** out) {
  if (spec.rfind("box:", 0) == 0) {
    double d[3];
    if (!parse_triple(spec.substr(4), d)) return GD_E_PARSE;
    return gd_surface_box(d[0], d[1], d[2], out);
  }
  if (spec.rfind("hull:", 0) == 0) {
    long n = 0, seed = 0;
    char extra;
    if (std::sscanf(spec.c_str() + 5, "%ld,%ld%c", &n, &seed, &extra) != 2)
      return GD_E_PARSE;
    double axes[3] = {1, 1, 1};
    if (!axes_text.empty() && !parse_triple(axes_text, axes)) return GD_E_PARSE;
    return gd_surface_symmetric_hull(static_cast<int>(n), axes,
                                     static_cast<uint64_t>(seed), out);
  }
  return gd_surface_load_obj(spec.c_str(), out);
}

uint64_t effective_budget(uint64_t flag_value) {
  if (const char* env = std::getenv("GEODIAM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return flag_value;
}

struct CommonOpts {
  std::string surface;
  std::string axes;
  std::string out_path;
  uint64_t budget = 1'000'000;
  double snap_eps = 0;  // 0: default 1e-6 x bbox
};

void add_common(CLI::App* cmd, CommonOpts& c, bool needs_surface = true) {
  if (needs_surface)
    cmd->add_option("--surface", c.surface,
                    "surface source: box:a,b,c | hull:n,seed | mesh.obj")
        ->required();
  cmd->add_option("--axes", c.axes, "hull semi-axes ax,ay,az (default 1,1,1)");
  cmd->add_option("--out", c.out_path, "output file (default stdout)");
  cmd->add_option("--budget", c.budget, "node budget for the geodesic search");
  cmd->add_option("--snap-eps", c.snap_eps,
                  "snap tolerance for 3D input points (default 1e-6 x bbox)");
}

struct SamplerOpts {
  int samples = 500;
  std::string sampler = "face-uniform";
  uint64_t seed = 42;
  bool no_refine = false;
  int refine_steps = 60;
};

void add_sampler(CLI::App* cmd, SamplerOpts& s) {
  cmd->add_option("--samples", s.samples, "sample count");
  cmd->add_option("--sampler", s.sampler, "face-uniform | lattice");
  cmd->add_option("--seed", s.seed, "sampler seed");
  cmd->add_flag("--no-refine", s.no_refine, "skip local refinement");
  cmd->add_option("--refine-steps", s.refine_steps, "pattern-search shrink rounds");
}

nlohmann::json sampler_json(const SamplerOpts& s, uint64_t budget) {
  nlohmann::json j;
  j["samples"] = s.samples;
  j["sampler"] = s.sampler;
  j["seed"] = s.seed;
  j["refine"] = !s.no_refine;
  j["refine_steps"] = s.refine_steps;
  j["budget"] = budget;
  return j;
}

int write_field_csv(gd_surface* surf, const double from[3], double snap_eps,
                    uint64_t budget, const std::string& path) {
  nlohmann::json opts;
  opts["resolution"] = 8;
  opts["budget"] = budget;
  if (snap_eps > 0) opts["snap_eps"] = snap_eps;
  StringGuard csv;
  gd_status st = gd_field_csv(surf, from, opts.dump().c_str(), &csv.s);
  if (st != GD_OK) return fail(st, "field dump");
  std::ofstream out(path);
  out << csv.s;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodiam: intrinsic distances and geodesic diameters of convex "
               "triangulated surfaces"};
  app.require_subcommand(1);

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "check sphere topology and convexity");
  CommonOpts vopt;
  add_common(validate, vopt);

  // ---- distance ----
  auto* distance = app.add_subcommand("distance", "exact geodesic between two points");
  CommonOpts dopt;
  std::string d_from, d_to, d_obj_out, d_field;
  add_common(distance, dopt);
  distance->add_option("--from", d_from, "source point x,y,z")->required();
  distance->add_option("--to", d_to, "target point x,y,z")->required();
  distance->add_option("--path-obj", d_obj_out, "write the path as polyline OBJ");
  distance->add_option("--field", d_field, "write a distance-field CSV from --from");

  // ---- diameter ----
  auto* diameter = app.add_subcommand("diameter", "geodesic diameter");
  CommonOpts mopt;
  SamplerOpts msam;
  std::string mode = "both";
  add_common(diameter, mopt);
  add_sampler(diameter, msam);
  diameter->add_option("--mode", mode, "brute | antipodal | both (default both)");

  // ---- farthest ----
  auto* farthest = app.add_subcommand("farthest", "farthest point from a source");
  CommonOpts fopt;
  SamplerOpts fsam;
  std::string f_from, f_field;
  add_common(farthest, fopt);
  add_sampler(farthest, fsam);
  farthest->add_option("--from", f_from, "source point x,y,z")->required();
  farthest->add_option("--field", f_field, "write a distance-field CSV from --from");

  // ---- verify-theorem ----
  auto* verify = app.add_subcommand(
      "verify-theorem", "run the antipodal-diameter construction end to end");
  CommonOpts topt;
  int trials = 20;
  uint64_t t_seed = 1;
  int hull_points = 50;
  int t_samples = 500;
  int swap_samples = 200;
  int resolution = 4096;
  std::string graph_path;
  add_common(verify, topt, /*needs_surface=*/false);
  verify->add_option("--trials", trials, "number of random-hull trials");
  verify->add_option("--seed", t_seed, "base seed");
  verify->add_option("--hull-points", hull_points, "sample points per hull");
  verify->add_option("--samples", t_samples, "diameter sample count per trial");
  verify->add_option("--swap-samples", swap_samples, "region-swap samples per trial");
  verify->add_option("--resolution", resolution, "antipodal-pair scan resolution");
  verify->add_option("--graph", graph_path,
                     "discrete mode: check a JSON length space instead");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    gd_surface* surf = nullptr;
    gd_status st = make_surface(vopt.surface, vopt.axes, &surf);
    if (st != GD_OK) return fail(st, "loading surface");
    int passed = 0;
    StringGuard report;
    st = gd_surface_validate(surf, &passed, &report.s);
    gd_surface_free(surf);
    if (st != GD_OK) return fail(st, "validate");
    emit(report.s, vopt.out_path);
    return passed ? kExitOk : kExitCheckFailed;
  }

  if (distance->parsed()) {
    double from[3], to[3];
    if (!parse_triple(d_from, from) || !parse_triple(d_to, to)) {
      std::cerr << "error: --from/--to must be x,y,z\n";
      return kExitBadInput;
    }
    gd_surface* surf = nullptr;
    gd_status st = make_surface(dopt.surface, dopt.axes, &surf);
    if (st != GD_OK) return fail(st, "loading surface");
    gd_path* path = nullptr;
    st = gd_exact_distance(surf, from, to, dopt.snap_eps,
                           effective_budget(dopt.budget), &path);
    if (st != GD_OK) {
      gd_surface_free(surf);
      return fail(st, "distance");
    }
    StringGuard json;
    gd_path_json(path, &json.s);
    emit(json.s, dopt.out_path);
    if (!d_obj_out.empty()) {
      StringGuard obj;
      gd_path_polyline_obj(path, &obj.s);
      std::ofstream out(d_obj_out);
      out << obj.s;
    }
    int rc = kExitOk;
    if (!d_field.empty())
      rc = write_field_csv(surf, from, dopt.snap_eps,
                           effective_budget(dopt.budget), d_field);
    gd_path_free(path);
    gd_surface_free(surf);
    return rc;
  }

  if (diameter->parsed()) {
    gd_surface* surf = nullptr;
    gd_status st = make_surface(mopt.surface, mopt.axes, &surf);
    if (st != GD_OK) return fail(st, "loading surface");
    nlohmann::json opts = sampler_json(msam, effective_budget(mopt.budget));
    StringGuard report;
    st = gd_diameter(surf, mode.c_str(), opts.dump().c_str(), &report.s);
    gd_surface_free(surf);
    if (st != GD_OK) return fail(st, "diameter");
    emit(report.s, mopt.out_path);
    if (mode == "both") {
      auto j = nlohmann::json::parse(report.s);
      return j.value("passed", false) ? kExitOk : kExitCheckFailed;
    }
    return kExitOk;
  }

  if (farthest->parsed()) {
    double from[3];
    if (!parse_triple(f_from, from)) {
      std::cerr << "error: --from must be x,y,z\n";
      return kExitBadInput;
    }
    gd_surface* surf = nullptr;
    gd_status st = make_surface(fopt.surface, fopt.axes, &surf);
    if (st != GD_OK) return fail(st, "loading surface");
    nlohmann::json opts = sampler_json(fsam, effective_budget(fopt.budget));
    if (fopt.snap_eps > 0) opts["snap_eps"] = fopt.snap_eps;
    StringGuard report;
    st = gd_farthest(surf, from, opts.dump().c_str(), &report.s);
    if (st != GD_OK) {
      gd_surface_free(surf);
      return fail(st, "farthest");
    }
    emit(report.s, fopt.out_path);
    int rc = kExitOk;
    if (!f_field.empty())
      rc = write_field_csv(surf, from, fopt.snap_eps,
                           effective_budget(fopt.budget), f_field);
    gd_surface_free(surf);
    return rc;
  }

  if (verify->parsed()) {
    if (!graph_path.empty()) {
      std::ifstream in(graph_path);
      if (!in) {
        std::cerr << "error: cannot open " << graph_path << "\n";
        return kExitBadInput;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      int equal = 0;
      StringGuard report;
      gd_status st = gd_discrete_check(ss.str().c_str(), &equal, &report.s);
      if (st != GD_OK) return fail(st, "discrete check");
      emit(report.s, topt.out_path);
      return equal ? kExitOk : kExitCheckFailed;
    }
    if (trials < 1) {
      std::cerr << "error: --trials must be >= 1\n";
      return kExitBadInput;
    }
    nlohmann::json opts;
    opts["trials"] = trials;
    opts["seed"] = t_seed;
    opts["hull_points"] = hull_points;
    opts["samples"] = t_samples;
    opts["swap_samples"] = swap_samples;
    opts["resolution"] = resolution;
    opts["budget"] = effective_budget(topt.budget);
    int passed = 0;
    StringGuard report;
    gd_status st = gd_verify_theorem(opts.dump().c_str(), &passed, &report.s);
    if (st != GD_OK) return fail(st, "verify-theorem");
    emit(report.s, topt.out_path);
    return passed ? kExitOk : kExitCheckFailed;
  }

  return kExitBadInput;
}
