#include "geodiam/geodiam.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/convex_hull.hpp"
#include "core/diameter.hpp"
#include "core/discrete_space.hpp"
#include "core/error.hpp"
#include "core/geodesic.hpp"
#include "core/graph_distance.hpp"
#include "core/involution.hpp"
#include "core/jordan.hpp"
#include "core/verify.hpp"

using namespace geodiam;

struct gd_surface {
  TriSurface surface;
};

struct gd_involution {
  const gd_surface* host = nullptr;
  Involution involution;
};

struct gd_path {
  double length = 0;
  std::vector<Vec3> points;
  std::vector<int> edges;
};

namespace {

thread_local std::string g_last_error;

gd_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return GD_E_INVALID_ARGUMENT;
    case ErrorCode::DegenerateInput: return GD_E_DEGENERATE_INPUT;
    case ErrorCode::OffSurface: return GD_E_OFF_SURFACE;
    case ErrorCode::NotSymmetric: return GD_E_NOT_SYMMETRIC;
    case ErrorCode::SymmetryViolation: return GD_E_SYMMETRY_VIOLATION;
    case ErrorCode::BudgetExceeded: return GD_E_BUDGET_EXCEEDED;
    case ErrorCode::InvolutionCheckFailed: return GD_E_INVOLUTION_CHECK_FAILED;
    case ErrorCode::SimplicityViolation: return GD_E_SIMPLICITY_VIOLATION;
    case ErrorCode::RegionCountViolation: return GD_E_REGION_COUNT_VIOLATION;
    case ErrorCode::SwapViolation: return GD_E_SWAP_VIOLATION;
    case ErrorCode::InvalidSpace: return GD_E_INVALID_SPACE;
    case ErrorCode::ParseError: return GD_E_PARSE;
    case ErrorCode::IoError: return GD_E_IO;
    case ErrorCode::Internal: return GD_E_INTERNAL;
  }
  return GD_E_INTERNAL;
}

template <typename Fn>
gd_status guarded(Fn&& fn) {
  try {
    fn();
    return GD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GD_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return GD_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* what) {
  if (!cond) raise(ErrorCode::InvalidArgument, what);
}

nlohmann::json parse_options(const char* options_json,
                             const std::vector<std::string>& allowed) {
  nlohmann::json j = nlohmann::json::object();
  if (options_json && *options_json) {
    j = nlohmann::json::parse(options_json, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      raise(ErrorCode::ParseError, "options must be a JSON object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed) ok = ok || k == it.key();
    if (!ok)
      raise(ErrorCode::InvalidArgument, "unknown option key '" + it.key() + "'");
  }
  return j;
}

DiameterOptions diameter_options_from_json(const nlohmann::json& j) {
  DiameterOptions opts;
  opts.sampler.count = j.value("samples", 500);
  opts.sampler.seed = j.value("seed", static_cast<uint64_t>(42));
  opts.sampler.strategy =
      Sampler::parse_strategy(j.value("sampler", std::string("face-uniform")));
  opts.refine = j.value("refine", true);
  opts.refine_opts.max_shrink_rounds = j.value("refine_steps", 60);
  opts.node_budget = j.value("budget", static_cast<uint64_t>(1'000'000));
  require(opts.sampler.count >= 1, "samples must be >= 1");
  require(opts.refine_opts.max_shrink_rounds >= 1, "refine_steps must be >= 1");
  require(opts.node_budget >= 1, "budget must be >= 1");
  return opts;
}

SurfacePoint locate_input(const TriSurface& s, const double p[3], double eps) {
  if (eps <= 0) eps = 1e-6 * s.bbox_diag();
  return s.locate({p[0], p[1], p[2]}, eps);
}

}  // namespace

extern "C" {

const char* gd_status_name(gd_status status) {
  switch (status) {
    case GD_OK: return "ok";
    case GD_E_INVALID_ARGUMENT: return "invalid-argument";
    case GD_E_DEGENERATE_INPUT: return "degenerate-input";
    case GD_E_OFF_SURFACE: return "off-surface";
    case GD_E_NOT_SYMMETRIC: return "not-symmetric";
    case GD_E_SYMMETRY_VIOLATION: return "symmetry-violation";
    case GD_E_BUDGET_EXCEEDED: return "budget-exceeded";
    case GD_E_INVOLUTION_CHECK_FAILED: return "involution-check-failed";
    case GD_E_SIMPLICITY_VIOLATION: return "simplicity-violation";
    case GD_E_REGION_COUNT_VIOLATION: return "region-count-violation";
    case GD_E_SWAP_VIOLATION: return "swap-violation";
    case GD_E_INVALID_SPACE: return "invalid-space";
    case GD_E_PARSE: return "parse-error";
    case GD_E_IO: return "io-error";
    case GD_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* gd_last_error(void) { return g_last_error.c_str(); }

void gd_string_free(char* s) { std::free(s); }

const char* gd_version(void) { return "0.1.0"; }

gd_status gd_surface_box(double a, double b, double c, gd_surface** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = new gd_surface{TriSurface::box(a, b, c)};
  });
}

gd_status gd_surface_symmetric_hull(int n, const double axes[3], uint64_t seed,
                                    gd_surface** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    Vec3 ax = axes ? Vec3{axes[0], axes[1], axes[2]} : Vec3{1, 1, 1};
    *out = new gd_surface{build_symmetric_hull(n, ax, seed)};
  });
}

gd_status gd_surface_hull_of_points(const double* xyz, int count, int symmetrize,
                                    gd_surface** out) {
  return guarded([&] {
    require(out != nullptr && xyz != nullptr, "null argument");
    std::vector<Vec3> pts;
    for (int i = 0; i < count; ++i)
      pts.push_back({xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]});
    *out = new gd_surface{symmetrize ? symmetric_hull_of_points(std::move(pts))
                                     : convex_hull(pts)};
  });
}

gd_status gd_surface_load_obj(const char* path, gd_surface** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = new gd_surface{TriSurface::load_obj(path)};
  });
}

gd_status gd_surface_parse_obj(const char* text, gd_surface** out) {
  return guarded([&] {
    require(out != nullptr && text != nullptr, "null argument");
    *out = new gd_surface{TriSurface::parse_obj(text)};
  });
}

gd_status gd_surface_write_obj(const gd_surface* s, const char* path) {
  return guarded([&] {
    require(s != nullptr && path != nullptr, "null argument");
    s->surface.save_obj(path);
  });
}

void gd_surface_free(gd_surface* s) { delete s; }

int gd_surface_vertex_count(const gd_surface* s) {
  return s ? s->surface.vertex_count() : 0;
}
int gd_surface_edge_count(const gd_surface* s) {
  return s ? s->surface.edge_count() : 0;
}
int gd_surface_face_count(const gd_surface* s) {
  return s ? s->surface.face_count() : 0;
}
double gd_surface_bbox_diag(const gd_surface* s) {
  return s ? s->surface.bbox_diag() : 0;
}

gd_status gd_surface_is_symmetric(const gd_surface* s, int* symmetric) {
  return guarded([&] {
    require(s != nullptr && symmetric != nullptr, "null argument");
    auto center = s->surface.center();
    *symmetric = center && s->surface.is_symmetric_about(*center) ? 1 : 0;
  });
}

gd_status gd_surface_validate(const gd_surface* s, int* passed,
                              char** report_json) {
  return guarded([&] {
    require(s != nullptr, "null surface");
    ValidationReport r = s->surface.validate();
    if (passed) *passed = r.passed ? 1 : 0;
    if (report_json) *report_json = dup_string(r.to_json());
  });
}

gd_status gd_surface_locate(const gd_surface* s, const double point[3],
                            double eps, double snapped[3]) {
  return guarded([&] {
    require(s != nullptr && point != nullptr && snapped != nullptr,
            "null argument");
    SurfacePoint sp = locate_input(s->surface, point, eps);
    Vec3 x = s->surface.embed(sp);
    snapped[0] = x.x;
    snapped[1] = x.y;
    snapped[2] = x.z;
  });
}

gd_status gd_involution_central(const gd_surface* s, gd_involution** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = new gd_involution{s, Involution::central_symmetry(s->surface)};
  });
}

gd_status gd_involution_from_json(const gd_surface* s, const char* json_text,
                                  gd_involution** out) {
  return guarded([&] {
    require(s != nullptr && json_text != nullptr && out != nullptr,
            "null argument");
    *out = new gd_involution{s, Involution::from_json(s->surface, json_text)};
  });
}

void gd_involution_free(gd_involution* inv) { delete inv; }

gd_status gd_involution_apply(const gd_involution* inv, const double point[3],
                              double eps, double image[3]) {
  return guarded([&] {
    require(inv != nullptr && point != nullptr && image != nullptr,
            "null argument");
    const TriSurface& s = inv->host->surface;
    SurfacePoint sp = locate_input(s, point, eps);
    Vec3 x = s.embed(inv->involution.apply(sp));
    image[0] = x.x;
    image[1] = x.y;
    image[2] = x.z;
  });
}

gd_status gd_involution_check(const gd_involution* inv, int nsamples,
                              uint64_t seed, int* fixed_point_free,
                              char** report_json) {
  return guarded([&] {
    require(inv != nullptr, "null involution");
    InvolutionCheckReport r = inv->involution.check(nsamples, seed);
    if (fixed_point_free) *fixed_point_free = r.fixed_point_free ? 1 : 0;
    if (report_json) *report_json = dup_string(r.to_json());
  });
}

gd_status gd_exact_distance(const gd_surface* s, const double from[3],
                            const double to[3], double snap_eps,
                            uint64_t node_budget, gd_path** out) {
  return guarded([&] {
    require(s != nullptr && from != nullptr && to != nullptr && out != nullptr,
            "null argument");
    const TriSurface& surf = s->surface;
    SurfacePoint p = locate_input(surf, from, snap_eps);
    SurfacePoint q = locate_input(surf, to, snap_eps);
    DistanceOptions opts;
    if (node_budget) opts.node_budget = node_budget;
    GeodesicPath path = exact_distance(surf, p, q, opts);
    auto* gp = new gd_path;
    gp->length = path.length;
    for (const auto& pt : path.points) gp->points.push_back(surf.embed(pt));
    gp->edges = path.edges;
    *out = gp;
  });
}

gd_status gd_graph_distance(const gd_surface* s, const double from[3],
                            const double to[3], double snap_eps, int level,
                            double* out) {
  return guarded([&] {
    require(s != nullptr && from != nullptr && to != nullptr && out != nullptr,
            "null argument");
    const TriSurface& surf = s->surface;
    SurfacePoint p = locate_input(surf, from, snap_eps);
    SurfacePoint q = locate_input(surf, to, snap_eps);
    *out = graph_distance(surf, p, q, level);
  });
}

double gd_path_length(const gd_path* path) { return path ? path->length : 0; }

gd_status gd_path_json(const gd_path* path, char** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    nlohmann::json j;
    j["length"] = path->length;
    auto pts = nlohmann::json::array();
    for (const auto& p : path->points) pts.push_back({p.x, p.y, p.z});
    j["points"] = pts;
    j["edge_sequence"] = path->edges;
    *out = dup_string(j.dump(2));
  });
}

gd_status gd_path_polyline_obj(const gd_path* path, char** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    std::string text;
    char buf[128];
    for (const auto& p : path->points) {
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
      text += buf;
    }
    text += "l";
    for (size_t i = 1; i <= path->points.size(); ++i) {
      std::snprintf(buf, sizeof buf, " %zu", i);
      text += buf;
    }
    text += "\n";
    *out = dup_string(text);
  });
}

void gd_path_free(gd_path* path) { delete path; }

gd_status gd_diameter(const gd_surface* s, const char* mode,
                      const char* options_json, char** report_json) {
  return guarded([&] {
    require(s != nullptr && mode != nullptr && report_json != nullptr,
            "null argument");
    std::string m = mode;
    require(m == "brute" || m == "antipodal" || m == "both",
            "mode must be brute, antipodal or both");
    nlohmann::json jopts = parse_options(
        options_json, {"samples", "sampler", "seed", "refine", "refine_steps",
                       "budget"});
    DiameterOptions opts = diameter_options_from_json(jopts);
    const TriSurface& surf = s->surface;

    nlohmann::json out;
    if (m == "both") {
      Involution inv = Involution::central_symmetry(surf);
      CrossMethodReport r = diameter_cross_check(surf, inv, opts);
      out["brute"] = nlohmann::json::parse(r.brute.to_json(surf));
      out["antipodal"] = nlohmann::json::parse(r.antipodal.to_json(surf));
      out["agreement_defect"] = r.agreement_defect;
      out["eps_match"] = surf.eps_match();
      out["passed"] = r.agree;
    } else if (m == "brute") {
      DiameterReport r = brute_force_diameter(surf, opts);
      out = nlohmann::json::parse(r.to_json(surf));
    } else {
      Involution inv = Involution::central_symmetry(surf);
      DiameterReport r = antipodal_diameter(surf, inv, opts);
      out = nlohmann::json::parse(r.to_json(surf));
    }
    *report_json = dup_string(out.dump(2));
  });
}

gd_status gd_farthest(const gd_surface* s, const double from[3],
                      const char* options_json, char** report_json) {
  return guarded([&] {
    require(s != nullptr && from != nullptr && report_json != nullptr,
            "null argument");
    nlohmann::json jopts = parse_options(
        options_json, {"samples", "sampler", "seed", "refine", "refine_steps",
                       "budget", "snap_eps"});
    DiameterOptions opts = diameter_options_from_json([&] {
      nlohmann::json j = jopts;
      j.erase("snap_eps");
      return j;
    }());
    const TriSurface& surf = s->surface;
    double snap_eps = jopts.value("snap_eps", 0.0);

    SurfacePoint p = locate_input(surf, from, snap_eps);
    Involution inv = Involution::central_symmetry(surf);
    FarthestReport fr = farthest_point(surf, p, opts);

    SurfacePoint opposite = inv.apply(p);
    double opp_dist =
        exact_distance(surf, p, opposite, {opts.node_budget}).length;

    nlohmann::json out;
    Vec3 x = surf.embed(fr.point);
    Vec3 o = surf.embed(opposite);
    Vec3 f0 = surf.embed(p);
    out["from"] = {f0.x, f0.y, f0.z};
    out["point"] = {x.x, x.y, x.z};
    out["distance"] = fr.distance;
    out["opposite_point"] = {o.x, o.y, o.z};
    out["opposite_point_distance"] = opp_dist;
    out["farthest_minus_opposite"] = fr.distance - opp_dist;
    out["farthest_to_opposite_chord"] = dist(x, o);
    *report_json = dup_string(out.dump(2));
  });
}

gd_status gd_field_csv(const gd_surface* s, const double from[3],
                       const char* options_json, char** csv) {
  return guarded([&] {
    require(s != nullptr && from != nullptr && csv != nullptr, "null argument");
    nlohmann::json jopts =
        parse_options(options_json, {"resolution", "budget", "snap_eps"});
    int resolution = jopts.value("resolution", 8);
    require(resolution >= 1 && resolution <= 64, "resolution must be in [1,64]");
    uint64_t budget = jopts.value("budget", static_cast<uint64_t>(1'000'000));
    const TriSurface& surf = s->surface;
    SurfacePoint p = locate_input(surf, from, jopts.value("snap_eps", 0.0));

    std::vector<SurfacePoint> grid;
    for (int f = 0; f < surf.face_count(); ++f) {
      for (int i = 0; i <= resolution; ++i) {
        for (int j = 0; i + j <= resolution; ++j) {
          SurfacePoint sp;
          sp.face = f;
          double b1 = static_cast<double>(i) / resolution;
          double b2 = static_cast<double>(j) / resolution;
          sp.bary = {1.0 - b1 - b2, b1, b2};
          grid.push_back(surf.canonical(sp));
        }
      }
    }
    auto paths = exact_distances(surf, p, grid, {budget});

    std::string text = "x,y,z,face,distance\n";
    char buf[192];
    for (size_t i = 0; i < grid.size(); ++i) {
      Vec3 x = surf.embed(grid[i]);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%.17g\n", x.x, x.y,
                    x.z, grid[i].face, paths[i].length);
      text += buf;
    }
    *csv = dup_string(text);
  });
}

gd_status gd_verify_theorem(const char* options_json, int* passed,
                            char** report_json) {
  return guarded([&] {
    nlohmann::json jopts = parse_options(
        options_json, {"trials", "seed", "hull_points", "axes", "samples",
                       "swap_samples", "resolution", "refine", "budget"});
    VerifyOptions opts;
    opts.trials = jopts.value("trials", 20);
    opts.seed = jopts.value("seed", static_cast<uint64_t>(1));
    opts.hull_points = jopts.value("hull_points", 50);
    opts.samples = jopts.value("samples", 500);
    opts.swap_samples = jopts.value("swap_samples", 200);
    opts.scan_resolution = jopts.value("resolution", 4096);
    opts.refine = jopts.value("refine", true);
    opts.node_budget = jopts.value("budget", static_cast<uint64_t>(1'000'000));
    if (jopts.contains("axes")) {
      auto ax = jopts["axes"];
      require(ax.is_array() && ax.size() == 3, "axes must be [x,y,z]");
      opts.semi_axes = {ax[0].get<double>(), ax[1].get<double>(),
                        ax[2].get<double>()};
    }
    require(opts.trials >= 1, "trials must be >= 1");
    require(opts.hull_points >= 4, "hull_points must be >= 4");
    require(opts.samples >= 1, "samples must be >= 1");
    require(opts.swap_samples >= 1, "swap_samples must be >= 1");
    require(opts.scan_resolution >= 2, "resolution must be >= 2");

    VerifyReport report = verify_theorem(opts);
    if (passed) *passed = report.passed ? 1 : 0;
    if (report_json) *report_json = dup_string(report.to_json());
  });
}

gd_status gd_discrete_check(const char* space_json, int* equal,
                            char** report_json) {
  return guarded([&] {
    require(space_json != nullptr, "null space");
    DiscreteLengthSpace space = DiscreteLengthSpace::from_json(space_json);
    DiscreteCheckReport r = discrete_theorem_check(space);
    if (equal) *equal = r.equal ? 1 : 0;
    if (report_json) *report_json = dup_string(r.to_json());
  });
}

}  // extern "C"
