#include "involution.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"
#include "geodesic.hpp"
#include "pattern_search.hpp"
#include "rng.hpp"
#include "sampler.hpp"

namespace geodiam {

std::string InvolutionCheckReport::to_json() const {
  nlohmann::json j;
  j["involutivity_defect"] = involutivity_defect;
  j["isometry_defect"] = isometry_defect;
  j["isometry_pairs"] = isometry_pairs;
  j["min_antipodal_chord"] = min_antipodal_chord;
  j["refined_min_antipodal"] = refined_min_antipodal;
  j["fixed_point_free"] = fixed_point_free;
  j["samples"] = samples;
  j["seed"] = seed;
  return j.dump(2);
}

Involution Involution::central_symmetry(const TriSurface& s) {
  if (!s.center())
    raise(ErrorCode::NotSymmetric, "surface has no declared symmetry center");
  const Vec3 c = *s.center();

  Involution inv;
  inv.kind_ = Kind::CentralSymmetry;
  inv.surface_ = &s;
  inv.center_ = c;

  const double epsp = s.eps_point();
  inv.vertex_image_.assign(s.vertex_count(), -1);
  for (int v = 0; v < s.vertex_count(); ++v) {
    Vec3 image = c * 2.0 - s.vertex(v);
    int best = -1;
    double best_d = epsp;
    for (int w = 0; w < s.vertex_count(); ++w) {
      double d = dist(image, s.vertex(w));
      if (d <= best_d) {
        best_d = d;
        best = w;
      }
    }
    if (best < 0)
      raise(ErrorCode::NotSymmetric,
            "vertex set is not symmetric about the declared center");
    inv.vertex_image_[v] = best;
  }
  for (int v = 0; v < s.vertex_count(); ++v)
    if (inv.vertex_image_[inv.vertex_image_[v]] != v)
      raise(ErrorCode::NotSymmetric, "vertex reflection map is not involutive");

  inv.face_image_.assign(s.face_count(), -1);
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& fv = s.face(f);
    inv.face_image_[f] = s.find_face(inv.vertex_image_[fv[0]],
                                     inv.vertex_image_[fv[1]],
                                     inv.vertex_image_[fv[2]]);
  }
  return inv;
}

Involution Involution::vertex_permutation(const TriSurface& s,
                                          std::vector<int> perm) {
  if (static_cast<int>(perm.size()) != s.vertex_count())
    raise(ErrorCode::InvalidArgument, "permutation size must match vertex count");
  std::vector<char> seen(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || v >= s.vertex_count())
      raise(ErrorCode::InvalidArgument, "permutation entry out of range");
    if (seen[v]++) raise(ErrorCode::InvalidArgument, "permutation is not a bijection");
  }

  Involution inv;
  inv.kind_ = Kind::VertexPermutation;
  inv.surface_ = &s;
  inv.vertex_image_ = std::move(perm);
  inv.face_image_.assign(s.face_count(), -1);
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& fv = s.face(f);
    int g = s.find_face(inv.vertex_image_[fv[0]], inv.vertex_image_[fv[1]],
                        inv.vertex_image_[fv[2]]);
    if (g < 0)
      raise(ErrorCode::InvalidArgument,
            "permutation does not map face " + std::to_string(f) +
                " onto a mesh face");
    inv.face_image_[f] = g;
  }
  return inv;
}

Involution Involution::from_json(const TriSurface& s, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded())
    raise(ErrorCode::ParseError, "involution JSON is malformed");
  std::string type = j.value("type", "");
  if (type == "central-symmetry") return central_symmetry(s);
  if (type == "vertex-permutation") {
    if (!j.contains("perm") || !j["perm"].is_array())
      raise(ErrorCode::ParseError, "vertex-permutation requires a perm array");
    std::vector<int> perm;
    for (const auto& x : j["perm"]) perm.push_back(x.get<int>());
    return vertex_permutation(s, std::move(perm));
  }
  raise(ErrorCode::ParseError, "unknown involution type '" + type + "'");
}

SurfacePoint Involution::apply(const SurfacePoint& p) const {
  const TriSurface& s = *surface_;
  SurfacePoint cp = s.canonical(p);

  int g = face_image_[cp.face];
  if (g >= 0) {
    const auto& fv = s.face(cp.face);
    const auto& gv = s.face(g);
    SurfacePoint out;
    out.face = g;
    for (int k = 0; k < 3; ++k) {
      int iv = vertex_image_[fv[k]];
      for (int m = 0; m < 3; ++m)
        if (gv[m] == iv) out.bary[m] = cp.bary[k];
    }
    return s.canonical(out);
  }

  if (kind_ == Kind::CentralSymmetry) {
    Vec3 image = *center_ * 2.0 - s.embed(cp);
    auto [sp, d] = s.project(image);
    if (d > 10.0 * s.eps_point())
      raise(ErrorCode::SymmetryViolation,
            "reflected point does not land on the surface");
    return sp;
  }
  raise(ErrorCode::Internal, "vertex permutation lacks a face image");
}

InvolutionCheckReport Involution::check(int nsamples, uint64_t seed) const {
  if (nsamples < 1) raise(ErrorCode::InvalidArgument, "nsamples must be >= 1");
  const TriSurface& s = *surface_;

  InvolutionCheckReport r;
  r.samples = nsamples;
  r.seed = seed;

  Sampler sampler{Sampler::Strategy::FaceUniform, nsamples, seed};
  std::vector<SurfacePoint> pts = sample_points(s, sampler);

  double min_chord = 1e300;
  SurfacePoint min_chord_pt = pts.empty() ? SurfacePoint{} : pts[0];
  for (const auto& p : pts) {
    SurfacePoint ip = apply(p);
    SurfacePoint iip = apply(ip);
    r.involutivity_defect =
        std::max(r.involutivity_defect, dist(s.embed(iip), s.embed(p)));
    double chord = dist(s.embed(p), s.embed(ip));
    if (chord < min_chord) {
      min_chord = chord;
      min_chord_pt = p;
    }
  }
  r.min_antipodal_chord = min_chord;

  // Local minimization of the chord detects fixed-point sets that random
  // samples straddle (reflections fix a whole curve).
  r.refined_min_antipodal = refine_min_chord(min_chord_pt, min_chord);
  r.fixed_point_free = r.refined_min_antipodal > 1e-6 * s.bbox_diag();

  int npairs = std::min(200, nsamples / 2);
  r.isometry_pairs = npairs;
  for (int i = 0; i < npairs; ++i) {
    const SurfacePoint& x = pts[2 * i];
    const SurfacePoint& y = pts[2 * i + 1];
    double d1 = exact_distance(s, x, y).length;
    double d2 = exact_distance(s, apply(x), apply(y)).length;
    r.isometry_defect = std::max(r.isometry_defect, std::abs(d1 - d2));
  }
  return r;
}

double Involution::refine_min_chord(const SurfacePoint& start,
                                    double start_val) const {
  const TriSurface& s = *surface_;
  RefineOptions opts;
  opts.max_shrink_rounds = 40;
  auto objective = [&](const SurfacePoint& p) {
    return -dist(s.embed(p), s.embed(apply(p)));
  };
  SurfacePoint best = refine_local_max(s, objective, start, opts);
  return std::min(start_val, -objective(best));
}

bool Involution::quick_precondition_ok() const {
  InvolutionCheckReport r = check(64, 12345);
  return r.fixed_point_free &&
         r.involutivity_defect <= std::max(1e-12, surface_->eps_point());
}

}  // namespace geodiam
