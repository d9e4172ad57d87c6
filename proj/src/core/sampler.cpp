#include "sampler.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "rng.hpp"

namespace geodiam {

Sampler::Strategy Sampler::parse_strategy(const std::string& name) {
  if (name == "face-uniform") return Strategy::FaceUniform;
  if (name == "lattice") return Strategy::Lattice;
  raise(ErrorCode::InvalidArgument, "unknown sampler strategy '" + name + "'");
}

std::vector<SurfacePoint> sample_points(const TriSurface& s, const Sampler& sampler) {
  std::vector<SurfacePoint> out;

  if (sampler.strategy == Sampler::Strategy::Lattice) {
    for (int v = 0; v < s.vertex_count(); ++v) {
      int f = s.vertex_faces(v).front();
      SurfacePoint sp;
      sp.face = f;
      const auto& fv = s.face(f);
      for (int k = 0; k < 3; ++k) sp.bary[k] = fv[k] == v ? 1.0 : 0.0;
      out.push_back(s.canonical(sp));
    }
    for (int e = 0; e < s.edge_count(); ++e) {
      const auto& ed = s.edge(e);
      int f = ed.f0;
      SurfacePoint sp;
      sp.face = f;
      const auto& fv = s.face(f);
      for (int k = 0; k < 3; ++k)
        sp.bary[k] = (fv[k] == ed.v0 || fv[k] == ed.v1) ? 0.5 : 0.0;
      out.push_back(s.canonical(sp));
    }
    return out;
  }

  if (sampler.count < 0)
    raise(ErrorCode::InvalidArgument, "sample count must be >= 0");

  std::vector<double> cumulative(s.face_count());
  double acc = 0;
  for (int f = 0; f < s.face_count(); ++f) {
    acc += s.face_area(f);
    cumulative[f] = acc;
  }
  if (acc <= 0) raise(ErrorCode::DegenerateInput, "surface has zero area");

  SplitMix64 rng(sampler.seed);
  for (int i = 0; i < sampler.count; ++i) {
    double u = rng.uniform() * acc;
    int f = static_cast<int>(
        std::lower_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
    f = std::min(f, s.face_count() - 1);
    // Uniform in the triangle via the sqrt warp.
    double r1 = std::sqrt(rng.uniform());
    double r2 = rng.uniform();
    SurfacePoint sp;
    sp.face = f;
    sp.bary = {1.0 - r1, r1 * (1.0 - r2), r1 * r2};
    out.push_back(s.canonical(sp));
  }
  return out;
}

}  // namespace geodiam
