#include "convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "error.hpp"
#include "rng.hpp"

namespace geodiam {

namespace {

struct HullFace {
  int a, b, c;
  Vec3 n;        // unit outward normal
  double offset; // n . x = offset on the face plane
  bool alive = true;
};

double scale_of(const std::vector<Vec3>& pts) {
  Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const auto& p : pts)
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  return dist(lo, hi);
}

}  // namespace

TriSurface convex_hull(const std::vector<Vec3>& points, std::optional<Vec3> center) {
  const int n = static_cast<int>(points.size());
  if (n < 4) raise(ErrorCode::DegenerateInput, "hull needs at least 4 points");
  const double scale = scale_of(points);
  if (scale <= 0) raise(ErrorCode::DegenerateInput, "all hull points coincide");
  const double eps = 1e-12 * scale;

  // Initial tetrahedron from extreme points.
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    const Vec3 &p = points[i], &q = points[i0];
    if (p.x < q.x || (p.x == q.x && (p.y < q.y || (p.y == q.y && p.z < q.z))))
      i0 = i;
  }
  int i1 = -1;
  double best = eps;
  for (int i = 0; i < n; ++i) {
    double d = dist(points[i], points[i0]);
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (i1 < 0) raise(ErrorCode::DegenerateInput, "all hull points coincide");
  int i2 = -1;
  best = eps * scale;
  for (int i = 0; i < n; ++i) {
    double area = norm(cross(points[i1] - points[i0], points[i] - points[i0]));
    if (area > best) {
      best = area;
      i2 = i;
    }
  }
  if (i2 < 0) raise(ErrorCode::DegenerateInput, "hull points are collinear");
  int i3 = -1;
  best = eps * scale * scale;
  Vec3 n012 = cross(points[i1] - points[i0], points[i2] - points[i0]);
  for (int i = 0; i < n; ++i) {
    double vol = std::abs(dot(n012, points[i] - points[i0]));
    if (vol > best) {
      best = vol;
      i3 = i;
    }
  }
  if (i3 < 0) raise(ErrorCode::DegenerateInput, "hull points are coplanar");

  std::vector<HullFace> faces;
  auto make_face = [&](int a, int b, int c, const Vec3& inside) {
    HullFace f;
    f.a = a;
    f.b = b;
    f.c = c;
    f.n = normalized(cross(points[b] - points[a], points[c] - points[a]));
    if (dot(f.n, inside - points[a]) > 0) {
      std::swap(f.b, f.c);
      f.n = -f.n;
    }
    f.offset = dot(f.n, points[f.a]);
    return f;
  };

  Vec3 inner = (points[i0] + points[i1] + points[i2] + points[i3]) / 4.0;
  faces.push_back(make_face(i0, i1, i2, inner));
  faces.push_back(make_face(i0, i1, i3, inner));
  faces.push_back(make_face(i0, i2, i3, inner));
  faces.push_back(make_face(i1, i2, i3, inner));

  for (int i = 0; i < n; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    const Vec3& p = points[i];

    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
      if (faces[f].alive && dot(faces[f].n, p) - faces[f].offset > eps)
        visible.push_back(f);
    if (visible.empty()) continue;

    // Horizon = directed edges of visible faces whose reverse is not visible.
    std::map<std::pair<int, int>, int> edge_use;
    for (int f : visible) {
      const HullFace& hf = faces[f];
      int vs[3] = {hf.a, hf.b, hf.c};
      for (int k = 0; k < 3; ++k)
        edge_use[{vs[k], vs[(k + 1) % 3]}] = f;
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [e, f] : edge_use)
      if (!edge_use.count({e.second, e.first})) horizon.push_back(e);

    for (int f : visible) faces[f].alive = false;
    for (const auto& [u, v] : horizon) faces.push_back(make_face(u, v, i, inner));
  }

  // Collect alive faces, remap used vertices.
  std::vector<int> remap(n, -1);
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    int ids[3] = {f.a, f.b, f.c};
    std::array<int, 3> t;
    for (int k = 0; k < 3; ++k) {
      if (remap[ids[k]] < 0) {
        remap[ids[k]] = static_cast<int>(verts.size());
        verts.push_back(points[ids[k]]);
      }
      t[k] = remap[ids[k]];
    }
    tris.push_back(t);
  }
  if (tris.size() < 4)
    raise(ErrorCode::DegenerateInput, "hull construction degenerated");

  return TriSurface::from_data(std::move(verts), std::move(tris), center, true);
}

TriSurface symmetric_hull_of_points(std::vector<Vec3> points) {
  size_t m = points.size();
  points.reserve(2 * m);
  for (size_t i = 0; i < m; ++i) points.push_back(-points[i]);
  TriSurface s = convex_hull(points, Vec3{0, 0, 0});
  if (!s.is_symmetric_about({0, 0, 0}))
    raise(ErrorCode::DegenerateInput,
          "hull vertex set is not closed under negation");
  return s;
}

TriSurface build_symmetric_hull(int n, const Vec3& semi_axes, uint64_t seed) {
  if (n < 4) raise(ErrorCode::InvalidArgument, "need at least 4 sample points");
  if (!(semi_axes.x > 0) || !(semi_axes.y > 0) || !(semi_axes.z > 0))
    raise(ErrorCode::InvalidArgument, "semi-axes must be positive");

  SplitMix64 rng(seed);
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    // Area-uniform on the sphere, then scaled onto the ellipsoid.
    double z = rng.uniform(-1.0, 1.0);
    double phi = rng.uniform(0.0, 2.0 * M_PI);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.push_back({semi_axes.x * r * std::cos(phi),
                   semi_axes.y * r * std::sin(phi), semi_axes.z * z});
  }
  return symmetric_hull_of_points(std::move(pts));
}

}  // namespace geodiam
