#include "tri_surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace geodiam {

bool point_less(const SurfacePoint& a, const SurfacePoint& b) {
  if (a.face != b.face) return a.face < b.face;
  for (int i = 0; i < 3; ++i)
    if (a.bary[i] != b.bary[i]) return a.bary[i] < b.bary[i];
  return false;
}

std::string ValidationReport::to_json() const {
  nlohmann::json j;
  j["passed"] = passed;
  j["euler_characteristic"] = euler_characteristic;
  j["non_manifold_edges"] = non_manifold_edges;
  j["degenerate_faces"] = degenerate_faces;
  j["convexity_violations"] = convexity_violations;
  return j.dump(2);
}

TriSurface TriSurface::from_data(std::vector<Vec3> vertices,
                                 std::vector<std::array<int, 3>> faces,
                                 std::optional<Vec3> center, bool convex,
                                 const Tolerances& tol) {
  TriSurface s;
  s.vertices_ = std::move(vertices);
  s.faces_ = std::move(faces);
  s.center_ = center;
  s.convex_ = convex;
  s.tol_ = tol;

  const int nv = s.vertex_count();
  for (const auto& f : s.faces_)
    for (int v : f)
      if (v < 0 || v >= nv)
        raise(ErrorCode::InvalidArgument, "face references vertex out of range");

  s.build_topology();
  s.compute_metrics();

  // Normalize a uniformly inward orientation (mixed orientation shows up as
  // non-manifold directed edges instead and is left for validate()).
  if (s.unmatched_edge_stubs_.empty() && s.overmatched_edges_.empty()) {
    double vol6 = 0;
    for (const auto& f : s.faces_)
      vol6 += dot(s.vertices_[f[0]], cross(s.vertices_[f[1]], s.vertices_[f[2]]));
    if (vol6 < 0) {
      for (auto& f : s.faces_) std::swap(f[1], f[2]);
      s.edges_.clear();
      s.face_edges_.clear();
      s.vertex_faces_.clear();
      s.unmatched_edge_stubs_.clear();
      s.overmatched_edges_.clear();
      s.build_topology();
    }
  }
  return s;
}

void TriSurface::build_topology() {
  face_edges_.assign(faces_.size(), {-1, -1, -1});
  vertex_faces_.assign(vertices_.size(), {});

  std::map<std::pair<int, int>, int> edge_index;
  // Directed multiplicities catch inconsistent winding.
  std::map<std::pair<int, int>, int> directed_count;

  for (int f = 0; f < face_count(); ++f) {
    const auto& fv = faces_[f];
    for (int k = 0; k < 3; ++k) {
      int a = fv[k], b = fv[(k + 1) % 3];
      if (a == b) continue;  // degenerate; reported via area check
      directed_count[{a, b}]++;
      auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      int e;
      if (it == edge_index.end()) {
        e = static_cast<int>(edges_.size());
        Edge ed;
        ed.v0 = key.first;
        ed.v1 = key.second;
        ed.f0 = f;
        ed.length = dist(vertices_[key.first], vertices_[key.second]);
        edges_.push_back(ed);
        edge_index.emplace(key, e);
      } else {
        e = it->second;
        Edge& ed = edges_[e];
        if (ed.f1 == -1 && ed.f0 != f)
          ed.f1 = f;
        else
          overmatched_edges_.push_back(e);
      }
      face_edges_[f][k] = e;
    }
    for (int v : fv)
      if (std::find(vertex_faces_[v].begin(), vertex_faces_[v].end(), f) ==
          vertex_faces_[v].end())
        vertex_faces_[v].push_back(f);
  }

  for (int e = 0; e < edge_count(); ++e)
    if (edges_[e].f1 == -1) unmatched_edge_stubs_.push_back(e);

  for (auto& [key, cnt] : directed_count) {
    if (cnt > 1) {
      int e = edge_index.count(key) ? edge_index[key]
                                    : edge_index[{key.second, key.first}];
      overmatched_edges_.push_back(e);
    }
  }
  std::sort(overmatched_edges_.begin(), overmatched_edges_.end());
  overmatched_edges_.erase(
      std::unique(overmatched_edges_.begin(), overmatched_edges_.end()),
      overmatched_edges_.end());
}

void TriSurface::compute_metrics() {
  Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const auto& v : vertices_) {
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  bbox_diag_ = vertices_.empty() ? 0.0 : dist(lo, hi);

  total_area_ = 0;
  for (int f = 0; f < face_count(); ++f) total_area_ += face_area(f);

  double sum = 0;
  for (const auto& e : edges_) sum += e.length;
  mean_edge_length_ = edges_.empty() ? 0.0 : sum / edges_.size();
}

int TriSurface::face_neighbor(int f, int k) const {
  int e = face_edges_[f][k];
  if (e < 0) return -1;
  const Edge& ed = edges_[e];
  return ed.f0 == f ? ed.f1 : ed.f0;
}

int TriSurface::find_edge(int va, int vb) const {
  if (va == vb) return -1;
  for (int f : vertex_faces_[va]) {
    for (int k = 0; k < 3; ++k) {
      int e = face_edges_[f][k];
      if (e < 0) continue;
      const Edge& ed = edges_[e];
      if ((ed.v0 == va && ed.v1 == vb) || (ed.v0 == vb && ed.v1 == va)) return e;
    }
  }
  return -1;
}

int TriSurface::find_face(int a, int b, int c) const {
  std::array<int, 3> want{a, b, c};
  std::sort(want.begin(), want.end());
  for (int f : vertex_faces_[a]) {
    std::array<int, 3> have = faces_[f];
    std::sort(have.begin(), have.end());
    if (have == want) return f;
  }
  return -1;
}

Vec3 TriSurface::face_normal(int f) const {
  const auto& fv = faces_[f];
  return normalized(cross(vertices_[fv[1]] - vertices_[fv[0]],
                          vertices_[fv[2]] - vertices_[fv[0]]));
}

double TriSurface::face_area(int f) const {
  const auto& fv = faces_[f];
  return 0.5 * norm(cross(vertices_[fv[1]] - vertices_[fv[0]],
                          vertices_[fv[2]] - vertices_[fv[0]]));
}

Vec3 TriSurface::face_centroid(int f) const {
  const auto& fv = faces_[f];
  return (vertices_[fv[0]] + vertices_[fv[1]] + vertices_[fv[2]]) / 3.0;
}

Vec3 TriSurface::embed(const SurfacePoint& p) const {
  const auto& fv = faces_[p.face];
  return vertices_[fv[0]] * p.bary[0] + vertices_[fv[1]] * p.bary[1] +
         vertices_[fv[2]] * p.bary[2];
}

std::array<double, 3> TriSurface::bary_in_face(int f, const Vec3& p) const {
  const auto& fv = faces_[f];
  return barycentric(p, vertices_[fv[0]], vertices_[fv[1]], vertices_[fv[2]]);
}

SurfacePoint TriSurface::canonical(SurfacePoint p) const {
  if (p.face < 0 || p.face >= face_count())
    raise(ErrorCode::InvalidArgument, "surface point has no valid face");

  auto& b = p.bary;
  for (double& x : b) x = std::max(x, 0.0);
  double s = b[0] + b[1] + b[2];
  if (s <= 0) raise(ErrorCode::InvalidArgument, "degenerate barycentric triple");
  for (double& x : b) x /= s;

  // Snap a coordinate to zero when the point sits within eps_point of the
  // opposite edge (bary * corner height gives the 3D distance to that edge).
  const auto& fv = faces_[p.face];
  double area2 = 2.0 * face_area(p.face);
  double epsp = eps_point();
  bool snapped = false;
  for (int i = 0; i < 3; ++i) {
    if (b[i] == 0) continue;
    int ea = fv[(i + 1) % 3], eb = fv[(i + 2) % 3];
    double opposite_len = dist(vertices_[ea], vertices_[eb]);
    double height = opposite_len > 0 ? area2 / opposite_len : 0;
    if (b[i] * height <= epsp) {
      b[i] = 0;
      snapped = true;
    }
  }
  if (snapped) {
    double t = b[0] + b[1] + b[2];
    for (double& x : b) x /= t;
  }

  int zeros = (b[0] == 0) + (b[1] == 0) + (b[2] == 0);
  if (zeros == 0) return p;

  if (zeros == 2) {
    int corner = b[0] > 0 ? 0 : (b[1] > 0 ? 1 : 2);
    int v = fv[corner];
    int best = p.face;
    for (int f : vertex_faces_[v]) best = std::min(best, f);
    SurfacePoint out;
    out.face = best;
    const auto& bf = faces_[best];
    for (int i = 0; i < 3; ++i) out.bary[i] = (bf[i] == v) ? 1.0 : 0.0;
    return out;
  }

  // Edge point.
  int zero_corner = b[0] == 0 ? 0 : (b[1] == 0 ? 1 : 2);
  int ca = (zero_corner + 1) % 3, cb = (zero_corner + 2) % 3;
  int va = fv[ca];
  int e = face_edge(p.face, ca);
  const Edge& ed = edges_[e];
  // Parameter measured from ed.v0 toward ed.v1.
  double t_from_va = b[cb];
  double t = (ed.v0 == va) ? t_from_va : 1.0 - t_from_va;

  int best = p.face;
  if (ed.f0 >= 0) best = std::min(best, ed.f0);
  if (ed.f1 >= 0) best = std::min(best, ed.f1);

  SurfacePoint out;
  out.face = best;
  const auto& bf = faces_[best];
  for (int i = 0; i < 3; ++i) {
    if (bf[i] == ed.v0)
      out.bary[i] = 1.0 - t;
    else if (bf[i] == ed.v1)
      out.bary[i] = t;
    else
      out.bary[i] = 0.0;
  }
  return out;
}

bool TriSurface::same_point(const SurfacePoint& a, const SurfacePoint& b) const {
  return dist(embed(a), embed(b)) <= eps_point();
}

std::vector<int> TriSurface::incident_faces(const SurfacePoint& p) const {
  SurfacePoint c = canonical(p);
  int v = as_vertex(c);
  if (v >= 0) return vertex_faces_[v];
  auto ep = as_edge_point(c);
  if (ep) {
    const Edge& ed = edges_[ep->first];
    std::vector<int> out;
    if (ed.f0 >= 0) out.push_back(ed.f0);
    if (ed.f1 >= 0) out.push_back(ed.f1);
    std::sort(out.begin(), out.end());
    return out;
  }
  return {c.face};
}

int TriSurface::as_vertex(const SurfacePoint& p) const {
  const auto& b = p.bary;
  int zeros = (b[0] == 0) + (b[1] == 0) + (b[2] == 0);
  if (zeros != 2) return -1;
  int corner = b[0] > 0 ? 0 : (b[1] > 0 ? 1 : 2);
  return faces_[p.face][corner];
}

std::optional<std::pair<int, double>> TriSurface::as_edge_point(
    const SurfacePoint& p) const {
  const auto& b = p.bary;
  int zeros = (b[0] == 0) + (b[1] == 0) + (b[2] == 0);
  if (zeros != 1) return std::nullopt;
  int zero_corner = b[0] == 0 ? 0 : (b[1] == 0 ? 1 : 2);
  int ca = (zero_corner + 1) % 3;
  int e = face_edge(p.face, ca);
  const Edge& ed = edges_[e];
  int va = faces_[p.face][ca];
  double t_from_va = b[(zero_corner + 2) % 3];
  double t = (ed.v0 == va) ? t_from_va : 1.0 - t_from_va;
  return std::make_pair(e, t);
}

std::pair<SurfacePoint, double> TriSurface::project(const Vec3& p) const {
  double best_d2 = 1e300;
  int best_f = -1;
  Vec3 best_q;
  for (int f = 0; f < face_count(); ++f) {
    const auto& fv = faces_[f];
    Vec3 q = closest_point_on_triangle(p, vertices_[fv[0]], vertices_[fv[1]],
                                       vertices_[fv[2]]);
    double d2 = norm2(p - q);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_f = f;
      best_q = q;
    }
  }
  SurfacePoint sp;
  sp.face = best_f;
  sp.bary = bary_in_face(best_f, best_q);
  return {canonical(sp), std::sqrt(best_d2)};
}

SurfacePoint TriSurface::locate(const Vec3& p, double eps) const {
  if (eps <= 0) raise(ErrorCode::InvalidArgument, "locate tolerance must be positive");
  auto [sp, d] = project(p);
  if (d > eps)
    raise(ErrorCode::OffSurface,
          "point is off the surface (distance " + std::to_string(d) + ")");
  return sp;
}

ValidationReport TriSurface::validate() const {
  ValidationReport r;
  r.euler_characteristic = vertex_count() - edge_count() + face_count();

  r.non_manifold_edges = unmatched_edge_stubs_;
  r.non_manifold_edges.insert(r.non_manifold_edges.end(),
                              overmatched_edges_.begin(),
                              overmatched_edges_.end());
  std::sort(r.non_manifold_edges.begin(), r.non_manifold_edges.end());
  r.non_manifold_edges.erase(
      std::unique(r.non_manifold_edges.begin(), r.non_manifold_edges.end()),
      r.non_manifold_edges.end());

  double eps_deg = eps_degenerate();
  for (int f = 0; f < face_count(); ++f) {
    const auto& fv = faces_[f];
    if (fv[0] == fv[1] || fv[1] == fv[2] || fv[0] == fv[2] ||
        face_area(f) <= eps_deg)
      r.degenerate_faces.push_back(f);
  }

  if (convex_) {
    for (int e = 0; e < edge_count(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.f0 < 0 || ed.f1 < 0) continue;
      // Reflex test: apex of f1 above the plane of f0 by more than the
      // angular slack allows.
      Vec3 n0 = face_normal(ed.f0);
      const auto& fv1 = faces_[ed.f1];
      int apex = -1;
      for (int v : fv1)
        if (v != ed.v0 && v != ed.v1) apex = v;
      if (apex < 0) continue;
      double h = dot(n0, vertices_[apex] - vertices_[ed.v0]);
      double d_edge = point_segment_distance(vertices_[apex], vertices_[ed.v0],
                                             vertices_[ed.v1]);
      if (h > tol_.convex_rad * std::max(d_edge, 1e-30) + eps_point())
        r.convexity_violations.push_back(e);
    }
  }

  r.passed = r.non_manifold_edges.empty() && r.degenerate_faces.empty() &&
             r.convexity_violations.empty() && r.euler_characteristic == 2;
  return r;
}

bool TriSurface::is_symmetric_about(const Vec3& c) const {
  double epsp = eps_point();
  for (const auto& v : vertices_) {
    Vec3 image = c * 2.0 - v;
    double best = 1e300;
    for (const auto& w : vertices_) best = std::min(best, dist(image, w));
    if (best > epsp) return false;
  }
  return true;
}

TriSurface TriSurface::box(double a, double b, double c) {
  if (!(a > 0) || !(b > 0) || !(c > 0))
    raise(ErrorCode::InvalidArgument, "box dimensions must be positive");

  std::vector<Vec3> verts(8);
  auto idx = [](int sx, int sy, int sz) { return sx * 4 + sy * 2 + sz; };
  const double h[3] = {a / 2, b / 2, c / 2};
  for (int sx = 0; sx < 2; ++sx)
    for (int sy = 0; sy < 2; ++sy)
      for (int sz = 0; sz < 2; ++sz)
        verts[idx(sx, sy, sz)] = {(sx ? 1 : -1) * h[0], (sy ? 1 : -1) * h[1],
                                  (sz ? 1 : -1) * h[2]};

  auto lex_less = [&](int u, int v) {
    const Vec3 &p = verts[u], &q = verts[v];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return p.z < q.z;
  };

  std::vector<std::array<int, 3>> tris;
  auto add_quad = [&](std::array<int, 4> q) {
    int arg = 0;
    for (int i = 1; i < 4; ++i)
      if (lex_less(q[i], q[arg])) arg = i;
    if (arg == 0 || arg == 2) {
      tris.push_back({q[0], q[1], q[2]});
      tris.push_back({q[0], q[2], q[3]});
    } else {
      tris.push_back({q[1], q[2], q[3]});
      tris.push_back({q[1], q[3], q[0]});
    }
  };

  // Outward CCW quads, axis by axis.
  for (int axis = 0; axis < 3; ++axis) {
    int j = (axis + 1) % 3, k = (axis + 2) % 3;
    for (int s = 0; s < 2; ++s) {
      // CCW in the (j,k) plane seen from +axis.
      int seq[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      std::array<int, 4> q;
      for (int i = 0; i < 4; ++i) {
        int bits[3];
        bits[axis] = s;
        bits[j] = seq[i][0];
        bits[k] = seq[i][1];
        q[i] = idx(bits[0], bits[1], bits[2]);
      }
      if (!s) std::reverse(q.begin() + 1, q.end());
      add_quad(q);
    }
  }

  return from_data(std::move(verts), std::move(tris), Vec3{0, 0, 0}, true);
}

TriSurface TriSurface::parse_obj(const std::string& text) {
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> faces;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z))
        raise(ErrorCode::ParseError,
              "malformed vertex at line " + std::to_string(lineno));
      verts.push_back({x, y, z});
    } else if (tag == "f") {
      std::vector<int> ids;
      std::string tok;
      while (ls >> tok) {
        // Accept v, v/vt, v/vt/vn, v//vn forms; only the vertex index is used.
        size_t slash = tok.find('/');
        std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
        try {
          ids.push_back(std::stoi(head));
        } catch (...) {
          raise(ErrorCode::ParseError,
                "malformed face index at line " + std::to_string(lineno));
        }
      }
      if (ids.size() != 3)
        raise(ErrorCode::ParseError,
              "non-triangular face at line " + std::to_string(lineno));
      std::array<int, 3> f;
      for (int i = 0; i < 3; ++i) {
        int id = ids[i];
        if (id < 0) id = static_cast<int>(verts.size()) + 1 + id;
        if (id < 1 || id > static_cast<int>(verts.size()))
          raise(ErrorCode::ParseError,
                "face index out of range at line " + std::to_string(lineno));
        f[i] = id - 1;
      }
      faces.push_back(f);
    }
    // Other record types are ignored.
  }
  if (faces.empty()) raise(ErrorCode::ParseError, "OBJ contains no faces");

  TriSurface s = from_data(std::move(verts), std::move(faces));

  // Auto-detect convexity and a symmetry center so symmetric inputs can be
  // used with the antipodal machinery directly.
  Vec3 centroid{0, 0, 0};
  for (const auto& v : s.vertices_) centroid += v;
  centroid = centroid / std::max(1, s.vertex_count());
  if (s.unmatched_edge_stubs_.empty() && s.overmatched_edges_.empty() &&
      s.is_symmetric_about(centroid))
    s.center_ = centroid;

  TriSurface probe = s;
  probe.convex_ = true;
  if (probe.validate().convexity_violations.empty()) s.convex_ = true;
  return s;
}

TriSurface TriSurface::load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_obj(ss.str());
}

std::string TriSurface::to_obj() const {
  std::string out;
  char buf[128];
  for (const auto& v : vertices_) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out += buf;
  }
  for (const auto& f : faces_) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += buf;
  }
  return out;
}

void TriSurface::save_obj(const std::string& path) const {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot write " + path);
  out << to_obj();
}

TriSurface subdivide_midpoint(const TriSurface& s, bool project_unit_sphere) {
  std::vector<Vec3> verts = s.vertices();
  std::vector<int> edge_mid(s.edge_count());
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto& ed = s.edge(e);
    Vec3 m = (s.vertex(ed.v0) + s.vertex(ed.v1)) * 0.5;
    if (project_unit_sphere) m = normalized(m);
    edge_mid[e] = static_cast<int>(verts.size());
    verts.push_back(m);
  }
  std::vector<std::array<int, 3>> faces;
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& fv = s.face(f);
    int m01 = edge_mid[s.face_edge(f, 0)];
    int m12 = edge_mid[s.face_edge(f, 1)];
    int m20 = edge_mid[s.face_edge(f, 2)];
    faces.push_back({fv[0], m01, m20});
    faces.push_back({fv[1], m12, m01});
    faces.push_back({fv[2], m20, m12});
    faces.push_back({m01, m12, m20});
  }
  return TriSurface::from_data(std::move(verts), std::move(faces), s.center(),
                               s.convex_flag(), s.tolerances());
}

TriSurface octahedron_surface() {
  std::vector<Vec3> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                         {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<std::array<int, 3>> f = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                       {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return TriSurface::from_data(std::move(v), std::move(f), Vec3{0, 0, 0}, true);
}

TriSurface icosahedron_surface() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double n = std::sqrt(1.0 + phi * phi);
  const double a = 1.0 / n, b = phi / n;
  std::vector<Vec3> v = {{-a, b, 0}, {a, b, 0},  {-a, -b, 0}, {a, -b, 0},
                         {0, -a, b}, {0, a, b},  {0, -a, -b}, {0, a, -b},
                         {b, 0, -a}, {b, 0, a},  {-b, 0, -a}, {-b, 0, a}};
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return TriSurface::from_data(std::move(v), std::move(f), Vec3{0, 0, 0}, true);
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DegenerateInput: return "degenerate-input";
    case ErrorCode::OffSurface: return "off-surface";
    case ErrorCode::NotSymmetric: return "not-symmetric";
    case ErrorCode::SymmetryViolation: return "symmetry-violation";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::InvolutionCheckFailed: return "involution-check-failed";
    case ErrorCode::SimplicityViolation: return "simplicity-violation";
    case ErrorCode::RegionCountViolation: return "region-count-violation";
    case ErrorCode::SwapViolation: return "swap-violation";
    case ErrorCode::InvalidSpace: return "invalid-space";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::IoError: return "io-error";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace geodiam
