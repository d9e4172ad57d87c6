#include "geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <set>

#include <json.hpp>

#include "error.hpp"

namespace geodiam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kConeEps = 1e-12;  // relative slack for cone side tests

struct Node {
  Vec2 A, B;    // entry edge endpoints in the unfolding plane
  Vec2 W0, W1;  // window: cone boundary points, cross(W0, W1) >= 0
  double lb = 0;
  int parent = -1;
  int face = -1;  // face entered by crossing `edge`
  int edge = -1;  // mesh edge crossed
  int va = -1, vb = -1;  // mesh vertices unfolded at A and B
  double side = 1;       // side of line(A,B) where `face`'s apex unfolds
};

struct TargetState {
  std::vector<int> faces;  // incident faces of the target
  // Barycentric coordinates of the target per incident face (parallel arrays).
  std::vector<std::array<double, 3>> barys;
  double best_len = kInf;
  int best_node = -1;
  Vec2 best_T;
  std::vector<int> best_seq;
  bool direct = false;  // shares a face with the source
  bool trivial = false; // equals the source
};

class Search {
 public:
  Search(const TriSurface& s, const SurfacePoint& p,
         std::span<const SurfacePoint> targets, const DistanceOptions& opts)
      : s_(s), opts_(opts) {
    source_ = s.canonical(p);
    source_pos_ = s.embed(source_);
    tie_eps_ = 1e-12 * std::max(s.bbox_diag(), 1e-30);
    init_targets(targets);
  }

  std::vector<GeodesicPath> run() {
    if (unresolved_ > 0) {
      seed_initial_nodes();
      main_loop();
    }
    std::vector<GeodesicPath> out;
    out.reserve(targets_.size());
    for (size_t j = 0; j < targets_.size(); ++j) out.push_back(build_path(j));
    return out;
  }

 private:
  const TriSurface& s_;
  DistanceOptions opts_;
  SurfacePoint source_;
  Vec3 source_pos_;
  double tie_eps_;

  std::vector<TargetState> targets_;
  std::vector<SurfacePoint> target_points_;
  std::vector<std::pair<int, int>> face_targets_;  // (face, target), sorted
  std::multiset<double> bounds_;  // best_len per unresolved-category target
  int unresolved_ = 0;

  std::vector<Node> arena_;
  using QEntry = std::pair<double, int>;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> queue_;

  double needed_bound() const {
    return bounds_.empty() ? kInf : *bounds_.rbegin();
  }

  void init_targets(std::span<const SurfacePoint> targets) {
    auto src_faces = s_.incident_faces(source_);
    targets_.resize(targets.size());
    for (size_t j = 0; j < targets.size(); ++j) {
      TargetState& t = targets_[j];
      SurfacePoint q = s_.canonical(targets[j]);
      target_points_.push_back(q);
      if (s_.same_point(source_, q)) {
        t.trivial = true;
        continue;
      }
      t.faces = s_.incident_faces(q);
      for (int f : t.faces) {
        if (std::find(src_faces.begin(), src_faces.end(), f) != src_faces.end())
          t.direct = true;
        std::array<double, 3> b = s_.bary_in_face(f, s_.embed(q));
        for (double& x : b) x = std::max(0.0, x);
        double sum = b[0] + b[1] + b[2];
        for (double& x : b) x /= sum;
        t.barys.push_back(b);
        face_targets_.emplace_back(f, static_cast<int>(j));
      }
      if (t.direct) continue;
      bounds_.insert(t.best_len);
      ++unresolved_;
    }
    std::sort(face_targets_.begin(), face_targets_.end());
  }

  void update_best(int j, double len, int node, const Vec2& T) {
    TargetState& t = targets_[j];
    if (len < t.best_len - tie_eps_) {
      bounds_.erase(bounds_.find(t.best_len));
      bounds_.insert(len);
      t.best_len = len;
      t.best_node = node;
      t.best_T = T;
      t.best_seq = sequence_of(node);
    } else if (len <= t.best_len + tie_eps_ && t.best_node >= 0) {
      std::vector<int> seq = sequence_of(node);
      if (std::lexicographical_compare(seq.begin(), seq.end(),
                                       t.best_seq.begin(), t.best_seq.end())) {
        t.best_node = node;
        t.best_T = T;
        t.best_seq = std::move(seq);
        if (len < t.best_len) {
          bounds_.erase(bounds_.find(t.best_len));
          bounds_.insert(len);
          t.best_len = len;
        }
      }
    }
  }

  std::vector<int> sequence_of(int node) const {
    std::vector<int> seq;
    for (int n = node; n >= 0; n = arena_[n].parent) seq.push_back(arena_[n].edge);
    std::reverse(seq.begin(), seq.end());
    return seq;
  }

  // Barycentric coordinates of the source inside face f, snapped so that
  // on-edge components are exactly zero.
  std::array<double, 3> snapped_source_bary(int f) const {
    std::array<double, 3> b = s_.bary_in_face(f, source_pos_);
    const auto& fv = s_.face(f);
    double area2 = 2.0 * s_.face_area(f);
    double epsp = s_.eps_point();
    for (int i = 0; i < 3; ++i) {
      b[i] = std::max(0.0, b[i]);
      int ea = fv[(i + 1) % 3], eb = fv[(i + 2) % 3];
      double opp = dist(s_.vertex(ea), s_.vertex(eb));
      double height = opp > 0 ? area2 / opp : 0;
      if (b[i] * height <= epsp) b[i] = 0;
    }
    double sum = b[0] + b[1] + b[2];
    for (double& x : b) x /= sum;
    return b;
  }

  void seed_initial_nodes() {
    for (int f : s_.incident_faces(source_)) {
      const auto& fv = s_.face(f);
      Vec3 n = s_.face_normal(f);
      Vec3 e1 = normalized(s_.vertex(fv[1]) - s_.vertex(fv[0]));
      Vec3 e2 = normalized(cross(n, e1));
      auto chart = [&](const Vec3& x) {
        Vec3 d = x - source_pos_;
        return Vec2{dot(d, e1), dot(d, e2)};
      };
      std::array<Vec2, 3> c2{chart(s_.vertex(fv[0])), chart(s_.vertex(fv[1])),
                             chart(s_.vertex(fv[2]))};
      std::array<double, 3> b = snapped_source_bary(f);
      for (int k = 0; k < 3; ++k) {
        if (b[(k + 2) % 3] == 0) continue;  // source lies on this edge
        Vec2 A = c2[k], B = c2[(k + 1) % 3];
        Node nd;
        nd.A = A;
        nd.B = B;
        nd.va = fv[k];
        nd.vb = fv[(k + 1) % 3];
        nd.edge = s_.face_edge(f, k);
        nd.face = s_.face_neighbor(f, k);
        if (nd.face < 0) continue;
        if (cross(A, B) >= 0) {
          nd.W0 = A;
          nd.W1 = B;
        } else {
          nd.W0 = B;
          nd.W1 = A;
        }
        double side_src = cross(B - A, Vec2{0, 0} - A);
        nd.side = side_src > 0 ? -1.0 : 1.0;
        nd.lb = point_segment_distance(Vec2{0, 0}, nd.W0, nd.W1);
        nd.parent = -1;
        push_node(nd);
      }
    }
  }

  void push_node(const Node& nd) {
    if (nd.lb > needed_bound() + tie_eps_) return;
    arena_.push_back(nd);
    queue_.emplace(nd.lb, static_cast<int>(arena_.size()) - 1);
  }

  void main_loop() {
    uint64_t pops = 0;
    while (!queue_.empty()) {
      auto [lb, id] = queue_.top();
      queue_.pop();
      if (lb > needed_bound() + tie_eps_) break;
      if (++pops > opts_.node_budget) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "geodesic search exceeded %llu nodes (best upper bound %.17g)",
                      static_cast<unsigned long long>(opts_.node_budget),
                      needed_bound());
        raise(ErrorCode::BudgetExceeded, buf);
      }
      expand(id);
    }
  }

  void expand(int id) {
    Node nd = arena_[id];  // by value: arena may reallocate
    const auto& fv = s_.face(nd.face);
    int vc = -1;
    for (int v : fv)
      if (v != nd.va && v != nd.vb) vc = v;
    if (vc < 0) return;
#ifdef GEODIAM_SEARCH_DEBUG
    std::fprintf(stderr,
                 "pop id=%d face=%d edge=%d lb=%.6g A=(%.3g,%.3g) B=(%.3g,%.3g) "
                 "W0=(%.3g,%.3g) W1=(%.3g,%.3g) side=%g\n",
                 id, nd.face, nd.edge, nd.lb, nd.A.x, nd.A.y, nd.B.x, nd.B.y,
                 nd.W0.x, nd.W0.y, nd.W1.x, nd.W1.y, nd.side);
#endif

    // Unfold apex vc across the entry edge.
    Vec2 AB = nd.B - nd.A;
    double lab = norm(AB);
    if (lab <= 0) return;
    double la = dist(s_.vertex(vc), s_.vertex(nd.va));
    double lb3 = dist(s_.vertex(vc), s_.vertex(nd.vb));
    double u = (la * la - lb3 * lb3 + lab * lab) / (2.0 * lab);
    double h2 = la * la - u * u;
    double h = h2 > 0 ? std::sqrt(h2) : 0.0;
    Vec2 e = AB / lab;
    Vec2 C = nd.A + e * u + perp(e) * (h * nd.side);

    // Candidate completions for targets living in this face.
    auto range = std::equal_range(
        face_targets_.begin(), face_targets_.end(), std::make_pair(nd.face, -1),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = range.first; it != range.second; ++it) {
      int j = it->second;
      TargetState& t = targets_[j];
      if (t.trivial || t.direct) continue;
      size_t slot = 0;
      while (t.faces[slot] != nd.face) ++slot;
      const auto& bq = t.barys[slot];
      Vec2 T{0, 0};
      for (int k = 0; k < 3; ++k) {
        Vec2 pos = fv[k] == nd.va ? nd.A : (fv[k] == nd.vb ? nd.B : C);
        T = T + pos * bq[k];
      }
      double slack0 = kConeEps * norm(nd.W0) * norm(T);
      double slack1 = kConeEps * norm(nd.W1) * norm(T);
#ifdef GEODIAM_SEARCH_DEBUG
      std::fprintf(stderr,
                   "  cand j=%d T=(%.4g,%.4g) |T|=%.6g c0=%.3g c1=%.3g\n", j,
                   T.x, T.y, norm(T), cross(nd.W0, T), cross(T, nd.W1));
#endif
      if (cross(nd.W0, T) >= -slack0 && cross(T, nd.W1) >= -slack1 &&
          norm(T) >= nd.lb - 10.0 * tie_eps_)
        update_best(j, norm(T), id, T);
    }

    // Children across the two exit edges.
    expand_child(id, nd, nd.A, C, nd.va, vc, nd.B);
    expand_child(id, nd, C, nd.B, vc, nd.vb, nd.A);
  }

  void expand_child(int id, const Node& nd, const Vec2& P, const Vec2& Q,
                    int vp, int vq, const Vec2& opposite) {
    // Locate the exit edge slot on nd.face.
    const auto& fv = s_.face(nd.face);
    int slot = -1;
    for (int k = 0; k < 3; ++k) {
      int a = fv[k], b = fv[(k + 1) % 3];
      if ((a == vp && b == vq) || (a == vq && b == vp)) slot = k;
    }
    if (slot < 0) return;
    int g = s_.face_neighbor(nd.face, slot);
    if (g < 0) return;

    // Clip [P,Q] by the cone: cross(W0, X(t)) >= 0 and cross(X(t), W1) >= 0.
    // No slack here: geodesics pinned exactly to a window boundary pass
    // through a vertex and are covered by strictly shorter interior routes.
    double t_lo = 0, t_hi = 1;
    auto clip = [&](double c_at_P, double c_at_Q) -> bool {
      double k = c_at_Q - c_at_P;
      if (std::abs(k) < 1e-300) return c_at_P >= 0;
      double t = -c_at_P / k;
      if (k > 0)
        t_lo = std::max(t_lo, t);
      else
        t_hi = std::min(t_hi, t);
      return true;
    };
    if (!clip(cross(nd.W0, P), cross(nd.W0, Q))) return;
    if (!clip(cross(P, nd.W1), cross(Q, nd.W1))) return;
    if (t_lo > t_hi) return;

    Vec2 Xlo = P + (Q - P) * t_lo;
    Vec2 Xhi = P + (Q - P) * t_hi;

    Node ch;
    ch.A = P;
    ch.B = Q;
    ch.va = vp;
    ch.vb = vq;
    ch.edge = s_.face_edge(nd.face, slot);
    ch.face = g;
    ch.parent = id;
    if (cross(Xlo, Xhi) >= 0) {
      ch.W0 = Xlo;
      ch.W1 = Xhi;
    } else {
      ch.W0 = Xhi;
      ch.W1 = Xlo;
    }

    // A window pinched to a point sits on a vertex: it only admits paths
    // through that vertex, which are never uniquely shortest on a strictly
    // convex surface. Rounding would otherwise keep such windows alive and
    // let them spiral around the vertex forever.
    double w0 = norm(ch.W0), w1 = norm(ch.W1);
    if (w0 <= tie_eps_ || w1 <= tie_eps_) return;
    if (dist(ch.W0, ch.W1) <= std::max(1e-9 * std::max(w0, w1), tie_eps_))
      return;

    double side_old = cross(Q - P, opposite - P);
    ch.side = side_old > 0 ? -1.0 : 1.0;
    ch.lb = std::max(nd.lb, point_segment_distance(Vec2{0, 0}, ch.W0, ch.W1));
    push_node(ch);
  }

  GeodesicPath build_path(size_t j) {
    const TargetState& t = targets_[j];
    const SurfacePoint& q = target_points_[j];
    GeodesicPath path;
    if (t.trivial) {
      path.points = {source_};
      path.length = 0;
      return path;
    }
    if (t.direct) {
      path.points = {source_, q};
      path.length = dist(source_pos_, s_.embed(q));
      return path;
    }
    if (t.best_node < 0)
      raise(ErrorCode::Internal, "geodesic search found no path to target");

    std::vector<int> chain;
    for (int n = t.best_node; n >= 0; n = arena_[n].parent) chain.push_back(n);
    std::reverse(chain.begin(), chain.end());

    path.points.push_back(source_);
    Vec3 prev = source_pos_;
    const Vec2 T = t.best_T;
    for (int n : chain) {
      const Node& nd = arena_[n];
      double ca = cross(T, nd.A), cb = cross(T, nd.B);
      double den = ca - cb;
      double tt = std::abs(den) > 1e-300 ? ca / den : 0.5;
      tt = std::clamp(tt, 0.0, 1.0);
      SurfacePoint sp;
      sp.face = nd.face;
      const auto& fv = s_.face(nd.face);
      for (int k = 0; k < 3; ++k) {
        if (fv[k] == nd.va)
          sp.bary[k] = 1.0 - tt;
        else if (fv[k] == nd.vb)
          sp.bary[k] = tt;
        else
          sp.bary[k] = 0.0;
      }
      sp = s_.canonical(sp);
      Vec3 x3 = s_.embed(sp);
      if (dist(x3, prev) > 0.5 * s_.eps_point()) {
        path.points.push_back(sp);
        path.edges.push_back(nd.edge);
        path.length += dist(x3, prev);
        prev = x3;
      }
    }
    Vec3 qpos = s_.embed(q);
    if (path.points.size() >= 2 && dist(qpos, prev) <= 0.5 * s_.eps_point()) {
      // Final crossing coincides with the target; replace it.
      Vec3 before = s_.embed(path.points[path.points.size() - 2]);
      path.length -= dist(prev, before);
      path.points.back() = q;
      if (!path.edges.empty()) path.edges.pop_back();
      path.length += dist(qpos, before);
    } else {
      path.points.push_back(q);
      path.length += dist(qpos, prev);
    }
    return path;
  }
};

}  // namespace

std::vector<GeodesicPath> exact_distances(const TriSurface& s,
                                          const SurfacePoint& p,
                                          std::span<const SurfacePoint> targets,
                                          const DistanceOptions& opts) {
  Search search(s, p, targets, opts);
  return search.run();
}

GeodesicPath exact_distance(const TriSurface& s, const SurfacePoint& p,
                            const SurfacePoint& q, const DistanceOptions& opts) {
  std::array<SurfacePoint, 1> t{q};
  return exact_distances(s, p, t, opts)[0];
}

int segment_host_face(const TriSurface& s, const SurfacePoint& a,
                      const SurfacePoint& b) {
  auto fa = s.incident_faces(a);
  auto fb = s.incident_faces(b);
  int best = -1;
  for (int f : fa)
    if (std::find(fb.begin(), fb.end(), f) != fb.end())
      best = best < 0 ? f : std::min(best, f);
  if (best < 0)
    raise(ErrorCode::Internal, "consecutive path points share no face");
  return best;
}

SurfacePoint point_along(const TriSurface& s, const GeodesicPath& path,
                         double arclength) {
  if (path.points.empty())
    raise(ErrorCode::InvalidArgument, "empty path");
  double slack = 1e-9 * std::max(path.length, s.bbox_diag() * 1e-6);
  if (arclength < -slack || arclength > path.length + slack)
    raise(ErrorCode::InvalidArgument, "arclength outside [0, length]");
  arclength = std::clamp(arclength, 0.0, path.length);
  if (path.points.size() == 1) return path.points[0];

  double cum = 0;
  for (size_t i = 0; i + 1 < path.points.size(); ++i) {
    Vec3 a = s.embed(path.points[i]);
    Vec3 b = s.embed(path.points[i + 1]);
    double seg = dist(a, b);
    if (arclength <= cum + seg || i + 2 == path.points.size()) {
      double r = seg > 0 ? (arclength - cum) / seg : 0.0;
      r = std::clamp(r, 0.0, 1.0);
      if (r <= 0) return path.points[i];
      if (r >= 1) return path.points[i + 1];
      int f = segment_host_face(s, path.points[i], path.points[i + 1]);
      Vec3 x = a + (b - a) * r;
      SurfacePoint sp;
      sp.face = f;
      sp.bary = s.bary_in_face(f, x);
      return s.canonical(sp);
    }
    cum += seg;
  }
  return path.points.back();
}

GeodesicPath subpath(const TriSurface& s, const GeodesicPath& path, double s0,
                     double s1) {
  if (s0 > s1) std::swap(s0, s1);
  GeodesicPath out;
  SurfacePoint head = point_along(s, path, s0);
  SurfacePoint tail = point_along(s, path, s1);
  out.points.push_back(head);

  double cum = 0;
  Vec3 prev = s.embed(head);
  for (size_t i = 0; i + 1 < path.points.size(); ++i) {
    Vec3 a = s.embed(path.points[i]);
    Vec3 b = s.embed(path.points[i + 1]);
    double seg = dist(a, b);
    double end = cum + seg;
    if (end > s0 && end < s1) {
      const SurfacePoint& sp = path.points[i + 1];
      Vec3 x = s.embed(sp);
      if (dist(x, prev) > 0.5 * s.eps_point() && i < path.edges.size()) {
        out.points.push_back(sp);
        out.edges.push_back(path.edges[i]);
        out.length += dist(x, prev);
        prev = x;
      }
    }
    cum = end;
  }
  Vec3 tp = s.embed(tail);
  if (dist(tp, prev) > 0.5 * s.eps_point()) {
    out.points.push_back(tail);
    out.length += dist(tp, prev);
  } else if (out.points.size() >= 2) {
    Vec3 before = s.embed(out.points[out.points.size() - 2]);
    out.length -= dist(prev, before);
    out.points.back() = tail;
    if (!out.edges.empty()) out.edges.pop_back();
    out.length += dist(tp, before);
  }
  return out;
}

double straightness_defect(const TriSurface& s, const GeodesicPath& path) {
  if (path.points.size() < 3) return 0.0;

  // Re-unfold the crossed faces along the recorded polyline and compare the
  // unfolded polyline with the straight segment from source to target.
  std::vector<Vec2> flat(path.points.size());
  const SurfacePoint& p0 = path.points[0];
  int f = segment_host_face(s, path.points[0], path.points[1]);

  const auto& fv = s.face(f);
  Vec3 n = s.face_normal(f);
  Vec3 e1 = normalized(s.vertex(fv[1]) - s.vertex(fv[0]));
  Vec3 e2 = normalized(cross(n, e1));
  Vec3 origin = s.embed(p0);
  auto chart0 = [&](const Vec3& x) {
    return Vec2{dot(x - origin, e1), dot(x - origin, e2)};
  };

  // Current face's vertices in the plane, updated by unfolding step by step.
  std::array<int, 3> ids = fv;
  std::array<Vec2, 3> pos{chart0(s.vertex(fv[0])), chart0(s.vertex(fv[1])),
                          chart0(s.vertex(fv[2]))};
  auto place = [&](const SurfacePoint& sp) {
    auto b = s.bary_in_face(f, s.embed(sp));
    Vec2 out{0, 0};
    for (int k = 0; k < 3; ++k) {
      int slot = -1;
      for (int m = 0; m < 3; ++m)
        if (ids[m] == s.face(f)[k]) slot = m;
      out = out + pos[slot] * b[k];
    }
    return out;
  };

  flat[0] = place(path.points[0]);
  for (size_t i = 0; i + 1 < path.points.size(); ++i) {
    if (i > 0) {
      // Advance across edge i-1 into the next face.
      int e = path.edges[i - 1];
      const auto& ed = s.edge(e);
      int g = ed.f0 == f ? ed.f1 : ed.f0;
      if (g < 0) raise(ErrorCode::Internal, "path crosses boundary edge");
      // Unfold g: shared vertices keep their plane position, apex mirrored.
      const auto& gv = s.face(g);
      int apex = -1;
      for (int v : gv)
        if (v != ed.v0 && v != ed.v1) apex = v;
      Vec2 A{}, B{};
      for (int m = 0; m < 3; ++m) {
        if (ids[m] == ed.v0) A = pos[m];
        if (ids[m] == ed.v1) B = pos[m];
      }
      Vec2 AB = B - A;
      double lab = norm(AB);
      double la = dist(s.vertex(apex), s.vertex(ed.v0));
      double lb3 = dist(s.vertex(apex), s.vertex(ed.v1));
      double u = (la * la - lb3 * lb3 + lab * lab) / (2.0 * lab);
      double h2 = la * la - u * u;
      double h = h2 > 0 ? std::sqrt(h2) : 0;
      // Old face on one side: put apex on the other.
      Vec2 old_apex{};
      for (int m = 0; m < 3; ++m) {
        if (ids[m] != ed.v0 && ids[m] != ed.v1) old_apex = pos[m];
      }
      Vec2 e2d = AB / lab;
      double side_old = cross(AB, old_apex - A);
      Vec2 C = A + e2d * u + perp(e2d) * (side_old > 0 ? -h : h);
      ids = gv;
      for (int m = 0; m < 3; ++m) {
        if (gv[m] == ed.v0)
          pos[m] = A;
        else if (gv[m] == ed.v1)
          pos[m] = B;
        else
          pos[m] = C;
      }
      f = g;
    }
    flat[i + 1] = place(path.points[i + 1]);
  }

  Vec2 S = flat.front(), T = flat.back();
  double straight = dist(S, T);
  double defect = std::abs(path.length - straight);
  for (const Vec2& x : flat)
    defect = std::max(defect, point_segment_distance(x, S, T));
  return defect;
}

std::string GeodesicPath::to_json(const TriSurface& s) const {
  nlohmann::json j;
  j["length"] = length;
  auto pts = nlohmann::json::array();
  for (const auto& p : points) {
    Vec3 x = s.embed(p);
    pts.push_back({x.x, x.y, x.z});
  }
  j["points"] = pts;
  j["edge_sequence"] = edges;
  return j.dump(2);
}

std::string GeodesicPath::to_polyline_obj(const TriSurface& s) const {
  std::string out;
  char buf[128];
  for (const auto& p : points) {
    Vec3 x = s.embed(p);
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", x.x, x.y, x.z);
    out += buf;
  }
  out += "l";
  for (size_t i = 1; i <= points.size(); ++i) {
    std::snprintf(buf, sizeof buf, " %zu", i);
    out += buf;
  }
  out += "\n";
  return out;
}

}  // namespace geodiam
