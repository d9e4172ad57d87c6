#include "jordan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"
#include "sampler.hpp"

namespace geodiam {

namespace {

struct FaceChart {
  Vec3 origin, e1, e2;
  Vec2 to2d(const Vec3& p) const {
    Vec3 d = p - origin;
    return {dot(d, e1), dot(d, e2)};
  }
};

FaceChart face_chart(const TriSurface& s, int f) {
  const auto& fv = s.face(f);
  FaceChart c;
  c.origin = s.vertex(fv[0]);
  c.e1 = normalized(s.vertex(fv[1]) - s.vertex(fv[0]));
  c.e2 = normalized(cross(s.face_normal(f), c.e1));
  return c;
}

double polygon_area(const std::vector<Vec2>& poly) {
  double a = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    a += cross(p, q);
  }
  return a / 2;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  bool inside = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 &a = poly[i], &b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

double polygon_boundary_distance(const Vec2& p, const std::vector<Vec2>& poly) {
  double best = 1e300;
  for (size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, point_segment_distance(p, poly[i],
                                                 poly[(i + 1) % poly.size()]));
  return best;
}

// Closest-point parameters between two 3D segments (Ericson 5.1.9).
std::pair<double, double> segment_closest_params(const Vec3& p1, const Vec3& q1,
                                                 const Vec3& p2, const Vec3& q2) {
  Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  double a = norm2(d1), e = norm2(d2), f = dot(d2, r);
  double st = 0, tt = 0;
  const double eps = 1e-300;
  if (a <= eps && e <= eps) return {0, 0};
  if (a <= eps) {
    tt = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = dot(d1, r);
    if (e <= eps) {
      st = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = dot(d1, d2);
      double denom = a * e - b * b;
      if (denom > 0) st = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      tt = (b * st + f) / e;
      if (tt < 0) {
        tt = 0;
        st = std::clamp(-c / a, 0.0, 1.0);
      } else if (tt > 1) {
        tt = 1;
        st = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return {st, tt};
}

// ---------------------------------------------------------------------------
// Combinatorial structure of a closed curve: node classification and
// per-segment hosts (a face chord, or an interval along a mesh edge).

struct CurveNode {
  SurfacePoint sp;
  Vec3 pos;
  int vertex = -1;
  int edge = -1;
  double edge_t = 0;
};

struct CurveSeg {
  int a = -1, b = -1;
  int host_face = -1;
  int host_edge = -1;
  double t0 = 0, t1 = 0;
};

struct CurveStructure {
  std::vector<CurveNode> nodes;
  std::vector<CurveSeg> segs;
};

CurveStructure analyze_curve(const TriSurface& s, const ClosedCurve& curve) {
  CurveStructure cs;
  int m = curve.segment_count();
  cs.nodes.resize(m);
  for (int i = 0; i < m; ++i) {
    CurveNode& n = cs.nodes[i];
    n.sp = s.canonical(curve.points[i]);
    n.pos = s.embed(n.sp);
    n.vertex = s.as_vertex(n.sp);
    if (n.vertex < 0) {
      if (auto ep = s.as_edge_point(n.sp)) {
        n.edge = ep->first;
        n.edge_t = ep->second;
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    const CurveNode& a = cs.nodes[i];
    const CurveNode& b = cs.nodes[(i + 1) % m];
    CurveSeg seg;
    seg.a = i;
    seg.b = (i + 1) % m;

    auto edge_param_of_vertex = [&](int e, int v) -> double {
      return s.edge(e).v0 == v ? 0.0 : 1.0;
    };

    if (a.vertex >= 0 && b.vertex >= 0) {
      int e = s.find_edge(a.vertex, b.vertex);
      if (e >= 0) {
        seg.host_edge = e;
        seg.t0 = edge_param_of_vertex(e, a.vertex);
        seg.t1 = edge_param_of_vertex(e, b.vertex);
      }
    } else if (a.vertex >= 0 && b.edge >= 0) {
      const auto& ed = s.edge(b.edge);
      if (ed.v0 == a.vertex || ed.v1 == a.vertex) {
        seg.host_edge = b.edge;
        seg.t0 = edge_param_of_vertex(b.edge, a.vertex);
        seg.t1 = b.edge_t;
      }
    } else if (b.vertex >= 0 && a.edge >= 0) {
      const auto& ed = s.edge(a.edge);
      if (ed.v0 == b.vertex || ed.v1 == b.vertex) {
        seg.host_edge = a.edge;
        seg.t0 = a.edge_t;
        seg.t1 = edge_param_of_vertex(a.edge, b.vertex);
      }
    } else if (a.edge >= 0 && b.edge >= 0 && a.edge == b.edge) {
      seg.host_edge = a.edge;
      seg.t0 = a.edge_t;
      seg.t1 = b.edge_t;
    }

    if (seg.host_edge < 0) seg.host_face = segment_host_face(s, a.sp, b.sp);
    cs.segs.push_back(seg);
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Planar subdivision of a single face by its curve chords.

struct PlanarGraph {
  std::vector<Vec2> pos;
  std::vector<std::array<int, 2>> edges;

  void add_edge(int u, int v) {
    if (u == v) return;
    for (const auto& e : edges)
      if ((e[0] == u && e[1] == v) || (e[0] == v && e[1] == u)) return;
    edges.push_back({u, v});
  }
};

// Extracts bounded faces (positive area cycles, interior kept on the left).
std::vector<std::vector<int>> trace_planar_faces(const PlanarGraph& g) {
  int ne = static_cast<int>(g.edges.size());
  // Directed half-edges: 2*i = (e0->e1), 2*i+1 = (e1->e0).
  auto he_tail = [&](int h) { return g.edges[h / 2][h % 2 == 0 ? 0 : 1]; };
  auto he_head = [&](int h) { return g.edges[h / 2][h % 2 == 0 ? 1 : 0]; };

  std::vector<std::vector<std::pair<double, int>>> outgoing(g.pos.size());
  for (int h = 0; h < 2 * ne; ++h) {
    int u = he_tail(h), v = he_head(h);
    Vec2 d = g.pos[v] - g.pos[u];
    outgoing[u].emplace_back(std::atan2(d.y, d.x), h);
  }
  for (auto& out : outgoing) std::sort(out.begin(), out.end());

  auto next_he = [&](int h) {
    int u = he_tail(h), v = he_head(h);
    Vec2 d = g.pos[u] - g.pos[v];
    double rev = std::atan2(d.y, d.x);
    const auto& out = outgoing[v];
    int best = -1;
    double best_angle = 0;
    for (const auto& [ang, oid] : out) {
      if (ang < rev - 1e-12 && (best < 0 || ang > best_angle)) {
        best = oid;
        best_angle = ang;
      }
    }
    if (best < 0)
      for (const auto& [ang, oid] : out)
        if (best < 0 || ang > best_angle) {
          best = oid;
          best_angle = ang;
        }
    return best;
  };

  std::vector<char> used(2 * ne, 0);
  std::vector<std::vector<int>> cycles;
  for (int h0 = 0; h0 < 2 * ne; ++h0) {
    if (used[h0]) continue;
    std::vector<int> cycle;
    int h = h0;
    int guard = 0;
    while (!used[h]) {
      used[h] = 1;
      cycle.push_back(he_tail(h));
      h = next_he(h);
      if (h < 0 || ++guard > 4 * ne + 8) break;
    }
    if (h == h0 && cycle.size() >= 3) cycles.push_back(std::move(cycle));
  }

  std::vector<std::vector<int>> faces;
  for (auto& cyc : cycles) {
    std::vector<Vec2> poly;
    for (int v : cyc) poly.push_back(g.pos[v]);
    if (polygon_area(poly) > 0) faces.push_back(std::move(cyc));
  }
  return faces;
}

struct EdgeIntervals {
  std::vector<std::pair<double, double>> covered;  // sorted, merged

  void add(double t0, double t1) {
    if (t0 > t1) std::swap(t0, t1);
    covered.emplace_back(t0, t1);
  }
  void normalize() {
    std::sort(covered.begin(), covered.end());
    std::vector<std::pair<double, double>> merged;
    for (auto& iv : covered) {
      if (!merged.empty() && iv.first <= merged.back().second + 1e-12)
        merged.back().second = std::max(merged.back().second, iv.second);
      else
        merged.push_back(iv);
    }
    covered = std::move(merged);
  }
  std::vector<std::pair<double, double>> gaps() const {
    std::vector<std::pair<double, double>> out;
    double at = 0;
    for (auto& iv : covered) {
      if (iv.first > at) out.emplace_back(at, iv.first);
      at = std::max(at, iv.second);
    }
    if (at < 1) out.emplace_back(at, 1.0);
    return out;
  }
};

}  // namespace

// ---------------------------------------------------------------------------

MinimalAntipodalPair minimal_antipodal_pair(const TriSurface& s,
                                            const GeodesicPath& gamma,
                                            const Involution& inv,
                                            int resolution) {
  if (resolution < 2)
    raise(ErrorCode::InvalidArgument, "resolution must be at least 2");
  if (gamma.points.size() < 2)
    raise(ErrorCode::InvalidArgument, "curve must have positive length");

  std::vector<Vec3> poly;
  poly.reserve(gamma.points.size());
  for (const auto& p : gamma.points) poly.push_back(s.embed(p));
  std::vector<double> cum(poly.size(), 0);
  for (size_t i = 1; i < poly.size(); ++i)
    cum[i] = cum[i - 1] + dist(poly[i - 1], poly[i]);
  const double L = cum.back();

  auto project = [&](const Vec3& x) {
    double best = 1e300, best_s = 0;
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
      Vec3 ab = poly[i + 1] - poly[i];
      double len2 = norm2(ab);
      double t = len2 > 0 ? std::clamp(dot(x - poly[i], ab) / len2, 0.0, 1.0) : 0.0;
      Vec3 q = poly[i] + ab * t;
      double d = dist(x, q);
      if (d < best) {
        best = d;
        best_s = cum[i] + t * std::sqrt(len2);
      }
    }
    return std::make_pair(best, best_s);
  };

  const double on_eps = s.eps_point();
  MinimalAntipodalPair best;
  bool have = false;
  for (int i = 0; i < resolution; ++i) {
    double si = L * i / (resolution - 1);
    SurfacePoint u = point_along(s, gamma, si);
    SurfacePoint iu = inv.apply(u);
    auto [d_on, s_proj] = project(s.embed(iu));
    if (d_on > on_eps) continue;
    double d = exact_distance(s, u, iu).length;
    ++best.qualifying_samples;
    if (!have || d < best.distance - 1e-15 * std::max(1.0, L)) {
      best.u = u;
      best.v = iu;
      best.distance = d;
      best.s_u = si;
      best.s_v = s_proj;
      have = true;
    }
  }
  if (!have)
    raise(ErrorCode::Internal,
          "no antipodal pair found on the curve (endpoints should qualify)");
  return best;
}

ClosedCurve make_closed_curve(const TriSurface& s,
                              std::vector<SurfacePoint> points) {
  if (points.size() < 3)
    raise(ErrorCode::InvalidArgument, "closed curve needs at least 3 points");
  if (!s.same_point(points.front(), points.back()))
    raise(ErrorCode::InvalidArgument, "curve is not closed");
  points.back() = points.front();

  // Drop consecutive duplicates, then close the loop exactly once.
  std::vector<SurfacePoint> clean;
  for (const auto& p : points) {
    if (clean.empty() || !s.same_point(clean.back(), p)) clean.push_back(p);
  }
  if (s.same_point(clean.front(), clean.back()))
    clean.back() = clean.front();
  else
    clean.push_back(clean.front());
  if (clean.size() < 4)
    raise(ErrorCode::InvalidArgument, "closed curve is degenerate");

  ClosedCurve c;
  c.points = std::move(clean);
  for (const auto& p : c.points) c.embedded.push_back(s.embed(p));

  // Simplicity: non-adjacent segments must stay eps apart.
  int m = c.segment_count();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // cyclically adjacent
      double d = segment_segment_distance(c.embedded[i], c.embedded[i + 1],
                                          c.embedded[j], c.embedded[j + 1]);
      if (d <= s.eps_point())
        raise(ErrorCode::SimplicityViolation,
              "curve segments " + std::to_string(i) + " and " +
                  std::to_string(j) + " intersect");
    }
  }
  return c;
}

ClosedCurve build_jordan_curve(const TriSurface& s, const GeodesicPath& sub_arc,
                               const Involution& inv) {
  if (sub_arc.points.size() < 2)
    raise(ErrorCode::InvalidArgument, "arc must have positive length");
  const SurfacePoint& u = sub_arc.points.front();
  const SurfacePoint& v = sub_arc.points.back();
  if (!s.same_point(inv.apply(u), v))
    raise(ErrorCode::InvalidArgument,
          "arc endpoints are not an antipodal pair");

  std::vector<SurfacePoint> pts = sub_arc.points;
  // Image arc runs from I(u)=v back to I(v)=u.
  for (size_t i = 1; i + 1 < sub_arc.points.size(); ++i)
    pts.push_back(inv.apply(sub_arc.points[i]));
  pts.push_back(u);

  ClosedCurve c = make_closed_curve(s, std::move(pts));
  c.junction_u = 0;
  c.junction_v = static_cast<int>(sub_arc.points.size()) - 1;
  return c;
}

std::array<int, 2> RegionSplit::region_fragment_count() const {
  std::array<int, 2> out{0, 0};
  for (const auto& f : fragments_)
    if (f.region >= 0) out[f.region]++;
  return out;
}

int RegionSplit::region_of(const SurfacePoint& p) const {
  const TriSurface& s = *surface_;
  SurfacePoint cp = s.canonical(p);
  Vec3 x = s.embed(cp);

  double on_eps = std::max(10.0 * s.eps_point(), 1e-12 * s.bbox_diag());
  for (size_t i = 0; i + 1 < curve_points_.size(); ++i)
    if (point_segment_distance(x, curve_points_[i], curve_points_[i + 1]) <= on_eps)
      return -1;

  FaceChart chart = face_chart(s, cp.face);
  Vec2 p2 = chart.to2d(x);
  for (int fi : face_fragments_[cp.face]) {
    const Fragment& fr = fragments_[fi];
    if (fr.whole_face) return fr.region;
    if (point_in_polygon(p2, fr.polygon)) {
      if (!fr.hole.empty() && point_in_polygon(p2, fr.hole)) continue;
      return fr.region;
    }
  }
  return -1;
}

std::string RegionSplit::to_json() const {
  nlohmann::json j;
  auto counts = region_fragment_count();
  j["regions"] = 2;
  j["region_fragments"] = {counts[0], counts[1]};
  j["region_areas"] = {region_area_[0], region_area_[1]};
  j["region_whole_faces"] = {region_whole_faces_[0], region_whole_faces_[1]};
  return j.dump(2);
}

RegionSplit classify_regions(const TriSurface& s, const ClosedCurve& curve) {
  CurveStructure cs = analyze_curve(s, curve);
  const int nf = s.face_count();

  // Gather per-face chords and per-edge covered intervals.
  std::vector<std::vector<int>> face_chords(nf);
  std::map<int, EdgeIntervals> edge_cover;
  for (int i = 0; i < static_cast<int>(cs.segs.size()); ++i) {
    const CurveSeg& seg = cs.segs[i];
    if (seg.host_edge >= 0)
      edge_cover[seg.host_edge].add(seg.t0, seg.t1);
    else
      face_chords[seg.host_face].push_back(i);
  }
  for (auto& [e, iv] : edge_cover) iv.normalize();

  // Per-face boundary nodes: curve nodes sitting on the face's edges/corners.
  // Collected per edge first, then distributed to both incident faces.
  std::vector<std::vector<std::pair<double, int>>> edge_nodes(s.edge_count());
  for (int i = 0; i < static_cast<int>(cs.nodes.size()); ++i) {
    const CurveNode& n = cs.nodes[i];
    if (n.edge >= 0) edge_nodes[n.edge].emplace_back(n.edge_t, i);
  }

  RegionSplit split;
  split.surface_ = &s;
  split.curve_points_ = curve.embedded;
  split.face_fragments_.assign(nf, {});

  auto add_fragment = [&](Fragment fr) {
    int id = static_cast<int>(split.fragments_.size());
    split.face_fragments_[fr.face].push_back(id);
    split.fragments_.push_back(std::move(fr));
    return id;
  };

  for (int f = 0; f < nf; ++f) {
    const auto& fv = s.face(f);
    FaceChart chart = face_chart(s, f);
    std::array<Vec2, 3> c2{chart.to2d(s.vertex(fv[0])), chart.to2d(s.vertex(fv[1])),
                           chart.to2d(s.vertex(fv[2]))};

    bool has_side_points = false;
    for (int k = 0; k < 3; ++k)
      if (!edge_nodes[s.face_edge(f, k)].empty()) has_side_points = true;

    if (face_chords[f].empty()) {
      Fragment fr;
      fr.face = f;
      fr.polygon = {c2[0], c2[1], c2[2]};
      fr.whole_face = true;
      add_fragment(fr);
      continue;
    }

    // Detect the loop-in-face case: chords whose endpoints are all interior.
    bool all_interior = true;
    for (int si : face_chords[f]) {
      const CurveSeg& seg = cs.segs[si];
      for (int nidx : {seg.a, seg.b}) {
        const CurveNode& n = cs.nodes[nidx];
        if (n.vertex >= 0 || n.edge >= 0) all_interior = false;
      }
    }
    if (all_interior && !has_side_points) {
      // One closed loop strictly inside the face.
      std::vector<Vec2> loop;
      std::map<int, int> next;
      for (int si : face_chords[f]) {
        const CurveSeg& seg = cs.segs[si];
        next[seg.a] = seg.b;
      }
      int start = next.begin()->first, at = start;
      for (size_t step = 0; step <= next.size(); ++step) {
        loop.push_back(chart.to2d(cs.nodes[at].pos));
        at = next.count(at) ? next[at] : -1;
        if (at == start || at < 0) break;
      }
      if (at != start || loop.size() != face_chords[f].size())
        raise(ErrorCode::RegionCountViolation,
              "face " + std::to_string(f) + " has a malformed interior loop");
      if (polygon_area(loop) < 0) std::reverse(loop.begin(), loop.end());

      Fragment inner;
      inner.face = f;
      inner.polygon = loop;
      add_fragment(inner);

      Fragment outer;
      outer.face = f;
      outer.polygon = {c2[0], c2[1], c2[2]};
      outer.hole = loop;
      add_fragment(outer);
      continue;
    }

    // General planar subdivision.
    PlanarGraph g;
    g.pos = {c2[0], c2[1], c2[2]};
    std::map<int, int> node_to_planar;  // curve node -> planar node

    auto planar_id = [&](int curve_node) -> int {
      auto it = node_to_planar.find(curve_node);
      if (it != node_to_planar.end()) return it->second;
      const CurveNode& n = cs.nodes[curve_node];
      int id = -1;
      if (n.vertex >= 0) {
        for (int k = 0; k < 3; ++k)
          if (fv[k] == n.vertex) id = k;
        if (id < 0)
          raise(ErrorCode::Internal, "curve vertex is not a corner of its face");
      } else if (n.edge >= 0) {
        int slot = -1;
        for (int k = 0; k < 3; ++k)
          if (s.face_edge(f, k) == n.edge) slot = k;
        if (slot < 0)
          raise(ErrorCode::Internal, "curve edge point is not on this face");
        const auto& ed = s.edge(n.edge);
        double t_side = ed.v0 == fv[slot] ? n.edge_t : 1.0 - n.edge_t;
        double tol = s.eps_point() / std::max(ed.length, 1e-30);
        if (t_side <= tol)
          id = slot;
        else if (t_side >= 1.0 - tol)
          id = (slot + 1) % 3;
        else {
          id = static_cast<int>(g.pos.size());
          g.pos.push_back(c2[slot] + (c2[(slot + 1) % 3] - c2[slot]) * t_side);
        }
      } else {
        id = static_cast<int>(g.pos.size());
        g.pos.push_back(chart.to2d(n.pos));
      }
      node_to_planar[curve_node] = id;
      return id;
    };

    for (int si : face_chords[f]) {
      const CurveSeg& seg = cs.segs[si];
      g.add_edge(planar_id(seg.a), planar_id(seg.b));
    }

    // Boundary subdivision.
    for (int k = 0; k < 3; ++k) {
      int e = s.face_edge(f, k);
      const auto& ed = s.edge(e);
      std::vector<std::pair<double, int>> side;  // (t_side, planar node)
      side.emplace_back(0.0, k);
      side.emplace_back(1.0, (k + 1) % 3);
      for (const auto& [t_edge, nidx] : edge_nodes[e]) {
        int pid = planar_id(nidx);
        if (pid == k || pid == (k + 1) % 3) continue;  // merged to a corner
        double t_side = ed.v0 == fv[k] ? t_edge : 1.0 - t_edge;
        side.emplace_back(t_side, pid);
      }
      std::sort(side.begin(), side.end());
      for (size_t i = 0; i + 1 < side.size(); ++i)
        g.add_edge(side[i].second, side[i + 1].second);
    }

    auto cycles = trace_planar_faces(g);
    if (cycles.empty())
      raise(ErrorCode::RegionCountViolation,
            "face " + std::to_string(f) + " produced no fragments");
    for (auto& cyc : cycles) {
      Fragment fr;
      fr.face = f;
      for (int v : cyc) fr.polygon.push_back(g.pos[v]);
      add_fragment(fr);
    }
  }

  // Fragment adjacency across mesh edges, skipping curve-covered intervals.
  std::vector<int> parent(split.fragments_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  auto locate_fragment = [&](int f, const Vec2& p2) -> int {
    int best = -1;
    double best_d = 1e300;
    for (int fi : split.face_fragments_[f]) {
      const Fragment& fr = split.fragments_[fi];
      if (fr.whole_face) return fi;
      bool in = point_in_polygon(p2, fr.polygon) &&
                (fr.hole.empty() || !point_in_polygon(p2, fr.hole));
      if (in) return fi;
      double d = polygon_boundary_distance(p2, fr.polygon);
      if (d < best_d) {
        best_d = d;
        best = fi;
      }
    }
    return best;
  };

  for (int e = 0; e < s.edge_count(); ++e) {
    const auto& ed = s.edge(e);
    if (ed.f0 < 0 || ed.f1 < 0) continue;
    EdgeIntervals iv;
    if (auto it = edge_cover.find(e); it != edge_cover.end()) iv = it->second;
    iv.normalize();
    double min_gap = 4.0 * s.eps_point() / std::max(ed.length, 1e-30);

    // Transversal crossing points subdivide the adjacency intervals: the
    // fragments on both sides of each crossing need their own probe.
    std::vector<std::pair<double, double>> gaps;
    for (auto gap : iv.gaps()) {
      std::vector<double> cuts{gap.first};
      for (const auto& [t, nidx] : edge_nodes[e])
        if (t > gap.first + min_gap && t < gap.second - min_gap)
          cuts.push_back(t);
      cuts.push_back(gap.second);
      std::sort(cuts.begin(), cuts.end());
      for (size_t i = 0; i + 1 < cuts.size(); ++i)
        gaps.emplace_back(cuts[i], cuts[i + 1]);
    }
    for (auto [g0, g1] : gaps) {
      if (g1 - g0 <= min_gap) continue;
      double tm = (g0 + g1) / 2;
      Vec3 x = s.vertex(ed.v0) * (1.0 - tm) + s.vertex(ed.v1) * tm;
      int frag[2];
      int faces[2] = {ed.f0, ed.f1};
      for (int side = 0; side < 2; ++side) {
        int f = faces[side];
        FaceChart chart = face_chart(s, f);
        Vec2 p2 = chart.to2d(x);
        Vec2 inward = chart.to2d(s.face_centroid(f)) - p2;
        p2 = p2 + inward * 1e-6;
        frag[side] = locate_fragment(f, p2);
      }
      if (frag[0] >= 0 && frag[1] >= 0) unite(frag[0], frag[1]);
    }
  }

  std::map<int, int> root_to_region;
  for (size_t i = 0; i < split.fragments_.size(); ++i) {
    int r = find(static_cast<int>(i));
    if (!root_to_region.count(r)) {
      int next_region = static_cast<int>(root_to_region.size());
      root_to_region[r] = next_region;
    }
  }
  if (root_to_region.size() != 2)
    raise(ErrorCode::RegionCountViolation,
          "curve split the surface into " +
              std::to_string(root_to_region.size()) + " regions (expected 2)");

  for (size_t i = 0; i < split.fragments_.size(); ++i) {
    Fragment& fr = split.fragments_[i];
    fr.region = root_to_region[find(static_cast<int>(i))];
    double area = fr.whole_face ? s.face_area(fr.face)
                                : std::abs(polygon_area(fr.polygon)) -
                                      (fr.hole.empty() ? 0.0 : std::abs(polygon_area(fr.hole)));
    split.region_area_[fr.region] += area;
    if (fr.whole_face) split.region_whole_faces_[fr.region]++;
  }
  return split;
}

std::string SwapReport::to_json() const {
  nlohmann::json j;
  j["samples"] = samples;
  j["swapped"] = swapped;
  j["skipped_on_curve"] = skipped_on_curve;
  j["passed"] = passed;
  j["justification"] = justification;
  return j.dump(2);
}

SwapReport check_region_swap(const TriSurface& s, const Involution& inv,
                             const RegionSplit& split, int nsamples,
                             uint64_t seed) {
  if (nsamples < 1) raise(ErrorCode::InvalidArgument, "nsamples must be >= 1");
  if (!inv.quick_precondition_ok())
    raise(ErrorCode::InvolutionCheckFailed,
          "involution must be involutive and fixed-point-free");

  SwapReport r;
  int attempts = 0;
  const int max_attempts = 40 * nsamples + 400;
  SplitMix64 rng(seed);
  while (r.swapped < nsamples && attempts < max_attempts) {
    Sampler sampler{Sampler::Strategy::FaceUniform, 1,
                    seed + 0x9E37ull * static_cast<uint64_t>(++attempts)};
    SurfacePoint p = sample_points(s, sampler)[0];
    int r1 = split.region_of(p);
    if (r1 < 0) {
      ++r.skipped_on_curve;
      continue;
    }
    SurfacePoint q = inv.apply(p);
    int r2 = split.region_of(q);
    if (r2 < 0) {
      ++r.skipped_on_curve;
      continue;
    }
    if (r1 == r2) {
      Vec3 x = s.embed(p);
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "sample (%.12g, %.12g, %.12g) stays in region %d under I",
                    x.x, x.y, x.z, r1);
      raise(ErrorCode::SwapViolation, buf);
    }
    ++r.swapped;
  }
  r.samples = r.swapped;
  r.passed = r.swapped >= nsamples;
  r.justification =
      "I maps the curve onto itself and has no fixed point; if it preserved "
      "one closed disk region, the fixed-point property of the disk would "
      "force I(z)=z inside it, so I must exchange the two regions.";
  return r;
}

std::string ChainReport::to_json() const {
  nlohmann::json j;
  j["a"] = a;
  j["b"] = b;
  j["c"] = c;
  j["d"] = d;
  j["rho_xy"] = rho_xy;
  j["rho_x_Ix"] = rho_x_ix;
  j["rho_y_Iy"] = rho_y_iy;
  return j.dump(2);
}

ChainReport equality_chain_check(const TriSurface& s, const Involution& inv,
                                 const SurfacePoint& x, const SurfacePoint& y,
                                 const SurfacePoint& t) {
  SurfacePoint ix = inv.apply(x), iy = inv.apply(y);
  double rho_xt = exact_distance(s, x, t).length;
  double rho_ty = exact_distance(s, t, y).length;
  double rho_xy = exact_distance(s, x, y).length;
  double rho_ixt = exact_distance(s, ix, t).length;
  double rho_tiy = exact_distance(s, t, iy).length;
  double rho_ixiy = exact_distance(s, ix, iy).length;
  double rho_xix = exact_distance(s, x, ix).length;
  double rho_yiy = exact_distance(s, y, iy).length;

  ChainReport r;
  r.a = rho_xt + rho_ty - rho_xy;
  r.b = rho_ixt + rho_tiy - rho_ixiy;
  r.c = rho_xt + rho_ixt - rho_xix;
  r.d = rho_ty + rho_tiy - rho_yiy;
  r.rho_xy = rho_xy;
  r.rho_x_ix = rho_xix;
  r.rho_y_iy = rho_yiy;
  return r;
}

SurfacePoint curve_path_intersection(const TriSurface& s,
                                     const ClosedCurve& curve,
                                     const GeodesicPath& path) {
  if (path.points.empty())
    raise(ErrorCode::InvalidArgument, "empty path");
  std::vector<Vec3> pp;
  for (const auto& p : path.points) pp.push_back(s.embed(p));
  if (pp.size() == 1) pp.push_back(pp[0]);

  double best = 1e300, best_param = 0;
  size_t best_seg = 0;
  for (size_t j = 0; j + 1 < pp.size(); ++j) {
    for (size_t i = 0; i + 1 < curve.embedded.size(); ++i) {
      auto [sc, tc] = segment_closest_params(pp[j], pp[j + 1],
                                             curve.embedded[i],
                                             curve.embedded[i + 1]);
      double d = dist(pp[j] + (pp[j + 1] - pp[j]) * sc,
                      curve.embedded[i] + (curve.embedded[i + 1] - curve.embedded[i]) * tc);
      if (d < best - 1e-15 ||
          (d < best + 1e-15 && (j < best_seg || (j == best_seg && sc < best_param)))) {
        best = d;
        best_seg = j;
        best_param = sc;
      }
    }
  }

  if (best_param <= 0) return path.points[best_seg];
  if (best_param >= 1) return path.points[best_seg + 1];
  Vec3 x = pp[best_seg] + (pp[best_seg + 1] - pp[best_seg]) * best_param;
  int f = segment_host_face(s, path.points[best_seg], path.points[best_seg + 1]);
  SurfacePoint sp;
  sp.face = f;
  sp.bary = s.bary_in_face(f, x);
  return s.canonical(sp);
}

}  // namespace geodiam
