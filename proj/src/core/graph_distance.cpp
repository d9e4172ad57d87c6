#include "graph_distance.hpp"

#include <algorithm>
#include <queue>
#include <vector>

#include "error.hpp"

namespace geodiam {

double graph_distance(const TriSurface& s, const SurfacePoint& p,
                      const SurfacePoint& q, int level) {
  if (level < 0 || level > 8)
    raise(ErrorCode::InvalidArgument, "subdivision level out of range");
  if (s.same_point(p, q)) return 0.0;

  // 3^level - 1 evenly spaced interior nodes per edge: level-(k+1) node sets
  // contain the level-k ones, so the bound is non-increasing in level.
  int per_edge = 1;
  for (int i = 0; i < level; ++i) per_edge *= 3;
  per_edge -= 1;
  const int nv = s.vertex_count();
  const int n_lattice = nv + s.edge_count() * per_edge;
  const int src = n_lattice, dst = n_lattice + 1;
  const int n = n_lattice + 2;

  std::vector<Vec3> pos(n);
  for (int v = 0; v < nv; ++v) pos[v] = s.vertex(v);
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto& ed = s.edge(e);
    for (int i = 1; i <= per_edge; ++i) {
      double t = static_cast<double>(i) / (per_edge + 1);
      pos[nv + e * per_edge + (i - 1)] =
          s.vertex(ed.v0) * (1.0 - t) + s.vertex(ed.v1) * t;
    }
  }
  pos[src] = s.embed(p);
  pos[dst] = s.embed(q);

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  auto link = [&](int a, int b) {
    double w = dist(pos[a], pos[b]);
    adj[a].emplace_back(b, w);
    adj[b].emplace_back(a, w);
  };

  std::vector<int> face_nodes;
  for (int f = 0; f < s.face_count(); ++f) {
    face_nodes.clear();
    const auto& fv = s.face(f);
    for (int v : fv) face_nodes.push_back(v);
    for (int k = 0; k < 3; ++k) {
      int e = s.face_edge(f, k);
      for (int i = 0; i < per_edge; ++i) face_nodes.push_back(nv + e * per_edge + i);
    }
    for (size_t a = 0; a < face_nodes.size(); ++a)
      for (size_t b = a + 1; b < face_nodes.size(); ++b)
        link(face_nodes[a], face_nodes[b]);
  }

  auto attach = [&](int node, const SurfacePoint& sp) {
    for (int f : s.incident_faces(sp)) {
      const auto& fv = s.face(f);
      for (int v : fv) link(node, v);
      for (int k = 0; k < 3; ++k) {
        int e = s.face_edge(f, k);
        for (int i = 0; i < per_edge; ++i) link(node, nv + e * per_edge + i);
      }
    }
  };
  attach(src, p);
  attach(dst, q);
  auto fa = s.incident_faces(p), fb = s.incident_faces(q);
  for (int f : fa)
    if (std::find(fb.begin(), fb.end(), f) != fb.end()) {
      link(src, dst);
      break;
    }

  std::vector<double> distv(n, 1e300);
  std::priority_queue<std::pair<double, int>,
                      std::vector<std::pair<double, int>>, std::greater<>>
      pq;
  distv[src] = 0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > distv[u]) continue;
    if (u == dst) break;
    for (auto [v, w] : adj[u]) {
      if (d + w < distv[v]) {
        distv[v] = d + w;
        pq.emplace(distv[v], v);
      }
    }
  }
  return distv[dst];
}

}  // namespace geodiam
