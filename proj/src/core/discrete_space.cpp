#include "discrete_space.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <json.hpp>

#include "error.hpp"

namespace geodiam {

DiscreteLengthSpace DiscreteLengthSpace::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(ErrorCode::ParseError, "space JSON is malformed");
  DiscreteLengthSpace sp;
  if (!j.contains("n") || !j.contains("edges") || !j.contains("involution"))
    raise(ErrorCode::ParseError, "space JSON needs n, edges, involution");
  sp.nodes = j["n"].get<int>();
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3)
      raise(ErrorCode::ParseError, "each edge must be [i, j, w]");
    sp.edges.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
  }
  for (const auto& x : j["involution"]) sp.involution.push_back(x.get<int>());
  return sp;
}

std::string DiscreteLengthSpace::to_json() const {
  nlohmann::json j;
  j["n"] = nodes;
  auto earr = nlohmann::json::array();
  for (const auto& e : edges) earr.push_back({e[0], e[1], e[2]});
  j["edges"] = earr;
  j["involution"] = involution;
  return j.dump(2);
}

void DiscreteLengthSpace::validate() const {
  if (nodes < 2) raise(ErrorCode::InvalidSpace, "space needs at least 2 nodes");
  if (static_cast<int>(involution.size()) != nodes)
    raise(ErrorCode::InvalidSpace, "involution size must equal node count");
  for (int i = 0; i < nodes; ++i) {
    int im = involution[i];
    if (im < 0 || im >= nodes)
      raise(ErrorCode::InvalidSpace, "involution entry out of range");
    if (involution[im] != i)
      raise(ErrorCode::InvalidSpace, "permutation is not involutive");
    if (im == i) raise(ErrorCode::InvalidSpace, "involution has a fixed point");
  }
  std::vector<std::vector<int>> adj(nodes);
  for (const auto& e : edges) {
    int a = static_cast<int>(e[0]), b = static_cast<int>(e[1]);
    if (a < 0 || a >= nodes || b < 0 || b >= nodes)
      raise(ErrorCode::InvalidSpace, "edge endpoint out of range");
    if (!(e[2] > 0)) raise(ErrorCode::InvalidSpace, "edge weights must be positive");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(nodes, 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  int count = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        bfs.push(v);
      }
  }
  if (count != nodes) raise(ErrorCode::InvalidSpace, "graph is disconnected");
}

std::string DiscreteCheckReport::to_json() const {
  nlohmann::json j;
  j["diameter"] = diameter;
  j["antipodal_diameter"] = antipodal_diameter;
  j["equal"] = equal;
  j["tolerance"] = tolerance;
  j["nodes"] = nodes;
  return j.dump(2);
}

DiscreteCheckReport discrete_theorem_check(const DiscreteLengthSpace& space) {
  space.validate();
  const int n = space.nodes;

  bool integer_weights = true;
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : space.edges) {
    int a = static_cast<int>(e[0]), b = static_cast<int>(e[1]);
    adj[a].emplace_back(b, e[2]);
    adj[b].emplace_back(a, e[2]);
    if (e[2] != std::floor(e[2])) integer_weights = false;
  }

  DiscreteCheckReport r;
  r.nodes = n;
  r.tolerance = integer_weights ? 0.0 : 1e-12;

  std::vector<double> dist_row(n);
  for (int src = 0; src < n; ++src) {
    std::fill(dist_row.begin(), dist_row.end(), 1e300);
    std::priority_queue<std::pair<double, int>,
                        std::vector<std::pair<double, int>>, std::greater<>>
        pq;
    dist_row[src] = 0;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist_row[u]) continue;
      for (auto [v, w] : adj[u])
        if (d + w < dist_row[v]) {
          dist_row[v] = d + w;
          pq.emplace(dist_row[v], v);
        }
    }
    for (int v = 0; v < n; ++v) r.diameter = std::max(r.diameter, dist_row[v]);
    r.antipodal_diameter =
        std::max(r.antipodal_diameter, dist_row[space.involution[src]]);
  }
  r.equal = std::abs(r.diameter - r.antipodal_diameter) <= r.tolerance;
  return r;
}

DiscreteLengthSpace cycle_space(int half) {
  if (half < 1) raise(ErrorCode::InvalidArgument, "cycle needs half >= 1");
  DiscreteLengthSpace sp;
  sp.nodes = 2 * half;
  for (int i = 0; i < sp.nodes; ++i)
    sp.edges.push_back({static_cast<double>(i),
                        static_cast<double>((i + 1) % sp.nodes), 1.0});
  for (int i = 0; i < sp.nodes; ++i)
    sp.involution.push_back((i + half) % sp.nodes);
  return sp;
}

DiscreteLengthSpace surface_graph_space(const TriSurface& s, bool unit_weights) {
  DiscreteLengthSpace sp;
  sp.nodes = s.vertex_count();
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto& ed = s.edge(e);
    sp.edges.push_back({static_cast<double>(ed.v0), static_cast<double>(ed.v1),
                        unit_weights ? 1.0 : ed.length});
  }
  for (int v = 0; v < s.vertex_count(); ++v) {
    Vec3 image = -s.vertex(v);
    int best = -1;
    double best_d = 1e300;
    for (int w = 0; w < s.vertex_count(); ++w) {
      double d = dist(image, s.vertex(w));
      if (d < best_d) {
        best_d = d;
        best = w;
      }
    }
    if (best_d > s.eps_point())
      raise(ErrorCode::InvalidSpace, "vertex set is not antipodally symmetric");
    sp.involution.push_back(best);
  }
  return sp;
}

}  // namespace geodiam
