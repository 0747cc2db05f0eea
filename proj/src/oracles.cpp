#include "xbgraph/oracles.hpp"

#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace xbgraph {

namespace {

constexpr std::uint64_t kUnreached = 0xFFFF;

std::vector<std::vector<std::pair<VertexId, double>>> adjacency(const EdgeListGraph& g) {
  std::vector<std::vector<std::pair<VertexId, double>>> adj(g.num_vertices());
  for (const auto& e : g.edges()) adj[e.src].emplace_back(e.dst, e.weight);
  return adj;
}

}  // namespace

std::vector<double> dense_spmv(const EdgeListGraph& g, std::span<const double> x,
                               bool scale_by_outdegree) {
  if (x.size() != g.num_vertices()) throw std::invalid_argument("dense_spmv: length mismatch");
  const auto deg = out_degrees(g);
  std::vector<double> y(g.num_vertices(), 0.0);
  for (const auto& e : g.edges()) {
    const double scale = scale_by_outdegree ? 1.0 / deg[e.src] : 1.0;
    y[e.dst] += e.weight * scale * x[e.src];
  }
  return y;
}

std::vector<double> exact_pagerank(const EdgeListGraph& g, double damping, unsigned iterations) {
  const std::size_t n = g.num_vertices();
  const auto deg = out_degrees(g);
  std::vector<double> pr(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (unsigned it = 0; it < iterations; ++it) {
    std::fill(next.begin(), next.end(), (1.0 - damping) / static_cast<double>(n));
    for (const auto& e : g.edges()) next[e.dst] += damping * pr[e.src] / deg[e.src];
    pr.swap(next);
  }
  return pr;
}

std::vector<std::uint32_t> exact_bfs(const EdgeListGraph& g, VertexId source) {
  if (source >= g.num_vertices()) throw std::out_of_range("exact_bfs: bad source");
  const auto adj = adjacency(g);
  std::vector<std::uint32_t> level(g.num_vertices(), kUnreached);
  std::queue<VertexId> q;
  level[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    for (const auto& [v, w] : adj[u]) {
      if (level[v] == kUnreached) {
        level[v] = level[u] + 1;
        q.push(v);
      }
    }
  }
  return level;
}

std::vector<std::uint64_t> exact_sssp(const EdgeListGraph& g, VertexId source) {
  if (source >= g.num_vertices()) throw std::out_of_range("exact_sssp: bad source");
  const auto adj = adjacency(g);
  constexpr std::uint64_t inf = ~std::uint64_t{0};
  std::vector<std::uint64_t> dist(g.num_vertices(), inf);
  using Item = std::pair<std::uint64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0;
  pq.emplace(0, source);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      if (w <= 0) throw std::invalid_argument("exact_sssp: weights must be positive");
      const std::uint64_t nd = d + static_cast<std::uint64_t>(w);
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  for (auto& d : dist) {
    if (d == inf) d = kUnreached;
  }
  return dist;
}

}  // namespace xbgraph
