#include "xbgraph/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace xbgraph {

namespace {

// Uniform integer in [0, n) without relying on the library distribution,
// whose output differs between standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace

EdgeListGraph random_graph(std::uint32_t vertices, double density, std::uint64_t seed,
                           std::uint32_t max_weight) {
  if (vertices == 0) throw std::invalid_argument("random_graph: need at least one vertex");
  if (!(density >= 0.0 && density <= 1.0)) {
    throw std::invalid_argument("random_graph: density must lie in [0, 1]");
  }
  if (max_weight == 0) throw std::invalid_argument("random_graph: max_weight must be positive");

  const std::uint64_t cells = std::uint64_t{vertices} * vertices;
  const auto target = static_cast<std::uint64_t>(std::llround(density * static_cast<double>(cells)));
  std::mt19937_64 rng(seed);

  std::vector<std::uint64_t> picked;
  if (target * 2 > cells) {
    // Dense: keep each cell by a partial shuffle of the full index range.
    picked.resize(cells);
    for (std::uint64_t k = 0; k < cells; ++k) picked[k] = k;
    for (std::uint64_t k = 0; k < target; ++k) std::swap(picked[k], picked[k + draw(rng, cells - k)]);
    picked.resize(target);
  } else {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(target * 2);
    picked.reserve(target);
    while (picked.size() < target) {
      const std::uint64_t k = draw(rng, cells);
      if (seen.insert(k).second) picked.push_back(k);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(picked.size());
  for (auto k : picked) {
    const double w = max_weight == 1 ? 1.0 : static_cast<double>(1 + draw(rng, max_weight));
    edges.push_back({static_cast<VertexId>(k / vertices), static_cast<VertexId>(k % vertices), w});
  }
  return EdgeListGraph::from_edges(vertices, std::move(edges));
}

EdgeListGraph random_graph_degree(std::uint32_t vertices, double mean_degree, std::uint64_t seed,
                                  std::uint32_t max_weight) {
  if (vertices == 0) throw std::invalid_argument("random_graph: need at least one vertex");
  const double density = std::min(1.0, mean_degree / static_cast<double>(vertices));
  return random_graph(vertices, density, seed, max_weight);
}

}  // namespace xbgraph
