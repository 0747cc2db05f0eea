#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "xbgraph/graph.hpp"
#include "xbgraph/ordered_edges.hpp"
#include "xbgraph/tiling.hpp"

namespace testing {

using xbgraph::Edge;
using xbgraph::EdgeListGraph;

inline constexpr std::uint16_t M = 0xFFFF;

// Small deterministic generator helpers; seeds are explicit so a failure
// names its case.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng() % n; }
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  std::uint16_t word() { return static_cast<std::uint16_t>(rng() >> 48); }
  double unit() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
  bool coin(double p) { return unit() < p; }
};

// Random directed graph with about `edges` edges and integer weights in
// [wlo, whi].
inline EdgeListGraph random_graph(Gen& g, std::uint32_t n, std::size_t edges,
                                  std::uint32_t wlo = 1, std::uint32_t whi = 1) {
  std::vector<Edge> es;
  es.reserve(edges);
  for (std::size_t k = 0; k < edges; ++k) {
    es.push_back({static_cast<xbgraph::VertexId>(g.below(n)), static_cast<xbgraph::VertexId>(g.below(n)),
                  static_cast<double>(g.range(wlo, whi))});
  }
  return EdgeListGraph::from_edges(n, std::move(es));
}

// Four-vertex graph whose transition matrix is
//   [0 1/2 1 0; 1/3 0 0 1/2; 1/3 0 0 1/2; 1/3 1/2 0 0]
// (row = destination, column = source).
inline EdgeListGraph pagerank_demo() {
  return EdgeListGraph::from_edges(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 3}, {2, 0}, {3, 1}, {3, 2}});
}

// Shortest-path demo tile: sources 0..3, destinations 4..7 with
// W = [M 1 5 M; M M 3 1; M M M M; M M 1 M].
inline EdgeListGraph sssp_demo() {
  return EdgeListGraph::from_edges(8, {{0, 5, 1}, {0, 6, 5}, {1, 6, 3}, {1, 7, 1}, {3, 6, 1}});
}

// Tiling used by the 64-vertex worked example: C=4, N=2, G=2, B=32.
inline xbgraph::TilingParams fig_config() { return xbgraph::pad_params(64, 4, 2, 2, 32); }

// Brute-force global order: walk blocks column-major, then subgraphs
// column-major inside the block, then cells column-major inside the
// subgraph, numbering as we go.
inline std::vector<std::uint64_t> enumerate_order(const xbgraph::TilingParams& p) {
  const std::uint64_t V = p.vertices, B = p.block, R = p.tile_rows(), Cc = p.tile_cols();
  std::vector<std::uint64_t> id(V * V);
  std::uint64_t next = 0;
  for (std::uint64_t bj = 0; bj < V / B; ++bj)
    for (std::uint64_t bi = 0; bi < V / B; ++bi)
      for (std::uint64_t sj = 0; sj < B / Cc; ++sj)
        for (std::uint64_t si = 0; si < B / R; ++si)
          for (std::uint64_t cj = 0; cj < Cc; ++cj)
            for (std::uint64_t ci = 0; ci < R; ++ci) {
              const std::uint64_t i = bi * B + si * R + ci;
              const std::uint64_t j = bj * B + sj * Cc + cj;
              id[i * V + j] = next++;
            }
  return id;
}

}  // namespace testing
