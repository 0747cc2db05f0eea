#pragma once

#include <cstdint>

#include "xbgraph/graph.hpp"

namespace xbgraph {

// Uniform random directed graph with round(density * V^2) distinct edges
// (self-loops allowed). Weights are integers drawn from [1, max_weight].
// The output depends only on the arguments.
EdgeListGraph random_graph(std::uint32_t vertices, double density, std::uint64_t seed,
                           std::uint32_t max_weight = 1);

// Same, with an expected out-degree instead of a density.
EdgeListGraph random_graph_degree(std::uint32_t vertices, double mean_degree, std::uint64_t seed,
                                  std::uint32_t max_weight = 1);

}  // namespace xbgraph
