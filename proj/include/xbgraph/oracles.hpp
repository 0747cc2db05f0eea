#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xbgraph/graph.hpp"

namespace xbgraph {

// Plain double-precision reference implementations.

// Synchronous power iteration from the uniform vector; dangling mass is
// dropped, matching the simulator.
std::vector<double> exact_pagerank(const EdgeListGraph& g, double damping, unsigned iterations);

// y[d] = sum over edges (s, d) of w * x[s] / outdeg(s), or w * x[s].
std::vector<double> dense_spmv(const EdgeListGraph& g, std::span<const double> x,
                               bool scale_by_outdegree = true);

// Hop counts; 0xFFFF for unreachable vertices.
std::vector<std::uint32_t> exact_bfs(const EdgeListGraph& g, VertexId source);

// Dijkstra over positive weights; 0xFFFF for unreachable vertices.
std::vector<std::uint64_t> exact_sssp(const EdgeListGraph& g, VertexId source);

}  // namespace xbgraph
