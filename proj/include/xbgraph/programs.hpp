#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xbgraph/engine.hpp"
#include "xbgraph/graph.hpp"
#include "xbgraph/ordered_edges.hpp"

namespace xbgraph {

// Vertex programs expressible as SpMV on the crossbars.
//
//   program   processEdge                          reduce   active list
//   spmv      prop / outdegree * weight             sum      no
//   pagerank  r * prop / outdegree                  sum + (1-r)/V   no
//   bfs       1 + prop                              min      yes
//   sssp      weight + prop                         min      yes
//
// Multiplying programs pre-scale each cell (r/outdeg, weight/outdeg) and run
// as parallel MAC in Q0.16; adding programs store integer weights and run
// as row-serial add-op.
enum class EdgeRule { multiply_prescaled, add_weight };
enum class ReduceRule { sum, min };
enum class InitRule { uniform, given_vector, single_source };

struct VertexProgram {
  ProgramKind kind = ProgramKind::pagerank;
  std::string name;
  EdgeRule process_edge = EdgeRule::multiply_prescaled;
  ReduceRule reduce = ReduceRule::sum;
  InitRule init = InitRule::uniform;
  bool needs_active_list = false;
  FxFormat format = FxFormat::frac;
  double damping = 0.85;
  bool scale_by_outdegree = true;  // spmv only

  // Crossbar word for one edge. Throws std::invalid_argument for a zero
  // sssp weight.
  std::uint16_t cell_value(Fx16 weight, std::uint32_t src_outdegree,
                           std::uint64_t* clamped = nullptr) const;

  ExecutionRule rule(std::uint64_t raw_vertices) const;
};

VertexProgram make_program(ProgramKind kind, double damping = 0.85, bool scale_by_outdegree = true);

// Architectural configuration before padding.
struct ArchConfig {
  std::uint32_t crossbar_size = 8;
  std::uint32_t crossbars_per_ge = 32;
  std::uint32_t engines = 64;
  std::uint64_t block = 0;  // 0: one block spanning the graph
};

TilingParams tiling_for(std::uint64_t raw_vertices, const ArchConfig& arch);

struct SimOptions {
  ArchConfig arch;
  EngineOptions engine;
  double damping = 0.85;
  double epsilon = 7.0 / 65536.0;
  // 0 selects the program default: 100 for pagerank, 1 for spmv, V + 1 for
  // bfs/sssp.
  unsigned max_iter = 0;
  VertexId source = 0;
  bool spmv_scale_outdegree = true;
  // Test hook: perturbs every encoded cell word before the run.
  bool inject_fault = false;
};

struct IterationTrace {
  unsigned iteration = 0;
  std::uint64_t tiles_processed = 0;
  std::uint64_t tiles_skipped = 0;
  std::uint64_t ge_cycles = 0;
  std::size_t active = 0;
  double max_delta = 0.0;
};

struct RunResult {
  ProgramKind kind = ProgramKind::pagerank;
  TilingParams params;
  std::uint64_t raw_vertices = 0;
  std::uint64_t edges = 0;
  std::uint64_t nonempty_tiles = 0;
  std::uint64_t clamped_cells = 0;
  VertexStateVector state;  // final properties, padded length
  unsigned iterations = 0;
  bool converged = false;
  EngineCounters counters;
  std::vector<IterationTrace> trace;

  // Decoded properties of the real (unpadded) vertices.
  std::vector<double> values() const;
  std::vector<std::uint16_t> raw_values() const;
};

// Rewrites integer edge weights into program cell words.
OrderedEdgeList encode_cells(const OrderedEdgeList& weights, const VertexProgram& program,
                             std::span<const std::uint32_t> outdegree,
                             std::uint64_t* clamped = nullptr);

// Generic driver over a preprocessed list. `initial` seeds the property
// vector for spmv (frac words, raw vertex count long).
RunResult simulate(const OrderedEdgeList& weights, const VertexProgram& program,
                   const SimOptions& options,
                   std::span<const std::uint16_t> initial = {});

RunResult run_pagerank(const EdgeListGraph& g, const SimOptions& options);
// x must have one entry per vertex, each in [0, 1).
RunResult run_spmv(const EdgeListGraph& g, std::span<const double> x, const SimOptions& options);
RunResult run_bfs(const EdgeListGraph& g, const SimOptions& options);
RunResult run_sssp(const EdgeListGraph& g, const SimOptions& options);

// Integer weights when every weight is integral, otherwise Q0.16.
FxFormat spmv_weight_format(const EdgeListGraph& g);

}  // namespace xbgraph
