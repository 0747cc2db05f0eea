#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "xbgraph/crossbar.hpp"
#include "xbgraph/ordered_edges.hpp"
#include "xbgraph/vertex_state.hpp"

namespace xbgraph {

enum class ProgramKind { pagerank, spmv, bfs, sssp };

// Throws std::invalid_argument for an unknown name.
ProgramKind parse_program(std::string_view name);
std::string_view program_name(ProgramKind kind);

// Reduction performed by the sALU.
enum class SaluMode { add, min };

SaluMode configure_salu(ProgramKind kind);

// What the engine needs to know about the running vertex program.
struct ExecutionRule {
  SaluMode salu = SaluMode::add;
  FxFormat format = FxFormat::frac;
  // Added once to every real destination (id < raw vertex count) when its
  // column is finalized.
  bool has_constant = false;
  std::uint16_t constant = 0;
  // Only active source rows are driven (add-op pattern).
  bool use_active_list = false;
};

// RegI holds the source chunk of the current subgraph, RegO the running
// reduction for the current destination chunk.
struct RegFile {
  std::vector<std::uint16_t> reg_in;
  std::vector<std::uint64_t> reg_out;
  std::vector<std::uint8_t> updated;
  std::uint64_t regi_reads = 0;
  std::uint64_t regi_writes = 0;
  std::uint64_t rego_reads = 0;
  std::uint64_t rego_writes = 0;

  RegFile() = default;
  RegFile(std::size_t rows, std::size_t cols) : reg_in(rows, 0), reg_out(cols, 0), updated(cols, 0) {}
};

struct EngineCounters {
  CrossbarCounters crossbar;
  std::uint64_t tiles_processed = 0;
  std::uint64_t tiles_skipped = 0;
  std::uint64_t columns = 0;
  std::uint64_t dst_chunk_writes = 0;
  std::uint64_t regi_reads = 0;
  std::uint64_t regi_writes = 0;
  std::uint64_t rego_reads = 0;
  std::uint64_t rego_writes = 0;
  std::uint64_t saturations = 0;

  // One GE cycle per MAC tile, one per driven row in add-op tiles.
  std::uint64_t ge_cycles() const { return crossbar.mac_ops + crossbar.add_slots; }

  EngineCounters& operator+=(const EngineCounters& o);
  friend bool operator==(const EngineCounters&, const EngineCounters&) = default;
};

struct IterationState {
  VertexStateVector src;
  VertexStateVector dst;
  std::uint64_t raw_vertices = 0;
  unsigned iteration = 0;
  EngineCounters counters;
};

struct EngineOptions {
  unsigned workers = 1;
  bool skip_empty = true;
  AdcModel adc;
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Called after each add-op time slot with the driven row and the RegO state.
using SlotObserver =
    std::function<void(std::size_t row, std::span<const std::uint64_t> reg_out,
                       std::span<const std::uint8_t> updated)>;

// Programs `ge` with `tile` and reduces it into regs.reg_out. RegI must
// already hold the tile's source chunk.
//   add: reg_out[j] += mvm(reg_in)[j]
//   min: for every active row u, in order, reg_out[j] = min(reg_out[j],
//        w(u,j) + reg_in[u]); columns that decrease are flagged in `updated`.
// An empty `active_rows` means every row is active.
void process_subgraph(GeCluster& ge, const SubgraphTile& tile, SaluMode mode, RegFile& regs,
                      std::span<const std::uint8_t> active_rows = {},
                      const SlotObserver* observer = nullptr);

// Non-empty tiles grouped by destination chunk; each column lists its tiles
// top to bottom (ascending source), which is their relative global order.
struct ColumnSchedule {
  TilingParams params;
  std::vector<std::vector<TileRef>> columns;
  std::uint64_t nonempty_tiles = 0;
};

ColumnSchedule build_schedule(const OrderedEdgeList& ol);

// Reduces one destination column and writes its dst chunk once.
void streaming_apply_column(IterationState& state, std::uint64_t column,
                            std::span<const TileRef> tiles, const OrderedEdgeList& ol,
                            const ExecutionRule& rule, bool skip_empty, GeCluster& ge,
                            RegFile& regs, EngineCounters& counters);

// Pre-swap convergence test on src (old) vs dst (new).
//   add: max |dst - src| < epsilon
//   min: no vertex active
bool check_convergence(const IterationState& state, const ExecutionRule& rule, double epsilon);

struct IterationOutcome {
  bool converged = false;
  double max_delta = 0.0;
  std::size_t active = 0;
  EngineCounters counters;  // this iteration only
};

// One synchronous iteration: every column is applied (in parallel over
// `options.workers`), convergence is evaluated, then dst becomes src.
// `ol` must hold program-encoded cell words.
IterationOutcome run_iteration(IterationState& state, const OrderedEdgeList& ol,
                               const ColumnSchedule& schedule, const ExecutionRule& rule,
                               const EngineOptions& options, double epsilon = 0.0);

}  // namespace xbgraph
