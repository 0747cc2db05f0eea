#include "xbgraph/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace xbgraph {

ProgramKind parse_program(std::string_view name) {
  if (name == "pagerank" || name == "pr") return ProgramKind::pagerank;
  if (name == "spmv") return ProgramKind::spmv;
  if (name == "bfs") return ProgramKind::bfs;
  if (name == "sssp") return ProgramKind::sssp;
  throw std::invalid_argument("unknown program '" + std::string(name) + "'");
}

std::string_view program_name(ProgramKind kind) {
  switch (kind) {
    case ProgramKind::pagerank: return "pagerank";
    case ProgramKind::spmv: return "spmv";
    case ProgramKind::bfs: return "bfs";
    case ProgramKind::sssp: return "sssp";
  }
  return "unknown";
}

SaluMode configure_salu(ProgramKind kind) {
  switch (kind) {
    case ProgramKind::pagerank:
    case ProgramKind::spmv:
      return SaluMode::add;
    case ProgramKind::bfs:
    case ProgramKind::sssp:
      return SaluMode::min;
  }
  throw std::invalid_argument("configure_salu: unknown program");
}

EngineCounters& EngineCounters::operator+=(const EngineCounters& o) {
  crossbar += o.crossbar;
  tiles_processed += o.tiles_processed;
  tiles_skipped += o.tiles_skipped;
  columns += o.columns;
  dst_chunk_writes += o.dst_chunk_writes;
  regi_reads += o.regi_reads;
  regi_writes += o.regi_writes;
  rego_reads += o.rego_reads;
  rego_writes += o.rego_writes;
  saturations += o.saturations;
  return *this;
}

void process_subgraph(GeCluster& ge, const SubgraphTile& tile, SaluMode mode, RegFile& regs,
                      std::span<const std::uint8_t> active_rows, const SlotObserver* observer) {
  const std::size_t rows = ge.rows();
  const std::size_t cols = ge.cols();
  if (regs.reg_in.size() != rows || regs.reg_out.size() != cols || regs.updated.size() != cols) {
    throw EngineError("process_subgraph: register file does not match the cluster geometry");
  }
  if (!active_rows.empty() && active_rows.size() != rows) {
    throw EngineError("process_subgraph: active row mask has wrong length");
  }

  if (mode == SaluMode::add) {
    ge.program(tile, CellMode::mac);
    const auto out = ge.mvm_mac(regs.reg_in, 0);
    regs.regi_reads += rows;
    for (std::size_t j = 0; j < cols; ++j) regs.reg_out[j] += out[j];
    regs.rego_reads += cols;
    regs.rego_writes += cols;
    return;
  }

  ge.program(tile, CellMode::add);
  for (std::size_t u = 0; u < rows; ++u) {
    if (!active_rows.empty() && !active_rows[u]) continue;
    const auto out = ge.row_add(u, regs.reg_in[u]);
    regs.regi_reads += 1;
    for (std::size_t j = 0; j < cols; ++j) {
      if (out[j] < regs.reg_out[j]) {
        regs.reg_out[j] = out[j];
        regs.updated[j] = 1;
      }
    }
    regs.rego_reads += cols;
    regs.rego_writes += cols;
    if (observer && *observer) (*observer)(u, regs.reg_out, regs.updated);
  }
}

ColumnSchedule build_schedule(const OrderedEdgeList& ol) {
  check_params(ol.params);
  ColumnSchedule s;
  s.params = ol.params;
  s.columns.resize(ol.params.column_count());
  const auto refs = index_tiles(ol);
  s.nonempty_tiles = refs.size();
  for (const auto& ref : refs) {
    const auto& first = ol.entries[ref.begin];
    s.columns[column_of(first.dst, ol.params)].push_back(ref);
  }
  return s;
}

void streaming_apply_column(IterationState& state, std::uint64_t column,
                            std::span<const TileRef> tiles, const OrderedEdgeList& ol,
                            const ExecutionRule& rule, bool skip_empty, GeCluster& ge,
                            RegFile& regs, EngineCounters& counters) {
  const auto& p = ol.params;
  const std::size_t rows = p.tile_rows();
  const std::size_t cols = p.tile_cols();
  const std::uint64_t dst_begin = column * cols;
  const std::uint64_t rows_per_column = p.tile_rows_per_column();
  if (column >= p.column_count()) throw EngineError("streaming_apply_column: column out of range");

  // Tiles must belong to this column and run top to bottom.
  std::uint64_t prev_src = 0;
  for (std::size_t k = 0; k < tiles.size(); ++k) {
    const auto corner = cell_of_global_id(tiles[k].order * p.tile_cells(), p);
    if (corner.col != dst_begin) {
      throw EngineError("streaming_apply_column: tile " + std::to_string(tiles[k].order) +
                        " does not belong to column " + std::to_string(column));
    }
    if (k > 0 && corner.row <= prev_src) {
      throw EngineError("streaming_apply_column: tiles out of order in column " +
                        std::to_string(column));
    }
    prev_src = corner.row;
  }

  if (rule.salu == SaluMode::add) {
    std::fill(regs.reg_out.begin(), regs.reg_out.end(), 0);
  } else {
    for (std::size_t j = 0; j < cols; ++j) regs.reg_out[j] = state.dst.prop[dst_begin + j];
  }
  std::fill(regs.updated.begin(), regs.updated.end(), 0);
  regs.rego_writes += cols;

  SubgraphTile tile;
  std::uint64_t processed = 0;
  auto run_tile = [&](const TileRef& ref) {
    densify(ol, ref, tile);
    const std::uint64_t src0 = tile.src_begin(p);
    std::span<const std::uint8_t> active;
    bool any_active = true;
    if (rule.use_active_list) {
      active = std::span<const std::uint8_t>(state.src.active).subspan(src0, rows);
      any_active = std::any_of(active.begin(), active.end(), [](auto a) { return a != 0; });
      if (!any_active && skip_empty) return;
    }
    std::copy_n(state.src.prop.begin() + static_cast<std::ptrdiff_t>(src0), rows,
                regs.reg_in.begin());
    regs.regi_writes += rows;
    if (any_active) {
      process_subgraph(ge, tile, rule.salu, regs, active);
    } else {
      // Programmed but no row is driven; an empty mask would mean "all rows".
      ge.program(tile, CellMode::add);
    }
    ++processed;
  };

  if (skip_empty) {
    for (const auto& ref : tiles) run_tile(ref);
  } else {
    std::size_t next = 0;
    for (std::uint64_t r = 0; r < rows_per_column; ++r) {
      const std::uint64_t order = subgraph_order(r * rows, dst_begin, p);
      if (next < tiles.size() && tiles[next].order == order) {
        run_tile(tiles[next++]);
      } else {
        run_tile(TileRef{order, 0, 0});
      }
    }
  }
  counters.tiles_processed += processed;
  counters.tiles_skipped += rows_per_column - processed;

  for (std::size_t j = 0; j < cols; ++j) {
    const std::uint64_t v = dst_begin + j;
    if (rule.salu == SaluMode::add) {
      std::uint64_t val = regs.reg_out[j];
      if (rule.has_constant && v < state.raw_vertices) val += rule.constant;
      if (val > kFxMax) {
        ++counters.saturations;
        val = kFxMax;
      }
      state.dst.prop[v] = static_cast<std::uint16_t>(val);
    } else {
      state.dst.prop[v] = static_cast<std::uint16_t>(std::min<std::uint64_t>(regs.reg_out[j], kInfinity));
      if (regs.updated[j]) state.dst.active[v] = 1;
    }
  }
  regs.rego_reads += cols;
  ++counters.dst_chunk_writes;
  ++counters.columns;
}

namespace {

double max_abs_delta(const VertexStateVector& a, const VertexStateVector& b) {
  double m = 0.0;
  for (std::size_t v = 0; v < a.size(); ++v) m = std::max(m, std::abs(a.value(v) - b.value(v)));
  return m;
}

}  // namespace

bool check_convergence(const IterationState& state, const ExecutionRule& rule, double epsilon) {
  if (rule.salu == SaluMode::min) return state.dst.active_count() == 0;
  if (state.src.size() != state.dst.size()) return false;
  return max_abs_delta(state.src, state.dst) < epsilon;
}

IterationOutcome run_iteration(IterationState& state, const OrderedEdgeList& ol,
                               const ColumnSchedule& schedule, const ExecutionRule& rule,
                               const EngineOptions& options, double epsilon) {
  const auto& p = ol.params;
  if (!(schedule.params == p)) throw EngineError("run_iteration: schedule built for other params");
  const std::size_t n = p.vertices;
  if (state.src.size() != n) throw EngineError("run_iteration: state length != padded V");

  auto& dst = state.dst;
  dst.format = state.src.format;
  dst.outdegree = state.src.outdegree;
  dst.active.assign(n, 0);
  if (rule.salu == SaluMode::min) {
    dst.prop = state.src.prop;
  } else {
    dst.prop.assign(n, 0);
  }

  const std::uint64_t column_count = schedule.columns.size();
  const unsigned workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(options.workers == 0 ? 1 : options.workers, 1,
                                std::max<std::uint64_t>(column_count, 1)));

  std::vector<EngineCounters> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      GeCluster ge(p, options.adc);
      RegFile regs(p.tile_rows(), p.tile_cols());
      for (std::uint64_t c = w; c < column_count; c += workers) {
        streaming_apply_column(state, c, schedule.columns[c], ol, rule, options.skip_empty, ge,
                               regs, partial[w]);
      }
      partial[w].crossbar += ge.counters();
      partial[w].regi_reads += regs.regi_reads;
      partial[w].regi_writes += regs.regi_writes;
      partial[w].rego_reads += regs.rego_reads;
      partial[w].rego_writes += regs.rego_writes;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  IterationOutcome outcome;
  for (const auto& c : partial) outcome.counters += c;
  outcome.max_delta = max_abs_delta(state.src, state.dst);
  outcome.active = state.dst.active_count();
  outcome.converged = check_convergence(state, rule, epsilon);

  state.counters += outcome.counters;
  ++state.iteration;
  std::swap(state.src, state.dst);
  return outcome;
}

}  // namespace xbgraph
