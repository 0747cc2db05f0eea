#include "xbgraph/programs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xbgraph {

std::uint16_t VertexProgram::cell_value(Fx16 weight, std::uint32_t src_outdegree,
                                        std::uint64_t* clamped) const {
  switch (kind) {
    case ProgramKind::pagerank:
      return fx_encode_clamped(damping / std::max<std::uint32_t>(src_outdegree, 1), FxFormat::frac,
                               clamped)
          .raw;
    case ProgramKind::spmv: {
      const double w = fx_decode(weight);
      const double v = scale_by_outdegree ? w / std::max<std::uint32_t>(src_outdegree, 1) : w;
      return fx_encode_clamped(v, FxFormat::frac, clamped).raw;
    }
    case ProgramKind::bfs:
      return 1;
    case ProgramKind::sssp: {
      const auto w = fx_encode_clamped(fx_decode(weight), FxFormat::integer, clamped);
      if (w.raw == 0) throw std::invalid_argument("sssp: zero edge weight is not allowed");
      return w.raw;
    }
  }
  throw std::invalid_argument("cell_value: unknown program");
}

ExecutionRule VertexProgram::rule(std::uint64_t raw_vertices) const {
  ExecutionRule r;
  r.salu = configure_salu(kind);
  r.format = format;
  r.use_active_list = needs_active_list;
  if (kind == ProgramKind::pagerank) {
    r.has_constant = true;
    r.constant =
        fx_encode_clamped((1.0 - damping) / static_cast<double>(raw_vertices), FxFormat::frac).raw;
  }
  return r;
}

VertexProgram make_program(ProgramKind kind, double damping, bool scale_by_outdegree) {
  VertexProgram p;
  p.kind = kind;
  p.name = std::string(program_name(kind));
  switch (kind) {
    case ProgramKind::pagerank:
      if (!(damping > 0.0 && damping < 1.0)) {
        throw std::invalid_argument("pagerank: damping must lie in (0, 1)");
      }
      p.damping = damping;
      p.init = InitRule::uniform;
      break;
    case ProgramKind::spmv:
      p.scale_by_outdegree = scale_by_outdegree;
      p.init = InitRule::given_vector;
      break;
    case ProgramKind::bfs:
    case ProgramKind::sssp:
      p.process_edge = EdgeRule::add_weight;
      p.reduce = ReduceRule::min;
      p.init = InitRule::single_source;
      p.needs_active_list = true;
      p.format = FxFormat::integer;
      break;
  }
  return p;
}

TilingParams tiling_for(std::uint64_t raw_vertices, const ArchConfig& arch) {
  return pad_params(raw_vertices, arch.crossbar_size, arch.crossbars_per_ge, arch.engines,
                    arch.block);
}

std::vector<double> RunResult::values() const {
  std::vector<double> out(raw_vertices);
  for (std::size_t v = 0; v < raw_vertices; ++v) out[v] = state.value(v);
  return out;
}

std::vector<std::uint16_t> RunResult::raw_values() const {
  return {state.prop.begin(), state.prop.begin() + static_cast<std::ptrdiff_t>(raw_vertices)};
}

OrderedEdgeList encode_cells(const OrderedEdgeList& weights, const VertexProgram& program,
                             std::span<const std::uint32_t> outdegree, std::uint64_t* clamped) {
  OrderedEdgeList cells = weights;
  cells.weight_format = program.format;
  cells.clamped_weights = 0;
  for (auto& e : cells.entries) {
    const std::uint32_t deg = e.src < outdegree.size() ? outdegree[e.src] : 0;
    e.weight = program.cell_value({e.weight, weights.weight_format}, deg, &cells.clamped_weights);
  }
  if (clamped) *clamped += cells.clamped_weights;
  return cells;
}

namespace {

unsigned default_iterations(ProgramKind kind, std::uint64_t raw_vertices) {
  switch (kind) {
    case ProgramKind::pagerank: return 100;
    case ProgramKind::spmv: return 1;
    case ProgramKind::bfs:
    case ProgramKind::sssp:
      return static_cast<unsigned>(std::min<std::uint64_t>(raw_vertices + 1, 0xFFFFFFFFu));
  }
  return 1;
}

void corrupt(OrderedEdgeList& cells) {
  for (auto& e : cells.entries) {
    if (cells.weight_format == FxFormat::integer) {
      e.weight = static_cast<std::uint16_t>(std::min<std::uint32_t>(e.weight + 1u, kInfinity - 1));
    } else {
      e.weight ^= 0x4000;
    }
  }
}

}  // namespace

RunResult simulate(const OrderedEdgeList& weights, const VertexProgram& program,
                   const SimOptions& options, std::span<const std::uint16_t> initial) {
  const auto& p = weights.params;
  check_params(p);
  const std::uint64_t raw = weights.raw_vertices;
  if (raw == 0) throw std::invalid_argument("simulate: graph has no vertices");

  std::vector<std::uint32_t> outdeg(p.vertices, 0);
  for (const auto& e : weights.entries) ++outdeg[e.src];

  RunResult result;
  result.kind = program.kind;
  result.params = p;
  result.raw_vertices = raw;
  result.edges = weights.entries.size();

  OrderedEdgeList cells = encode_cells(weights, program, outdeg, &result.clamped_cells);
  if (options.inject_fault) corrupt(cells);
  const ExecutionRule rule = program.rule(raw);
  const ColumnSchedule schedule = build_schedule(cells);
  result.nonempty_tiles = schedule.nonempty_tiles;

  const std::uint16_t identity = rule.salu == SaluMode::min ? kInfinity : 0;
  IterationState st;
  st.raw_vertices = raw;
  st.src = VertexStateVector(p.vertices, program.format, identity);
  st.src.outdegree = outdeg;

  switch (program.init) {
    case InitRule::uniform: {
      const auto u = fx_encode_clamped(1.0 / static_cast<double>(raw), FxFormat::frac).raw;
      std::fill(st.src.prop.begin(), st.src.prop.begin() + static_cast<std::ptrdiff_t>(raw), u);
      break;
    }
    case InitRule::given_vector:
      if (initial.size() != raw) {
        throw std::invalid_argument("simulate: initial vector has " +
                                    std::to_string(initial.size()) + " entries, graph has " +
                                    std::to_string(raw) + " vertices");
      }
      std::copy(initial.begin(), initial.end(), st.src.prop.begin());
      break;
    case InitRule::single_source:
      if (options.source >= raw) {
        throw std::out_of_range("simulate: source vertex " + std::to_string(options.source) +
                                " out of range");
      }
      st.src.prop[options.source] = 0;
      st.src.active[options.source] = 1;
      break;
  }
  st.dst = st.src;

  const unsigned max_iter =
      options.max_iter ? options.max_iter : default_iterations(program.kind, raw);
  for (unsigned it = 0; it < max_iter; ++it) {
    const auto outcome = run_iteration(st, cells, schedule, rule, options.engine, options.epsilon);
    result.trace.push_back({st.iteration, outcome.counters.tiles_processed,
                            outcome.counters.tiles_skipped, outcome.counters.ge_cycles(),
                            outcome.active, outcome.max_delta});
    result.converged = outcome.converged;
    if (outcome.converged) break;
  }
  if (program.kind == ProgramKind::spmv) result.converged = true;
  result.iterations = st.iteration;
  result.counters = st.counters;
  result.state = std::move(st.src);
  return result;
}

RunResult run_pagerank(const EdgeListGraph& g, const SimOptions& options) {
  const auto program = make_program(ProgramKind::pagerank, options.damping);
  const auto ol = preprocess_edges(g, tiling_for(g.num_vertices(), options.arch));
  return simulate(ol, program, options);
}

FxFormat spmv_weight_format(const EdgeListGraph& g) {
  for (const auto& e : g.edges()) {
    if (std::floor(e.weight) != e.weight) return FxFormat::frac;
  }
  return FxFormat::integer;
}

RunResult run_spmv(const EdgeListGraph& g, std::span<const double> x, const SimOptions& options) {
  if (x.size() != g.num_vertices()) {
    throw std::invalid_argument("spmv: vector length " + std::to_string(x.size()) +
                                " does not match vertex count " +
                                std::to_string(g.num_vertices()));
  }
  std::vector<std::uint16_t> words(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) words[v] = fx_encode(x[v], FxFormat::frac).raw;
  const auto program = make_program(ProgramKind::spmv, 0.85, options.spmv_scale_outdegree);
  const auto ol =
      preprocess_edges(g, tiling_for(g.num_vertices(), options.arch), spmv_weight_format(g));
  return simulate(ol, program, options, words);
}

RunResult run_bfs(const EdgeListGraph& g, const SimOptions& options) {
  const auto ol = preprocess_edges(g, tiling_for(g.num_vertices(), options.arch));
  return simulate(ol, make_program(ProgramKind::bfs), options);
}

RunResult run_sssp(const EdgeListGraph& g, const SimOptions& options) {
  const auto ol = preprocess_edges(g, tiling_for(g.num_vertices(), options.arch));
  return simulate(ol, make_program(ProgramKind::sssp), options);
}

}  // namespace xbgraph
