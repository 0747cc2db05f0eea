#include "xbgraph/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "xbgraph/oracles.hpp"

namespace xbgraph::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_unsigned(const std::string& key, const std::string& value, T max) {
  std::uint64_t v = 0;
  const auto* end = value.data() + value.size();
  const auto [p, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || p != end || v > max) {
    throw ConfigError("bad value '" + value + "' for " + key);
  }
  return static_cast<T>(v);
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size() || !std::isfinite(v)) {
    throw ConfigError("bad value '" + value + "' for " + key);
  }
  return v;
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw ConfigError("bad boolean '" + value + "' for " + key);
}

std::string fmt_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, p) : std::string("nan");
}

template <typename Fn>
void read_key_values(const std::string& path, Fn&& apply) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void set_cost(CostParams& p, const std::string& key, const std::string& value) {
  try {
    set_cost_param(p, key, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

SimOptions RunConfig::sim_options() const {
  SimOptions o;
  o.arch = arch();
  o.engine.workers = workers;
  o.engine.skip_empty = skip_empty;
  o.engine.adc.resolution_bits = adc_bits;
  o.engine.adc.rate_gsps = cost.adc_rate_gsps;
  o.damping = damping;
  o.epsilon = epsilon;
  o.max_iter = max_iter;
  o.source = source;
  o.spmv_scale_outdegree = spmv_scale_outdegree;
  o.inject_fault = inject_fault;
  return o;
}

CostParams RunConfig::effective_cost() const {
  CostParams p = cost;
  if (!adcs_per_ge_set) p.adcs_per_ge = std::max<std::uint32_t>(1, (crossbars_per_ge + 7) / 8);
  return p;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "program" || key == "p") cfg.program = value;
  else if (key == "input" || key == "i") cfg.input = value;
  else if (key == "C" || key == "crossbar_size") cfg.crossbar_size = parse_unsigned<std::uint32_t>(key, value, 0xFFFF);
  else if (key == "N" || key == "crossbars_per_ge") cfg.crossbars_per_ge = parse_unsigned<std::uint32_t>(key, value, 0xFFFF);
  else if (key == "G" || key == "engines") cfg.engines = parse_unsigned<std::uint32_t>(key, value, 0xFFFF);
  else if (key == "B" || key == "block") cfg.block = parse_unsigned<std::uint64_t>(key, value, 0xFFFFFFFFu);
  else if (key == "r" || key == "damping") cfg.damping = parse_real(key, value);
  else if (key == "eps" || key == "epsilon") cfg.epsilon = parse_real(key, value);
  else if (key == "max_iter") cfg.max_iter = parse_unsigned<unsigned>(key, value, 0xFFFFFFFFu);
  else if (key == "src" || key == "source") cfg.source = parse_unsigned<std::uint32_t>(key, value, 0xFFFFFFFFu);
  else if (key == "workers") cfg.workers = parse_unsigned<unsigned>(key, value, 1024);
  else if (key == "skip_empty") cfg.skip_empty = parse_flag(key, value);
  else if (key == "seed") cfg.seed = parse_unsigned<std::uint64_t>(key, value, ~std::uint64_t{0});
  else if (key == "spmv_scale_outdegree") cfg.spmv_scale_outdegree = parse_flag(key, value);
  else if (key == "adc_bits") cfg.adc_bits = parse_unsigned<unsigned>(key, value, 32);
  else if (key == "tol" || key == "tolerance") cfg.tolerance = parse_real(key, value);
  else {
    const std::string cost_key = key.rfind("cost.", 0) == 0 ? key.substr(5) : key;
    set_cost(cfg.cost, cost_key, value);
    if (cost_key == "adcs_per_ge") cfg.adcs_per_ge_set = true;
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  read_key_values(path, [&](const std::string& k, const std::string& v) { apply_setting(cfg, k, v); });
}

void load_cost_file(const std::string& path, RunConfig& cfg) {
  read_key_values(path, [&](const std::string& k, const std::string& v) {
    const std::string key = k.rfind("cost.", 0) == 0 ? k.substr(5) : k;
    set_cost(cfg.cost, key, v);
    if (key == "adcs_per_ge") cfg.adcs_per_ge_set = true;
  });
}

void validate(const RunConfig& cfg) {
  try {
    parse_program(cfg.program);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.input.empty()) throw ConfigError("no input file given");
  if (cfg.crossbar_size == 0 || cfg.crossbars_per_ge == 0 || cfg.engines == 0) {
    throw ConfigError("C, N and G must be positive");
  }
  if (!(cfg.damping > 0.0 && cfg.damping < 1.0)) throw ConfigError("damping r must lie in (0, 1)");
  if (cfg.epsilon < 0.0) throw ConfigError("epsilon must be non-negative");
  if (cfg.workers == 0) throw ConfigError("workers must be at least 1");
  try {
    xbgraph::validate(cfg.effective_cost());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  const CostParams c = cfg.effective_cost();
  nlohmann::ordered_json j;
  j["program"] = cfg.program;
  j["input"] = cfg.input;
  j["C"] = cfg.crossbar_size;
  j["N"] = cfg.crossbars_per_ge;
  j["G"] = cfg.engines;
  j["B"] = cfg.block;
  j["r"] = cfg.damping;
  j["epsilon"] = cfg.epsilon;
  j["max_iter"] = cfg.max_iter;
  j["source"] = cfg.source;
  j["workers"] = cfg.workers;
  j["skip_empty"] = cfg.skip_empty;
  j["seed"] = cfg.seed;
  j["spmv_scale_outdegree"] = cfg.spmv_scale_outdegree;
  j["adc_bits"] = cfg.adc_bits;
  j["tolerance"] = cfg.tolerance;
  j["inject_fault"] = cfg.inject_fault;
  j["cost"] = {{"t_read_ns", c.t_read_ns},         {"t_write_ns", c.t_write_ns},
               {"e_read_pj", c.e_read_pj},         {"e_write_nj", c.e_write_nj},
               {"t_ge_cycle_ns", c.t_ge_cycle_ns}, {"adc_rate_gsps", c.adc_rate_gsps},
               {"e_adc_pj", c.e_adc_pj},           {"e_reg_pj", c.e_reg_pj},
               {"t_reg_ns", c.t_reg_ns},           {"adcs_per_ge", c.adcs_per_ge},
               {"slices_serialized", c.slices_serialized},
               {"overlap_programming", c.overlap_programming}};
  return j;
}

bool is_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  return in.read(magic, 4) && std::string(magic, 4) == "XBGR";
}

LoadedInput load_input(const RunConfig& cfg) {
  const ProgramKind kind = parse_program(cfg.program);
  LoadedInput li;
  {
    std::ifstream probe(cfg.input);
    if (!probe) throw ConfigError("cannot read input " + cfg.input);
  }
  if (is_binary_file(cfg.input)) {
    li.from_binary = true;
    try {
      li.ordered = load_binary(cfg.input);
    } catch (const std::exception& e) {
      throw ConfigError(cfg.input + ": " + e.what());
    }
    li.graph = to_graph(li.ordered);
    const auto want = tiling_for(li.ordered.raw_vertices, cfg.arch());
    if (!(li.ordered.params == want)) {
      li.ordered = preprocess_edges(li.graph, want);
      li.repreprocessed = true;
    }
    return li;
  }
  try {
    li.graph = load_edge_list(cfg.input, true);
  } catch (const ParseError& e) {
    throw ConfigError(cfg.input + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.input + ": " + e.what());
  }
  const FxFormat fmt = kind == ProgramKind::spmv ? spmv_weight_format(li.graph) : FxFormat::integer;
  li.ordered = preprocess_edges(li.graph, tiling_for(li.graph.num_vertices(), cfg.arch()), fmt);
  return li;
}

RunOutput execute(const RunConfig& cfg) {
  validate(cfg);
  RunOutput out;
  out.config = cfg;
  out.input = load_input(cfg);
  const ProgramKind kind = parse_program(cfg.program);
  const std::uint64_t n = out.input.graph.num_vertices();
  if ((kind == ProgramKind::bfs || kind == ProgramKind::sssp) && cfg.source >= n) {
    throw ConfigError("source vertex " + std::to_string(cfg.source) + " out of range (V = " +
                      std::to_string(n) + ")");
  }
  if (kind == ProgramKind::sssp) {
    for (const auto& e : out.input.graph.edges()) {
      if (!(e.weight >= 1.0)) {
        throw ConfigError("sssp needs edge weights of at least 1 (edge " + std::to_string(e.src) +
                          " -> " + std::to_string(e.dst) + ")");
      }
    }
  }

  const SimOptions opts = cfg.sim_options();
  const VertexProgram program = make_program(kind, cfg.damping, cfg.spmv_scale_outdegree);
  std::vector<std::uint16_t> words;
  if (kind == ProgramKind::spmv) {
    // Seeded input in [0, 2^-shift), with shift picked so that no output can
    // leave the Q0.16 range.
    const auto deg = out_degrees(out.input.graph);
    std::vector<double> colsum(n, 0.0);
    for (const auto& e : out.input.graph.edges()) {
      const double w = cfg.spmv_scale_outdegree ? e.weight / deg[e.src] : e.weight;
      colsum[e.dst] += std::min(w, 1.0);
    }
    const double worst = n ? *std::max_element(colsum.begin(), colsum.end()) : 0.0;
    while (out.x_shift < 16 && std::ldexp(1.0, static_cast<int>(out.x_shift)) < worst) ++out.x_shift;
    std::mt19937_64 rng(cfg.seed);
    words.resize(n);
    out.x.resize(n);
    for (std::uint64_t v = 0; v < n; ++v) {
      words[v] = static_cast<std::uint16_t>((rng() >> 48) >> out.x_shift);
      out.x[v] = fx_decode({words[v], FxFormat::frac});
    }
  }
  out.result = simulate(out.input.ordered, program, opts, words);
  const CostParams cost = cfg.effective_cost();
  out.cost = tally_costs(out.result.counters, out.result.params, cost);
  out.budget = ge_cycle_budget(cost, cfg.crossbar_size, cfg.crossbars_per_ge);
  return out;
}

std::uint64_t result_digest(const RunResult& r) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ull;
  };
  for (char ch : program_name(r.kind)) mix(static_cast<std::uint8_t>(ch));
  for (int k = 0; k < 4; ++k) mix(static_cast<std::uint8_t>(r.iterations >> (8 * k)));
  for (int k = 0; k < 8; ++k) mix(static_cast<std::uint8_t>(r.raw_vertices >> (8 * k)));
  for (std::uint64_t v = 0; v < r.raw_vertices; ++v) {
    mix(static_cast<std::uint8_t>(r.state.prop[v]));
    mix(static_cast<std::uint8_t>(r.state.prop[v] >> 8));
    mix(r.state.active[v]);
  }
  return h;
}

std::string hex_digest(std::uint64_t d) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, d >>= 4) s[static_cast<std::size_t>(k)] = digits[d & 0xF];
  return s;
}

nlohmann::ordered_json make_report(const RunOutput& out) {
  const RunResult& r = out.result;
  const auto& p = r.params;
  const double total_tiles = static_cast<double>(p.total_subgraphs());
  const double tile_cells = static_cast<double>(p.tile_cells());

  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["program"] = std::string(program_name(r.kind));
  j["config"] = config_to_json(out.config);

  nlohmann::ordered_json g;
  g["vertices"] = r.raw_vertices;
  g["padded_vertices"] = p.vertices;
  g["block"] = p.block;
  g["edges"] = r.edges;
  g["density"] = out.input.graph.density();
  g["subgraphs"] = p.total_subgraphs();
  g["nonempty_subgraphs"] = r.nonempty_tiles;
  g["nonempty_fraction"] = total_tiles > 0 ? static_cast<double>(r.nonempty_tiles) / total_tiles : 0.0;
  g["cell_utilization"] =
      r.nonempty_tiles ? static_cast<double>(r.edges) / (static_cast<double>(r.nonempty_tiles) * tile_cells)
                       : 0.0;
  g["clamped_cells"] = r.clamped_cells;
  g["preprocessed_input"] = out.input.from_binary;
  j["graph"] = g;

  if (r.kind == ProgramKind::spmv) j["spmv_input_shift"] = out.x_shift;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["digest"] = hex_digest(result_digest(r));
  if (r.raw_vertices <= kMaxListedVertices) {
    if (r.state.format == FxFormat::integer) {
      j["values"] = r.raw_values();
    } else {
      j["values"] = r.values();
    }
  }

  const auto& c = r.counters;
  j["counters"] = {{"tiles_processed", c.tiles_processed},
                   {"tiles_skipped", c.tiles_skipped},
                   {"columns", c.columns},
                   {"dst_chunk_writes", c.dst_chunk_writes},
                   {"programs", c.crossbar.programs},
                   {"cell_writes", c.crossbar.cell_writes},
                   {"cell_reads", c.crossbar.cell_reads},
                   {"adc_conversions", c.crossbar.adc_conversions},
                   {"mac_ops", c.crossbar.mac_ops},
                   {"add_slots", c.crossbar.add_slots},
                   {"ge_cycles", c.ge_cycles()},
                   {"regi_reads", c.regi_reads},
                   {"regi_writes", c.regi_writes},
                   {"rego_reads", c.rego_reads},
                   {"rego_writes", c.rego_writes},
                   {"saturations", c.saturations}};

  const auto& k = out.cost;
  j["cost"] = {{"time_s", k.time_s},
               {"programming_time_s", k.programming_time_s},
               {"compute_time_s", k.compute_time_s},
               {"energy_programming_j", k.energy_programming_j},
               {"energy_compute_j", k.energy_compute_j},
               {"energy_adc_j", k.energy_adc_j},
               {"energy_register_j", k.energy_register_j},
               {"energy_total_j", k.energy_total_j},
               {"energy_per_edge_j", r.edges ? k.energy_total_j / static_cast<double>(r.edges) : 0.0}};
  j["adc_budget"] = {{"conversions_per_cycle", out.budget.conversions_per_cycle},
                     {"capacity_per_cycle", out.budget.capacity_per_cycle},
                     {"headroom", out.budget.headroom},
                     {"feasible", out.budget.feasible}};
  return j;
}

VerifyOutcome verify_against_oracle(const RunOutput& out, std::size_t max_offenders) {
  const RunResult& r = out.result;
  const auto& g = out.input.graph;
  const RunConfig& cfg = out.config;
  VerifyOutcome v;
  std::vector<double> ref;
  switch (r.kind) {
    case ProgramKind::pagerank:
      ref = exact_pagerank(g, cfg.damping, r.iterations);
      v.tolerance = 1e-3;
      break;
    case ProgramKind::spmv:
      ref = dense_spmv(g, out.x, cfg.spmv_scale_outdegree);
      v.tolerance = 1.0 / 4096.0;
      break;
    case ProgramKind::bfs: {
      const auto lv = exact_bfs(g, cfg.source);
      ref.assign(lv.begin(), lv.end());
      v.integer = true;
      break;
    }
    case ProgramKind::sssp: {
      const auto d = exact_sssp(g, cfg.source);
      ref.reserve(d.size());
      // Distances past the 16-bit range saturate in the simulator.
      for (auto x : d) ref.push_back(static_cast<double>(std::min<std::uint64_t>(x, kInfinity)));
      v.integer = true;
      break;
    }
  }
  if (cfg.tolerance >= 0.0) v.tolerance = cfg.tolerance;

  const auto sim = r.values();
  std::vector<VerifyOutcome::Offender> all;
  for (std::size_t u = 0; u < sim.size(); ++u) {
    const double err = std::abs(sim[u] - ref[u]);
    v.linf = std::max(v.linf, err);
    if (err > 0.0) {
      ++v.mismatches;
      all.push_back({u, sim[u], ref[u]});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::abs(a.simulated - a.reference) > std::abs(b.simulated - b.reference);
  });
  if (all.size() > max_offenders) all.resize(max_offenders);
  v.worst = std::move(all);
  v.passed = v.integer ? static_cast<double>(v.mismatches) <= v.tolerance : v.linf <= v.tolerance;
  return v;
}

nlohmann::ordered_json verify_to_json(const VerifyOutcome& v) {
  nlohmann::ordered_json j;
  j["metric"] = v.integer ? "mismatches" : "linf";
  j["value"] = v.integer ? static_cast<double>(v.mismatches) : v.linf;
  j["linf"] = v.linf;
  j["mismatches"] = v.mismatches;
  j["tolerance"] = v.tolerance;
  j["passed"] = v.passed;
  auto worst = nlohmann::ordered_json::array();
  for (const auto& o : v.worst) {
    worst.push_back({{"vertex", o.vertex}, {"simulated", o.simulated}, {"reference", o.reference}});
  }
  j["worst"] = worst;
  return j;
}

void write_trace_csv(std::ostream& os, const RunResult& r) {
  os << "iteration,tiles_processed,tiles_skipped,ge_cycles,active,max_delta\n";
  for (const auto& t : r.trace) {
    os << t.iteration << ',' << t.tiles_processed << ',' << t.tiles_skipped << ',' << t.ge_cycles
       << ',' << t.active << ',' << fmt_double(t.max_delta) << '\n';
  }
}

nlohmann::json read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read report " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || j["schema"] != kReportSchema) {
    throw ConfigError(path + ": not a " + std::string(kReportSchema) + " report");
  }
  return j;
}

void write_report_csv(std::ostream& os, const std::vector<nlohmann::json>& reports) {
  static const char* header =
      "program,vertices,edges,density,C,N,G,B,iterations,converged,nonempty_fraction,"
      "cell_utilization,tiles_processed,ge_cycles,time_s,energy_programming_j,energy_compute_j,"
      "energy_adc_j,energy_register_j,energy_total_j,energy_per_edge_j,digest";
  struct Row {
    double density;
    std::string line;
  };
  std::vector<Row> rows;
  for (const auto& j : reports) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != kReportSchema) {
      throw ConfigError("report schema mismatch");
    }
    try {
      const auto& g = j.at("graph");
      const auto& cfg = j.at("config");
      const auto& c = j.at("counters");
      const auto& k = j.at("cost");
      std::ostringstream line;
      line << j.at("program").get<std::string>() << ',' << g.at("vertices").get<std::uint64_t>() << ','
           << g.at("edges").get<std::uint64_t>() << ',' << fmt_double(g.at("density").get<double>())
           << ',' << cfg.at("C").get<std::uint64_t>() << ',' << cfg.at("N").get<std::uint64_t>() << ','
           << cfg.at("G").get<std::uint64_t>() << ',' << g.at("block").get<std::uint64_t>() << ','
           << j.at("iterations").get<std::uint64_t>() << ',' << (j.at("converged").get<bool>() ? 1 : 0)
           << ',' << fmt_double(g.at("nonempty_fraction").get<double>()) << ','
           << fmt_double(g.at("cell_utilization").get<double>()) << ','
           << c.at("tiles_processed").get<std::uint64_t>() << ',' << c.at("ge_cycles").get<std::uint64_t>();
      for (const char* key : {"time_s", "energy_programming_j", "energy_compute_j", "energy_adc_j",
                              "energy_register_j", "energy_total_j", "energy_per_edge_j"}) {
        line << ',' << fmt_double(k.at(key).get<double>());
      }
      line << ',' << j.at("digest").get<std::string>();
      rows.push_back({g.at("density").get<double>(), line.str()});
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("report schema mismatch: ") + e.what());
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.density < b.density; });
  os << header << '\n';
  for (const auto& r : rows) os << r.line << '\n';
}

}  // namespace xbgraph::cli
