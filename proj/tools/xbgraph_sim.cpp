// xbgraph-sim: preprocess edge lists, run and verify vertex programs on the
// crossbar model, and tabulate reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "xbgraph/cli.hpp"
#include "xbgraph/synthetic.hpp"

using namespace xbgraph;
using xbgraph::cli::ConfigError;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("xbgraph");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("XBGRAPH_LOG")) {
    spdlog::set_level(spdlog::level::from_str(lvl));
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw ConfigError("cannot write " + path);
}

// Options shared by run and verify. Values land in strings so that only the
// flags actually given override the config file.
struct RunFlags {
  std::map<std::string, std::string> values;
  std::string config_file;
  std::string cost_file;
  std::string output;
  std::string trace;
  bool inject_fault = false;
  bool skip = true;
  CLI::Option* skip_opt = nullptr;
  bool no_scale = false;

  void attach(CLI::App* sub, bool with_tol) {
    auto add = [&](const std::string& flag, const std::string& key, const std::string& help) {
      sub->add_option(flag, values[key], help);
    };
    add("-p,--program", "program", "pagerank | spmv | bfs | sssp");
    add("-i,--input", "input", "edge list or preprocessed file");
    add("--C", "C", "crossbar size");
    add("--N", "N", "crossbars per engine");
    add("--G", "G", "graph engines");
    add("--B", "B", "block size (0: whole graph)");
    add("--r", "r", "pagerank damping");
    add("--eps", "eps", "convergence threshold");
    add("--max-iter", "max_iter", "iteration cap (0: program default)");
    add("--src", "src", "source vertex for bfs/sssp");
    add("--workers", "workers", "worker threads");
    add("--seed", "seed", "seed for the spmv input vector");
    add("--adc-bits", "adc_bits", "ADC resolution (0: exact)");
    if (with_tol) add("--tol", "tol", "tolerance (L-inf or mismatch count)");
    skip_opt = sub->add_flag("--skip-empty,!--no-skip-empty", skip, "skip empty subgraphs");
    sub->add_flag("--no-spmv-scale", no_scale, "spmv without out-degree scaling");
    sub->add_option("--config", config_file, "key=value settings file");
    sub->add_option("--cost", cost_file, "key=value cost constants");
    sub->add_option("-o,--output", output, "report path (default stdout)");
    sub->add_option("--trace", trace, "per-iteration CSV trace");
    sub->add_flag("--inject-fault", inject_fault, "corrupt encoded weights (test hook)");
  }

  cli::RunConfig build(CLI::App* sub) const {
    cli::RunConfig cfg;
    if (!config_file.empty()) cli::load_config_file(config_file, cfg);
    if (!cost_file.empty()) cli::load_cost_file(cost_file, cfg);
    static const std::map<std::string, std::string> flag_of = {
        {"program", "--program"}, {"input", "--input"}, {"C", "--C"},       {"N", "--N"},
        {"G", "--G"},             {"B", "--B"},         {"r", "--r"},       {"eps", "--eps"},
        {"max_iter", "--max-iter"}, {"src", "--src"},   {"workers", "--workers"},
        {"seed", "--seed"},       {"adc_bits", "--adc-bits"}, {"tol", "--tol"}};
    for (const auto& [key, value] : values) {
      const auto it = flag_of.find(key);
      if (it == flag_of.end()) continue;
      const auto* opt = sub->get_option_no_throw(it->second);
      if (opt && opt->count() > 0) cli::apply_setting(cfg, key, value);
    }
    if (skip_opt->count() > 0) cfg.skip_empty = skip;
    if (no_scale) cfg.spmv_scale_outdegree = false;
    if (inject_fault) cfg.inject_fault = true;
    return cfg;
  }
};

int cmd_preprocess(const std::string& input, const std::string& output, const cli::RunConfig& cfg) {
  if (!std::ifstream(input)) throw ConfigError("cannot read input " + input);
  EdgeListGraph g;
  try {
    g = load_edge_list(input, true);
  } catch (const ParseError& e) {
    throw ConfigError(input + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(input + ": " + e.what());
  }
  const auto ol = preprocess_edges(g, tiling_for(g.num_vertices(), cfg.arch()));
  if (ol.clamped_weights) spdlog::warn("{} weights clamped to the 16-bit integer range", ol.clamped_weights);
  std::ostringstream buf;
  write_binary(buf, ol);
  if (output.empty()) throw ConfigError("preprocess needs -o");
  write_text(output, buf.str());
  spdlog::info("preprocessed {} vertices, {} edges (padded V = {}, B = {})", g.num_vertices(),
               ol.entries.size(), ol.params.vertices, ol.params.block);
  return cli::kOk;
}

cli::RunOutput run_and_log(const cli::RunConfig& cfg, const RunFlags& flags) {
  auto out = cli::execute(cfg);
  const auto& r = out.result;
  spdlog::info("{}: {} iterations, converged={}, {} tiles processed, {} skipped", cfg.program,
               r.iterations, r.converged, r.counters.tiles_processed, r.counters.tiles_skipped);
  if (r.clamped_cells) spdlog::warn("{} crossbar cells clamped to the 16-bit range", r.clamped_cells);
  if (r.counters.saturations) spdlog::warn("{} destination writes saturated", r.counters.saturations);
  if (!out.budget.feasible) {
    spdlog::warn("ADC budget exceeded: {} conversions per cycle, capacity {}",
                 out.budget.conversions_per_cycle, out.budget.capacity_per_cycle);
  }
  if (!flags.trace.empty()) {
    std::ostringstream t;
    cli::write_trace_csv(t, r);
    write_text(flags.trace, t.str());
  }
  return out;
}

int cmd_run(const cli::RunConfig& cfg, const RunFlags& flags) {
  const auto out = run_and_log(cfg, flags);
  write_text(flags.output, cli::make_report(out).dump(2) + "\n");
  return cli::kOk;
}

int cmd_verify(const cli::RunConfig& cfg, const RunFlags& flags) {
  const auto out = run_and_log(cfg, flags);
  const auto v = cli::verify_against_oracle(out);
  auto report = cli::make_report(out);
  report["verify"] = cli::verify_to_json(v);
  write_text(flags.output, report.dump(2) + "\n");
  if (v.integer) {
    std::cerr << "verify " << cfg.program << ": " << v.mismatches << " mismatches (allowed "
              << v.tolerance << ") " << (v.passed ? "PASS" : "FAIL") << "\n";
  } else {
    std::cerr << "verify " << cfg.program << ": L-inf " << v.linf << " (tolerance " << v.tolerance
              << ") " << (v.passed ? "PASS" : "FAIL") << "\n";
  }
  if (!v.passed) {
    for (const auto& o : v.worst) {
      std::cerr << "  vertex " << o.vertex << ": simulated " << o.simulated << ", reference "
                << o.reference << "\n";
    }
    return cli::kVerifyFailed;
  }
  return cli::kOk;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& output) {
  std::vector<nlohmann::json> reports;
  for (const auto& path : inputs) reports.push_back(cli::read_report(path));
  std::ostringstream csv;
  cli::write_report_csv(csv, reports);
  write_text(output, csv.str());
  return cli::kOk;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"ReRAM crossbar graph accelerator simulator"};
  app.require_subcommand(1);

  cli::RunConfig pre_cfg;
  std::string pre_in, pre_out;
  auto* pre = app.add_subcommand("preprocess", "tile and order an edge list into a binary file");
  pre->add_option("-i,--input", pre_in, "edge list")->required();
  pre->add_option("-o,--output", pre_out, "binary output")->required();
  pre->add_option("--C", pre_cfg.crossbar_size, "crossbar size");
  pre->add_option("--N", pre_cfg.crossbars_per_ge, "crossbars per engine");
  pre->add_option("--G", pre_cfg.engines, "graph engines");
  pre->add_option("--B", pre_cfg.block, "block size (0: whole graph)");

  RunFlags run_flags, verify_flags;
  auto* run = app.add_subcommand("run", "simulate a vertex program and write a JSON report");
  run_flags.attach(run, false);
  auto* verify = app.add_subcommand("verify", "simulate and compare against a reference");
  verify_flags.attach(verify, true);

  std::vector<std::string> rep_in;
  std::string rep_out;
  auto* rep = app.add_subcommand("report", "tabulate JSON reports as CSV");
  rep->add_option("-i,--input", rep_in, "report files");
  rep->add_option("-o,--output", rep_out, "CSV path (default stdout)");

  std::uint32_t gen_n = 1024;
  double gen_density = -1.0, gen_degree = -1.0;
  std::uint64_t gen_seed = 1;
  std::uint32_t gen_wmax = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "write a uniform random edge list");
  gen->add_option("-n,--vertices", gen_n, "vertex count")->check(CLI::PositiveNumber);
  auto* dens = gen->add_option("--density", gen_density, "edges / V^2")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--degree", gen_degree, "mean out-degree")->excludes(dens);
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--max-weight", gen_wmax, "weights drawn from 1..max")->check(CLI::PositiveNumber);
  gen->add_option("-o,--output", gen_out, "edge list path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kUsage;
  }

  if (pre->parsed()) return cmd_preprocess(pre_in, pre_out, pre_cfg);
  if (run->parsed()) return cmd_run(run_flags.build(run), run_flags);
  if (verify->parsed()) return cmd_verify(verify_flags.build(verify), verify_flags);
  if (rep->parsed()) return cmd_report(rep_in, rep_out);
  if (gen->parsed()) {
    if (gen_density < 0.0 && gen_degree < 0.0) throw ConfigError("generate needs --density or --degree");
    const auto g = gen_density >= 0.0 ? random_graph(gen_n, gen_density, gen_seed, gen_wmax)
                                      : random_graph_degree(gen_n, gen_degree, gen_seed, gen_wmax);
    std::ostringstream text;
    write_edge_list(text, g, gen_wmax > 1);
    write_text(gen_out, text.str());
    return cli::kOk;
  }
  return cli::kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  try {
    return dispatch(argc, argv);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return cli::kUsage;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return cli::kUsage;
  } catch (const FxRangeError& e) {
    spdlog::error("{}", e.what());
    return cli::kUsage;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return cli::kUsage;
  } catch (const std::out_of_range& e) {
    spdlog::error("{}", e.what());
    return cli::kUsage;
  } catch (const std::exception& e) {
    spdlog::critical("internal error: {}", e.what());
    return cli::kInternal;
  }
}
