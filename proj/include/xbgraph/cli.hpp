#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "xbgraph/cost_model.hpp"
#include "xbgraph/programs.hpp"

#include "json.hpp"

namespace xbgraph::cli {

inline constexpr const char* kReportSchema = "xbgraph-report/1";

// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInternal = 3 };

// Bad user input: unreadable files, invalid settings, schema mismatches.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string program = "pagerank";
  std::string input;
  std::uint32_t crossbar_size = 8;
  std::uint32_t crossbars_per_ge = 32;
  std::uint32_t engines = 64;
  std::uint64_t block = 0;
  double damping = 0.85;
  double epsilon = 7.0 / 65536.0;
  unsigned max_iter = 0;
  std::uint32_t source = 0;
  unsigned workers = 1;
  bool skip_empty = true;
  std::uint64_t seed = 1;
  bool spmv_scale_outdegree = true;
  unsigned adc_bits = 0;
  double tolerance = -1.0;  // negative: program default
  bool inject_fault = false;
  CostParams cost;
  bool adcs_per_ge_set = false;  // otherwise ceil(N / 8)

  ArchConfig arch() const { return {crossbar_size, crossbars_per_ge, engines, block}; }
  SimOptions sim_options() const;
  CostParams effective_cost() const;
};

// Applies one key=value setting. Cost keys may carry a "cost." prefix.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat key=value file; '#' starts a comment. Throws ConfigError.
void load_config_file(const std::string& path, RunConfig& cfg);
// Cost constants only; keys as in set_cost_param.
void load_cost_file(const std::string& path, RunConfig& cfg);

// Throws ConfigError on an invalid setting.
void validate(const RunConfig& cfg);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

struct LoadedInput {
  EdgeListGraph graph;
  OrderedEdgeList ordered;
  bool from_binary = false;
  bool repreprocessed = false;
};

bool is_binary_file(const std::string& path);

// Reads an edge list or a preprocessed file. A preprocessed file whose
// params differ from the configuration is re-tiled.
LoadedInput load_input(const RunConfig& cfg);

struct RunOutput {
  RunConfig config;
  LoadedInput input;
  std::vector<double> x;  // spmv input, decoded
  unsigned x_shift = 0;   // spmv input scaled by 2^-x_shift
  RunResult result;
  CostReport cost;
  AdcBudget budget;
};

RunOutput execute(const RunConfig& cfg);

// FNV-1a over program, iteration count and the real vertices' state.
std::uint64_t result_digest(const RunResult& r);
std::string hex_digest(std::uint64_t d);

// Vertex values are listed when V is at most this, else only the digest.
inline constexpr std::uint64_t kMaxListedVertices = 4096;

nlohmann::ordered_json make_report(const RunOutput& out);

struct VerifyOutcome {
  bool integer = false;
  double linf = 0.0;
  std::uint64_t mismatches = 0;
  double tolerance = 0.0;
  bool passed = false;
  struct Offender {
    std::uint64_t vertex;
    double simulated;
    double reference;
  };
  std::vector<Offender> worst;  // largest errors first
};

VerifyOutcome verify_against_oracle(const RunOutput& out, std::size_t max_offenders = 10);
nlohmann::ordered_json verify_to_json(const VerifyOutcome& v);

void write_trace_csv(std::ostream& os, const RunResult& r);

// One header plus one row per report, sorted by density (stable).
// Throws ConfigError on a schema mismatch.
void write_report_csv(std::ostream& os, const std::vector<nlohmann::json>& reports);
nlohmann::json read_report(const std::string& path);

}  // namespace xbgraph::cli
