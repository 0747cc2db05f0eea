#pragma once

#include <cstdint>
#include <string>

#include "xbgraph/engine.hpp"
#include "xbgraph/tiling.hpp"

namespace xbgraph {

// Device constants. ReRAM read/write figures are per cell access; the ADC and
// register energies are not device-measured values and are configurable.
struct CostParams {
  double t_read_ns = 29.31;
  double t_write_ns = 50.88;
  double e_read_pj = 1.08;
  double e_write_nj = 3.91;
  double t_ge_cycle_ns = 64.0;
  double adc_rate_gsps = 1.0;
  double e_adc_pj = 2.0;
  double e_reg_pj = 0.5;   // per register word access
  double t_reg_ns = 0.25;  // reported only; not on the critical path
  unsigned adcs_per_ge = 1;
  // One conversion per slice crossbar instead of per logical bitline.
  bool slices_serialized = false;
  // Overlap crossbar programming with compute (double buffering).
  bool overlap_programming = false;
};

// Throws std::invalid_argument unless every constant is positive.
void validate(const CostParams& params);

// Sets one field by its key=value name; throws std::invalid_argument on an
// unknown key or unparsable value.
void set_cost_param(CostParams& params, const std::string& key, const std::string& value);

struct CostReport {
  double programming_time_s = 0.0;  // summed over tiles, before G-way division
  double compute_time_s = 0.0;      // summed over tiles, before G-way division
  double time_s = 0.0;

  double energy_programming_j = 0.0;
  double energy_compute_j = 0.0;
  double energy_adc_j = 0.0;
  double energy_register_j = 0.0;
  double energy_total_j = 0.0;

  std::uint64_t tiles = 0;
  std::uint64_t ge_cycles = 0;
  std::uint64_t cell_writes = 0;
  std::uint64_t cell_reads = 0;
  std::uint64_t adc_conversions = 0;
  std::uint64_t register_accesses = 0;
};

// Pure function of the counters. Crossbar rows are programmed in parallel, so
// a tile costs (C + 1) write latencies plus one GE cycle per compute step;
// the sum is divided across the G engines.
CostReport tally_costs(const EngineCounters& counters, const TilingParams& tiling,
                       const CostParams& params);

struct AdcBudget {
  std::uint64_t conversions_per_cycle = 0;
  std::uint64_t capacity_per_cycle = 0;
  bool feasible = false;
  // capacity - demand; negative is a deficit.
  std::int64_t headroom = 0;
};

// Conversions one ADC must finish inside a GE cycle, given the crossbars it
// serves, against rate * cycle time.
AdcBudget ge_cycle_budget(const CostParams& params, std::uint32_t crossbar_size,
                          std::uint32_t crossbars_per_ge);

}  // namespace xbgraph
