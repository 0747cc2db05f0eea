#include "xbgraph/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace xbgraph {

void validate(const CostParams& p) {
  const double values[] = {p.t_read_ns, p.t_write_ns,    p.e_read_pj, p.e_write_nj, p.t_ge_cycle_ns,
                           p.adc_rate_gsps, p.e_adc_pj, p.e_reg_pj,  p.t_reg_ns};
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("cost params: every constant must be positive and finite");
    }
  }
  if (p.adcs_per_ge == 0) throw std::invalid_argument("cost params: adcs_per_ge must be positive");
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size()) {
    throw std::invalid_argument("cost params: bad value '" + value + "' for " + key);
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw std::invalid_argument("cost params: bad boolean '" + value + "' for " + key);
}

}  // namespace

void set_cost_param(CostParams& p, const std::string& key, const std::string& value) {
  if (key == "t_read_ns") p.t_read_ns = parse_double(key, value);
  else if (key == "t_write_ns") p.t_write_ns = parse_double(key, value);
  else if (key == "e_read_pj") p.e_read_pj = parse_double(key, value);
  else if (key == "e_write_nj") p.e_write_nj = parse_double(key, value);
  else if (key == "t_ge_cycle_ns") p.t_ge_cycle_ns = parse_double(key, value);
  else if (key == "adc_rate_gsps") p.adc_rate_gsps = parse_double(key, value);
  else if (key == "e_adc_pj") p.e_adc_pj = parse_double(key, value);
  else if (key == "e_reg_pj") p.e_reg_pj = parse_double(key, value);
  else if (key == "t_reg_ns") p.t_reg_ns = parse_double(key, value);
  else if (key == "adcs_per_ge") {
    const double v = parse_double(key, value);
    if (v < 1 || std::floor(v) != v) throw std::invalid_argument("cost params: adcs_per_ge must be a positive integer");
    p.adcs_per_ge = static_cast<unsigned>(v);
  } else if (key == "slices_serialized") p.slices_serialized = parse_bool(key, value);
  else if (key == "overlap_programming") p.overlap_programming = parse_bool(key, value);
  else throw std::invalid_argument("cost params: unknown key '" + key + "'");
}

CostReport tally_costs(const EngineCounters& c, const TilingParams& tiling, const CostParams& p) {
  validate(p);
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  const std::uint64_t fields[] = {c.crossbar.programs,  c.crossbar.cell_writes, c.crossbar.cell_reads,
                                  c.crossbar.adc_conversions, c.crossbar.mac_ops, c.crossbar.add_slots,
                                  c.regi_reads, c.regi_writes, c.rego_reads, c.rego_writes};
  for (auto f : fields) {
    if (f >= kLimit) throw std::invalid_argument("tally_costs: counter overflow");
  }
  if (c.crossbar.programs != c.tiles_processed) {
    throw std::invalid_argument("tally_costs: programmed tile count disagrees with processed tiles");
  }
  if (tiling.engines == 0 || tiling.crossbar_size == 0) {
    throw std::invalid_argument("tally_costs: invalid tiling");
  }

  CostReport r;
  r.tiles = c.crossbar.programs;
  r.ge_cycles = c.ge_cycles();
  r.cell_writes = c.crossbar.cell_writes;
  r.cell_reads = c.crossbar.cell_reads;
  r.adc_conversions = c.crossbar.adc_conversions;
  r.register_accesses = c.regi_reads + c.regi_writes + c.rego_reads + c.rego_writes;

  const double rows = static_cast<double>(tiling.crossbar_size) + 1.0;
  r.programming_time_s = static_cast<double>(r.tiles) * rows * p.t_write_ns * 1e-9;
  r.compute_time_s = static_cast<double>(r.ge_cycles) * p.t_ge_cycle_ns * 1e-9;
  const double serial = p.overlap_programming ? std::max(r.programming_time_s, r.compute_time_s)
                                              : r.programming_time_s + r.compute_time_s;
  r.time_s = serial / static_cast<double>(tiling.engines);

  r.energy_programming_j = static_cast<double>(r.cell_writes) * p.e_write_nj * 1e-9;
  r.energy_compute_j = static_cast<double>(r.cell_reads) * p.e_read_pj * 1e-12;
  r.energy_adc_j = static_cast<double>(r.adc_conversions) * p.e_adc_pj * 1e-12;
  r.energy_register_j = static_cast<double>(r.register_accesses) * p.e_reg_pj * 1e-12;
  r.energy_total_j =
      r.energy_programming_j + r.energy_compute_j + r.energy_adc_j + r.energy_register_j;
  return r;
}

AdcBudget ge_cycle_budget(const CostParams& p, std::uint32_t crossbar_size,
                          std::uint32_t crossbars_per_ge) {
  validate(p);
  const std::uint64_t per_adc = (crossbars_per_ge + p.adcs_per_ge - 1) / p.adcs_per_ge;
  AdcBudget b;
  b.conversions_per_cycle =
      std::uint64_t{crossbar_size} * per_adc * (p.slices_serialized ? 4u : 1u);
  b.capacity_per_cycle = static_cast<std::uint64_t>(std::llround(p.adc_rate_gsps * p.t_ge_cycle_ns));
  b.headroom = static_cast<std::int64_t>(b.capacity_per_cycle) -
               static_cast<std::int64_t>(b.conversions_per_cycle);
  b.feasible = b.headroom >= 0;
  return b;
}

}  // namespace xbgraph
