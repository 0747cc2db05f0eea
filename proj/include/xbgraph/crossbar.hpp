#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "xbgraph/ordered_edges.hpp"

namespace xbgraph {

// A 16-bit word is stored as four 4-bit cells, one per slice crossbar:
// raw = d3<<12 | d2<<8 | d1<<4 | d0. Index k of the arrays below is slice k.
inline constexpr int kSlices = 4;
inline constexpr int kDigitBits = 4;
inline constexpr std::uint8_t kDigitMax = 15;

using Digits = std::array<std::uint8_t, kSlices>;

constexpr Digits slice_word(std::uint16_t raw) {
  return {static_cast<std::uint8_t>(raw & 0xF), static_cast<std::uint8_t>((raw >> 4) & 0xF),
          static_cast<std::uint8_t>((raw >> 8) & 0xF), static_cast<std::uint8_t>((raw >> 12) & 0xF)};
}

constexpr std::uint16_t recompose(const Digits& d) {
  return static_cast<std::uint16_t>(d[0] | (d[1] << 4) | (d[2] << 8) | (d[3] << 12));
}

// Recombines the four per-slice bitline accumulators: D3<<12 + D2<<8 + D1<<4 + D0.
constexpr std::uint64_t shift_add(const std::array<std::uint64_t, kSlices>& d) {
  return (d[3] << 12) + (d[2] << 8) + (d[1] << 4) + d[0];
}

// resolution_bits == 0 models an exact converter.
struct AdcModel {
  unsigned resolution_bits = 0;
  double rate_gsps = 1.0;

  bool exact() const { return resolution_bits == 0; }
  // Rounds `value` to the nearest of 2^bits evenly spaced levels over
  // [0, full_scale].
  std::uint64_t convert(std::uint64_t value, std::uint64_t full_scale) const;
};

// One slice of one crossbar: (C + 1) x C digits, the last row is the bias row.
struct CellSlice {
  std::uint32_t size = 0;
  int slice = 0;
  std::vector<std::uint8_t> digits;

  std::uint8_t at(std::size_t row, std::size_t col) const { return digits[row * size + col]; }
};

// Per-crossbar slice set for a tile; crossbar c covers tile columns
// [c*C, (c+1)*C). Bias rows are zero.
std::vector<std::array<CellSlice, kSlices>> slice_matrix(const SubgraphTile& tile,
                                                         std::uint32_t crossbar_size);

enum class CellMode { mac, add };

struct CrossbarCounters {
  std::uint64_t programs = 0;
  std::uint64_t cell_writes = 0;
  std::uint64_t cell_reads = 0;
  std::uint64_t adc_conversions = 0;
  std::uint64_t mac_ops = 0;
  std::uint64_t add_slots = 0;

  CrossbarCounters& operator+=(const CrossbarCounters& o);
  friend bool operator==(const CrossbarCounters&, const CrossbarCounters&) = default;
};

class CrossbarError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The N*G crossbars that process one subgraph together. Functionally exact:
// every bitline sum is formed per slice from 4-bit digits and recombined by
// shift-and-add. Crossbars without edges are kept implicit (uniform fill) but
// are still counted as written and read.
class GeCluster {
 public:
  GeCluster(std::uint32_t crossbar_size, std::uint32_t crossbars_per_ge, std::uint32_t engines,
            AdcModel adc = {});
  explicit GeCluster(const TilingParams& p, AdcModel adc = {})
      : GeCluster(p.crossbar_size, p.crossbars_per_ge, p.engines, adc) {}

  std::uint32_t crossbar_size() const { return size_; }
  std::uint32_t crossbar_count() const { return count_; }
  std::uint32_t rows() const { return size_; }
  std::uint32_t cols() const { return size_ * count_; }

  // mac mode: absent cells are 0, bias row defaults to 0xFFFF (unit in Q0.16).
  // add mode: absent cells are M, bias row is the integer 1.
  // A non-empty `bias_row` (one word per column) overrides the default.
  void program(const SubgraphTile& tile, CellMode mode, std::span<const std::uint16_t> bias_row = {});

  CellMode mode() const { return mode_; }
  bool programmed() const { return programmed_; }
  std::uint64_t programmed_order() const { return order_; }

  // Recomposed cell word; row == C addresses the bias row.
  std::uint16_t cell(std::size_t row, std::size_t col) const;

  // out[j] = rne((sum_i cell[i][j] * input[i] + bias[j] * bias_input) / 2^16),
  // returned unsaturated in Q0.16 units. Needs mac mode and C inputs.
  std::vector<std::uint64_t> mvm_mac(std::span<const std::uint16_t> input,
                                     std::uint16_t bias_input = 0);

  // One-hot read of `row` plus bias row driven with `dist`:
  // out[j] = sat_add(w(row, j), dist), M where w is M or the column is masked
  // off by `active_cols`. Needs add mode.
  std::vector<std::uint16_t> row_add(std::size_t row, std::uint16_t dist,
                                     std::span<const std::uint8_t> active_cols = {});

  const CrossbarCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

 private:
  struct Crossbar {
    bool materialized = false;
    // [slice][row][col], data rows only.
    std::vector<std::uint8_t> digits;
  };

  std::uint8_t digit(std::size_t xb, int k, std::size_t row, std::size_t local_col) const;

  std::uint32_t size_;
  std::uint32_t count_;
  AdcModel adc_;
  CellMode mode_ = CellMode::mac;
  bool programmed_ = false;
  std::uint64_t order_ = 0;
  std::uint16_t fill_ = 0;
  std::vector<Crossbar> crossbars_;
  std::vector<Digits> bias_;  // per column
  CrossbarCounters counters_;
};

}  // namespace xbgraph
