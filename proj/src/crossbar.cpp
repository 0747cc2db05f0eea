#include "xbgraph/crossbar.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace xbgraph {

std::uint64_t AdcModel::convert(std::uint64_t value, std::uint64_t full_scale) const {
  if (exact() || full_scale == 0) return value;
  const double levels = std::ldexp(1.0, static_cast<int>(resolution_bits)) - 1.0;
  const double step = static_cast<double>(full_scale) / levels;
  const double code = std::nearbyint(static_cast<double>(std::min(value, full_scale)) / step);
  return static_cast<std::uint64_t>(std::llround(code * step));
}

CrossbarCounters& CrossbarCounters::operator+=(const CrossbarCounters& o) {
  programs += o.programs;
  cell_writes += o.cell_writes;
  cell_reads += o.cell_reads;
  adc_conversions += o.adc_conversions;
  mac_ops += o.mac_ops;
  add_slots += o.add_slots;
  return *this;
}

std::vector<std::array<CellSlice, kSlices>> slice_matrix(const SubgraphTile& tile,
                                                         std::uint32_t crossbar_size) {
  if (crossbar_size == 0 || tile.rows != crossbar_size || tile.cols % crossbar_size != 0 ||
      tile.cells.size() != std::size_t{tile.rows} * tile.cols) {
    throw CrossbarError("slice_matrix: tile is not C x (C*N*G)");
  }
  const std::uint32_t c = crossbar_size;
  const std::uint32_t count = tile.cols / c;
  std::vector<std::array<CellSlice, kSlices>> out(count);
  for (std::uint32_t xb = 0; xb < count; ++xb) {
    for (int k = 0; k < kSlices; ++k) {
      auto& s = out[xb][k];
      s.size = c;
      s.slice = k;
      s.digits.assign(std::size_t{c + 1} * c, 0);
      for (std::uint32_t r = 0; r < c; ++r) {
        for (std::uint32_t col = 0; col < c; ++col) {
          s.digits[r * c + col] = slice_word(tile.at(r, xb * c + col))[k];
        }
      }
    }
  }
  return out;
}

GeCluster::GeCluster(std::uint32_t crossbar_size, std::uint32_t crossbars_per_ge,
                     std::uint32_t engines, AdcModel adc)
    : size_(crossbar_size), count_(crossbars_per_ge * engines), adc_(adc) {
  if (crossbar_size == 0 || crossbars_per_ge == 0 || engines == 0) {
    throw CrossbarError("GeCluster: geometry must be positive");
  }
  crossbars_.resize(count_);
  bias_.assign(cols(), Digits{});
}

std::uint8_t GeCluster::digit(std::size_t xb, int k, std::size_t row, std::size_t local_col) const {
  const auto& x = crossbars_[xb];
  if (!x.materialized) return slice_word(fill_)[k];
  return x.digits[(static_cast<std::size_t>(k) * size_ + row) * size_ + local_col];
}

void GeCluster::program(const SubgraphTile& tile, CellMode mode,
                        std::span<const std::uint16_t> bias_row) {
  if (tile.rows != size_ || tile.cols != cols() || tile.cells.size() != std::size_t{size_} * cols() ||
      tile.present.size() != tile.cells.size()) {
    throw CrossbarError("GeCluster::program: tile is " + std::to_string(tile.rows) + "x" +
                        std::to_string(tile.cols) + ", cluster expects " + std::to_string(size_) +
                        "x" + std::to_string(cols()));
  }
  if (!bias_row.empty() && bias_row.size() != cols()) {
    throw CrossbarError("GeCluster::program: bias row must have one word per column");
  }
  mode_ = mode;
  fill_ = mode == CellMode::add ? kInfinity : 0;
  order_ = tile.order;
  programmed_ = true;

  const std::uint16_t default_bias = mode == CellMode::add ? 1 : kFxMax;
  for (std::size_t j = 0; j < cols(); ++j) {
    bias_[j] = slice_word(bias_row.empty() ? default_bias : bias_row[j]);
  }

  const std::size_t c = size_;
  for (std::size_t xb = 0; xb < count_; ++xb) {
    auto& x = crossbars_[xb];
    bool any = false;
    for (std::size_t r = 0; r < c && !any; ++r) {
      for (std::size_t col = 0; col < c; ++col) {
        if (tile.present[r * tile.cols + xb * c + col]) {
          any = true;
          break;
        }
      }
    }
    x.materialized = any;
    if (!any) {
      x.digits.clear();
      continue;
    }
    x.digits.resize(kSlices * c * c);
    for (std::size_t r = 0; r < c; ++r) {
      for (std::size_t col = 0; col < c; ++col) {
        const std::size_t idx = r * tile.cols + xb * c + col;
        const std::uint16_t word = tile.present[idx] ? tile.cells[idx] : fill_;
        const auto d = slice_word(word);
        for (int k = 0; k < kSlices; ++k) x.digits[(k * c + r) * c + col] = d[k];
      }
    }
  }

  // Every cell of every slice crossbar is written, bias row included.
  counters_.programs += 1;
  counters_.cell_writes += std::uint64_t{count_} * (c + 1) * c * kSlices;
}

std::uint16_t GeCluster::cell(std::size_t row, std::size_t col) const {
  if (row > size_ || col >= cols()) throw CrossbarError("GeCluster::cell: out of range");
  if (row == size_) return recompose(bias_[col]);
  Digits d{};
  for (int k = 0; k < kSlices; ++k) d[k] = digit(col / size_, k, row, col % size_);
  return recompose(d);
}

std::vector<std::uint64_t> GeCluster::mvm_mac(std::span<const std::uint16_t> input,
                                              std::uint16_t bias_input) {
  if (!programmed_ || mode_ != CellMode::mac) {
    throw CrossbarError("mvm_mac: cluster not programmed in MAC mode");
  }
  if (input.size() != size_) throw CrossbarError("mvm_mac: need one input per crossbar row");

  const std::size_t c = size_;
  // Largest possible per-slice bitline sum: C + 1 rows of digit 15 times a
  // full-scale 16-bit input.
  const std::uint64_t full_scale = std::uint64_t{c + 1} * kDigitMax * kFxMax;
  std::vector<std::uint64_t> out(cols(), 0);
  for (std::size_t xb = 0; xb < count_; ++xb) {
    const auto& x = crossbars_[xb];
    for (std::size_t col = 0; col < c; ++col) {
      const std::size_t j = xb * c + col;
      std::array<std::uint64_t, kSlices> d{};
      for (int k = 0; k < kSlices; ++k) {
        std::uint64_t acc = std::uint64_t{bias_[j][k]} * bias_input;
        if (x.materialized) {
          const std::uint8_t* base = x.digits.data() + static_cast<std::size_t>(k) * c * c + col;
          for (std::size_t r = 0; r < c; ++r) acc += std::uint64_t{base[r * c]} * input[r];
        }
        assert(acc <= full_scale);
        d[k] = adc_.convert(acc, full_scale);
      }
      out[j] = rescale_q32_to_q16(shift_add(d));
    }
  }
  counters_.mac_ops += 1;
  counters_.cell_reads += std::uint64_t{count_} * (c + 1) * c * kSlices;
  counters_.adc_conversions += std::uint64_t{count_} * c * kSlices;
  return out;
}

std::vector<std::uint16_t> GeCluster::row_add(std::size_t row, std::uint16_t dist,
                                              std::span<const std::uint8_t> active_cols) {
  if (!programmed_ || mode_ != CellMode::add) {
    throw CrossbarError("row_add: cluster not programmed in ADD mode");
  }
  if (row >= size_) throw CrossbarError("row_add: row " + std::to_string(row) + " >= C");
  if (!active_cols.empty() && active_cols.size() != cols()) {
    throw CrossbarError("row_add: active column mask has wrong length");
  }
  const std::size_t c = size_;
  std::vector<std::uint16_t> out(cols(), kInfinity);
  for (std::size_t xb = 0; xb < count_; ++xb) {
    for (std::size_t col = 0; col < c; ++col) {
      const std::size_t j = xb * c + col;
      if (!active_cols.empty() && !active_cols[j]) continue;
      // Wordline `row` driven with 1, bias wordline driven with dist.
      std::array<std::uint64_t, kSlices> d{};
      Digits w{};
      for (int k = 0; k < kSlices; ++k) {
        w[k] = digit(xb, k, row, col);
        d[k] = std::uint64_t{w[k]} + std::uint64_t{bias_[j][k]} * dist;
      }
      const std::uint64_t sum = shift_add(d);
      out[j] = recompose(w) == kInfinity
                   ? kInfinity
                   : static_cast<std::uint16_t>(std::min<std::uint64_t>(sum, kInfinity));
    }
  }
  counters_.add_slots += 1;
  counters_.cell_reads += std::uint64_t{count_} * 2 * c * kSlices;
  counters_.adc_conversions += std::uint64_t{count_} * c * kSlices;
  return out;
}

}  // namespace xbgraph
