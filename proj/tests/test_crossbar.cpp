#include <numeric>

#include "doctest.h"
#include "xbgraph/crossbar.hpp"
#include "support.hpp"

using namespace xbgraph;

namespace {

// Tile from a dense row-major matrix; cells equal to `absent` are left out.
SubgraphTile make_tile(const TilingParams& p, const std::vector<std::uint16_t>& dense,
                       std::uint16_t absent) {
  SubgraphTile t = empty_tile(0, p);
  for (std::size_t k = 0; k < dense.size(); ++k) {
    if (dense[k] == absent) continue;
    t.cells[k] = dense[k];
    t.present[k] = 1;
    ++t.nnz;
  }
  return t;
}

std::uint64_t rne_div_2_16(unsigned __int128 x) {
  const auto q = static_cast<std::uint64_t>(x >> 16);
  const auto r = static_cast<std::uint64_t>(x & 0xFFFF);
  if (r > 0x8000 || (r == 0x8000 && (q & 1))) return q + 1;
  return q;
}

}  // namespace

TEST_CASE("slicing") {
  CHECK(slice_word(0xABCD) == Digits{0xD, 0xC, 0xB, 0xA});
  CHECK(slice_word(0) == Digits{0, 0, 0, 0});
  CHECK(shift_add({0, 0, 0, 1}) == 4096);
  CHECK(shift_add({0xD, 0xC, 0xB, 0xA}) == 0xABCD);
}

TEST_CASE("slice and recompose over every 16-bit word") {
  for (std::uint32_t w = 0; w <= 0xFFFF; ++w) {
    const auto d = slice_word(static_cast<std::uint16_t>(w));
    for (auto x : d) REQUIRE(x <= kDigitMax);
    REQUIRE(recompose(d) == w);
  }
}

TEST_CASE("shift_add equals a direct multiply-accumulate") {
  testing::Gen g(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = g.range(1, 33);
    std::array<std::uint64_t, kSlices> acc{};
    std::uint64_t direct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint16_t w = g.word(), x = g.word();
      const auto d = slice_word(w);
      for (int k = 0; k < kSlices; ++k) acc[k] += std::uint64_t{d[k]} * x;
      direct += std::uint64_t{w} * x;
    }
    REQUIRE(shift_add(acc) == direct);
  }
}

TEST_CASE("slice_matrix geometry") {
  const auto p = pad_params(16, 4, 2, 2, 0);
  testing::Gen g(2);
  std::vector<std::uint16_t> dense(p.tile_cells());
  for (auto& w : dense) w = g.word();
  const auto tile = make_tile(p, dense, 0);
  const auto xbs = slice_matrix(tile, 4);
  REQUIRE(xbs.size() == 4);
  for (std::size_t xb = 0; xb < xbs.size(); ++xb) {
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        Digits d;
        for (int k = 0; k < kSlices; ++k) {
          REQUIRE(xbs[xb][k].slice == k);
          d[k] = xbs[xb][k].at(r, c);
        }
        REQUIRE(recompose(d) == tile.at(r, xb * 4 + c));
      }
    for (std::size_t c = 0; c < 4; ++c) REQUIRE(xbs[xb][0].at(4, c) == 0);
  }
  auto bad = tile;
  bad.rows = 3;
  CHECK_THROWS_AS(slice_matrix(bad, 4), CrossbarError);
}

TEST_CASE("programming counts every cell") {
  const auto p = testing::fig_config();
  GeCluster ge(p);
  ge.program(empty_tile(0, p), CellMode::mac);
  CHECK(ge.counters().programs == 1);
  CHECK(ge.counters().cell_writes == 320);
  ge.program(empty_tile(0, p), CellMode::mac);
  CHECK(ge.counters().cell_writes == 640);
}

TEST_CASE("pagerank demo on one crossbar") {
  // Cells hold r * M^T, source rows, destination columns.
  const double r = 0.8;
  const double m[4][4] = {{0, 0.5, 1, 0}, {1.0 / 3, 0, 0, 0.5}, {1.0 / 3, 0, 0, 0.5}, {1.0 / 3, 0.5, 0, 0}};
  const auto p = pad_params(4, 4, 1, 1, 0);
  std::vector<std::uint16_t> dense(16);
  for (int s = 0; s < 4; ++s)
    for (int d = 0; d < 4; ++d) dense[s * 4 + d] = fx_encode_clamped(r * m[d][s], FxFormat::frac).raw;
  GeCluster ge(p);
  const std::uint16_t e0 = fx_encode(0.05, FxFormat::frac).raw;
  const std::vector<std::uint16_t> bias(4, e0);
  ge.program(make_tile(p, dense, 0), CellMode::mac, bias);
  const std::uint16_t quarter = fx_encode(0.25, FxFormat::frac).raw;
  const std::vector<std::uint16_t> in(4, quarter);
  const auto out = ge.mvm_mac(in, 0xFFFF);
  const double expect[4] = {0.35, 13.0 / 60, 13.0 / 60, 13.0 / 60};
  double sum = 0;
  for (int j = 0; j < 4; ++j) {
    const double v = static_cast<double>(out[j]) / 65536.0;
    CHECK(std::abs(v - expect[j]) <= 1.0 / 4096);
    sum += v;
  }
  CHECK(std::abs(sum - 1.0) <= 4.0 / 65536);
}

TEST_CASE("mvm_mac matches a wide-integer oracle") {
  testing::Gen g(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto C = static_cast<std::uint32_t>(g.range(1, 8));
    const auto N = static_cast<std::uint32_t>(g.range(1, 3));
    const auto p = pad_params(C * N, C, N, 1, 0);
    std::vector<std::uint16_t> dense(p.tile_cells());
    const double fill = g.unit();
    for (auto& w : dense) w = g.coin(fill) ? g.word() : 0;
    std::vector<std::uint16_t> bias(p.tile_cols());
    for (auto& b : bias) b = g.word();
    std::vector<std::uint16_t> in(C);
    for (auto& x : in) x = g.word();
    const std::uint16_t bias_in = g.word();

    GeCluster ge(p);
    ge.program(make_tile(p, dense, 0), CellMode::mac, bias);
    const auto out = ge.mvm_mac(in, bias_in);
    REQUIRE(out.size() == p.tile_cols());
    for (std::size_t j = 0; j < p.tile_cols(); ++j) {
      unsigned __int128 acc = static_cast<unsigned __int128>(bias[j]) * bias_in;
      for (std::size_t i = 0; i < C; ++i) acc += static_cast<unsigned __int128>(dense[i * p.tile_cols() + j]) * in[i];
      REQUIRE(out[j] == rne_div_2_16(acc));
    }
  }
}

TEST_CASE("mvm_mac basics and counters") {
  const auto p = testing::fig_config();
  GeCluster ge(p);
  const std::vector<std::uint16_t> zero_bias(p.tile_cols(), 0);
  ge.program(empty_tile(0, p), CellMode::mac, zero_bias);
  const std::vector<std::uint16_t> in = {100, 200, 300, 400};
  const auto out = ge.mvm_mac(in, 0xFFFF);
  CHECK(std::all_of(out.begin(), out.end(), [](auto v) { return v == 0; }));
  CHECK(ge.counters().mac_ops == 1);
  CHECK(ge.counters().cell_reads == 320);
  CHECK(ge.counters().adc_conversions == 64);

  // Identity tile reproduces its input within one ulp.
  std::vector<std::uint16_t> dense(p.tile_cells(), 0);
  for (std::size_t i = 0; i < 4; ++i) dense[i * p.tile_cols() + i] = 0xFFFF;
  ge.program(make_tile(p, dense, 0), CellMode::mac, zero_bias);
  const auto id = ge.mvm_mac(in, 0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(static_cast<long>(id[i]) - in[i]) <= 1);

  CHECK_THROWS_AS(ge.mvm_mac(std::vector<std::uint16_t>(3, 0)), CrossbarError);
  ge.program(empty_tile(0, p), CellMode::add);
  CHECK_THROWS_AS(ge.mvm_mac(in), CrossbarError);
}

TEST_CASE("mvm_mac is linear up to one ulp of rounding") {
  testing::Gen g(8);
  const auto p = pad_params(32, 8, 2, 2, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint16_t> dense(p.tile_cells());
    for (auto& w : dense) w = g.coin(0.3) ? g.word() : 0;
    const std::vector<std::uint16_t> zero_bias(p.tile_cols(), 0);
    GeCluster ge(p);
    ge.program(make_tile(p, dense, 0), CellMode::mac, zero_bias);
    std::vector<std::uint16_t> a(8), b(8), ab(8);
    for (std::size_t i = 0; i < 8; ++i) {
      a[i] = g.word() >> 1;
      b[i] = g.word() >> 1;
      ab[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    }
    const auto ya = ge.mvm_mac(a), yb = ge.mvm_mac(b), yab = ge.mvm_mac(ab);
    for (std::size_t j = 0; j < ya.size(); ++j) {
      const auto sum = ya[j] + yb[j];
      REQUIRE((sum > yab[j] ? sum - yab[j] : yab[j] - sum) <= 1);
    }
  }
}

TEST_CASE("row_add on the shortest-path demo rows") {
  const auto p = pad_params(4, 4, 1, 1, 0);
  using testing::M;
  const std::vector<std::uint16_t> w = {M, 1, 5, M, M, M, 3, 1, M, M, M, M, M, M, 1, M};
  GeCluster ge(p);
  ge.program(make_tile(p, w, M), CellMode::add);
  CHECK(ge.cell(4, 0) == 1);  // bias row
  CHECK(ge.cell(0, 0) == M);
  CHECK(ge.cell(0, 2) == 5);
  CHECK(ge.row_add(0, 4) == std::vector<std::uint16_t>{M, 5, 9, M});
  CHECK(ge.row_add(1, 3) == std::vector<std::uint16_t>{M, M, 6, 4});
  // dist 0 returns the row itself; M absorbs any dist.
  CHECK(ge.row_add(0, 0) == std::vector<std::uint16_t>{M, 1, 5, M});
  CHECK(ge.row_add(2, 0) == std::vector<std::uint16_t>{M, M, M, M});
  CHECK(ge.row_add(1, 65530) == std::vector<std::uint16_t>{M, M, 65533, 65531});
  CHECK(ge.row_add(1, 65534) == std::vector<std::uint16_t>{M, M, M, M});
  // Masked columns read as M.
  const std::vector<std::uint8_t> mask = {1, 1, 0, 1};
  CHECK(ge.row_add(0, 4, mask) == std::vector<std::uint16_t>{M, 5, M, M});
  CHECK_THROWS_AS(ge.row_add(4, 0), CrossbarError);
  CHECK(ge.counters().add_slots == 7);
  CHECK(ge.counters().cell_reads == 7 * 2 * 4 * 4);
}

TEST_CASE("row_add absorbing law on random rows") {
  testing::Gen g(31);
  const auto p = pad_params(16, 4, 2, 2, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint16_t> w(p.tile_cells());
    for (auto& x : w) x = g.coin(0.5) ? testing::M : static_cast<std::uint16_t>(g.range(1, 65534));
    GeCluster ge(p);
    ge.program(make_tile(p, w, testing::M), CellMode::add);
    const auto row = g.below(4);
    const auto dist = g.word();
    const auto out = ge.row_add(row, dist);
    for (std::size_t j = 0; j < out.size(); ++j) {
      REQUIRE(out[j] == sat_add_raw(w[row * p.tile_cols() + j], dist));
    }
  }
}

TEST_CASE("adc model") {
  AdcModel exact;
  CHECK(exact.exact());
  CHECK(exact.convert(12345, 99999) == 12345);
  AdcModel coarse{4, 1.0};
  CHECK(coarse.convert(0, 150) == 0);
  CHECK(coarse.convert(150, 150) == 150);
  CHECK(coarse.convert(14, 150) == 10);
  CHECK(coarse.convert(16, 150) == 20);
}
