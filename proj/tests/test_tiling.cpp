#include <algorithm>
#include <set>

#include "doctest.h"
#include "xbgraph/tiling.hpp"
#include "support.hpp"

using namespace xbgraph;

TEST_CASE("padding") {
  const auto p = testing::fig_config();
  CHECK(p.vertices == 64);
  CHECK(p.block == 32);
  CHECK(p.blocks_per_side() == 2);
  CHECK(p.subgraphs_per_block() == 16);
  CHECK(p.tile_rows() == 4);
  CHECK(p.tile_cols() == 16);

  CHECK(pad_params(100, 4, 2, 2, 32).vertices == 128);
  CHECK(pad_params(1, 4, 2, 2, 32).vertices == 32);
  // B is first rounded up to a multiple of C*N*G.
  CHECK(pad_params(100, 4, 2, 2, 20).block == 32);
  // B = 0 is one block over the padded graph.
  const auto single = pad_params(100, 4, 2, 2, 0);
  CHECK(single.block == single.vertices);
  CHECK(single.vertices == 112);
  CHECK_THROWS_AS(pad_params(10, 0, 2, 2, 32), TilingError);
  CHECK_THROWS_AS(pad_params(0, 4, 2, 2, 32), TilingError);
}

TEST_CASE("check_params rejects broken divisibility") {
  auto p = testing::fig_config();
  CHECK_NOTHROW(check_params(p));
  p.vertices = 48;
  CHECK_THROWS_AS(check_params(p), TilingError);
}

TEST_CASE("block coordinates and order") {
  CHECK(block_coords(5, 12, 32) == BlockCoord{0, 0});
  CHECK(block_coords(33, 2, 32) == BlockCoord{1, 0});
  CHECK(block_coords(63, 63, 32) == BlockCoord{1, 1});
  // Column-major: B(0,0), B(1,0), B(0,1), B(1,1).
  CHECK(block_order({0, 0}, 64, 32) == 0);
  CHECK(block_order({1, 0}, 64, 32) == 1);
  CHECK(block_order({0, 1}, 64, 32) == 2);
  CHECK(block_order({1, 1}, 64, 32) == 3);
}

TEST_CASE("worked order examples") {
  const auto p = testing::fig_config();
  CHECK(subgraph_order(0, 0, p) == 0);
  CHECK(subgraph_order(5, 1, p) == 1);
  CHECK(subgraph_order(33, 2, p) == 16);
  CHECK(intra_order(0, 0, p) == 0);
  CHECK(intra_order(5, 1, p) == 5);
  CHECK(intra_order(33, 2, p) == 9);
  CHECK(global_edge_id(0, 0, p) == 0);
  CHECK(global_edge_id(5, 1, p) == 69);
  CHECK(global_edge_id(33, 2, p) == 1033);

  // The same values from the enumerator.
  const auto oracle = testing::enumerate_order(p);
  CHECK(oracle[5 * 64 + 1] == 69);
  CHECK(oracle[33 * 64 + 2] == 1033);
}

TEST_CASE("global id is a bijection on the worked configuration") {
  const auto p = testing::fig_config();
  std::vector<std::uint8_t> seen(64 * 64, 0);
  for (std::uint64_t i = 0; i < 64; ++i)
    for (std::uint64_t j = 0; j < 64; ++j) {
      const auto id = global_edge_id(i, j, p);
      REQUIRE(id < seen.size());
      REQUIRE(seen[id] == 0);
      seen[id] = 1;
    }
  CHECK(std::all_of(seen.begin(), seen.end(), [](auto s) { return s == 1; }));
}

TEST_CASE("global id matches the brute-force enumerator on random configurations") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    testing::Gen g(seed);
    const auto C = static_cast<std::uint32_t>(g.range(1, 4));
    const auto N = static_cast<std::uint32_t>(g.range(1, 3));
    const auto G = static_cast<std::uint32_t>(g.range(1, 3));
    const std::uint64_t cng = std::uint64_t{C} * N * G;
    const std::uint64_t block = cng * g.range(1, 3);
    const std::uint64_t raw = g.range(1, 256);
    const auto p = pad_params(raw, C, N, G, block);
    if (p.vertices > 256) continue;
    CAPTURE(seed);
    CAPTURE(p.vertices);
    const auto oracle = testing::enumerate_order(p);
    for (std::uint64_t i = 0; i < p.vertices; ++i)
      for (std::uint64_t j = 0; j < p.vertices; ++j) {
        const auto id = global_edge_id(i, j, p);
        REQUIRE(id == oracle[i * p.vertices + j]);
        REQUIRE(cell_of_global_id(id, p) == CellCoord{i, j});
      }
  }
}

TEST_CASE("column ownership") {
  const auto p = testing::fig_config();
  CHECK(p.column_count() == 4);
  CHECK(p.tile_rows_per_column() == 16);
  CHECK(column_of(0, p) == 0);
  CHECK(column_of(15, p) == 0);
  CHECK(column_of(16, p) == 1);
  CHECK(column_of(63, p) == 3);
}
