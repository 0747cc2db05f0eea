#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "xbgraph/ordered_edges.hpp"
#include "support.hpp"

using namespace xbgraph;

namespace {

std::vector<std::uint64_t> ids(const OrderedEdgeList& ol) {
  std::vector<std::uint64_t> out;
  for (const auto& e : ol.entries) out.push_back(e.id);
  return out;
}

}  // namespace

TEST_CASE("preprocess orders edges by global id") {
  const auto g = EdgeListGraph::from_edges(64, {{33, 2, 1}, {0, 0, 1}, {5, 1, 1}});
  const auto ol = preprocess_edges(g, testing::fig_config());
  CHECK(ids(ol) == std::vector<std::uint64_t>{0, 69, 1033});
  CHECK_NOTHROW(check_order(ol));
}

TEST_CASE("preprocess edge cases") {
  const auto empty = EdgeListGraph::from_edges(10, {});
  const auto ol = preprocess_edges(empty, pad_params(10, 4, 2, 2, 32));
  CHECK(ol.entries.empty());
  CHECK(ol.raw_vertices == 10);
  CHECK(tile_stream(ol).empty());
}

TEST_CASE("preprocess does not depend on input order") {
  testing::Gen gen(9);
  std::vector<Edge> es;
  for (int k = 0; k < 300; ++k) {
    es.push_back({static_cast<VertexId>(gen.below(64)), static_cast<VertexId>(gen.below(64)),
                  static_cast<double>(gen.range(1, 20))});
  }
  // Keep one weight per cell so shuffling cannot change which duplicate wins.
  auto g = EdgeListGraph::from_edges(64, es);
  std::vector<Edge> shuffled(g.edges().begin(), g.edges().end());
  std::shuffle(shuffled.begin(), shuffled.end(), gen.rng);
  const auto a = preprocess_edges(g, testing::fig_config());
  const auto b = preprocess_edges(EdgeListGraph::from_edges(64, shuffled), testing::fig_config());
  CHECK(a == b);
}

TEST_CASE("ids are strictly increasing and gaps count empty cells") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    testing::Gen gen(seed);
    const auto p = pad_params(gen.range(8, 120), 4, 2, 2, 32);
    const auto g = testing::random_graph(gen, static_cast<std::uint32_t>(p.vertices), gen.range(1, 500));
    const auto ol = preprocess_edges(g, p);
    const auto oracle = testing::enumerate_order(p);
    std::vector<std::uint8_t> edge(p.vertices * p.vertices, 0);
    for (const auto& e : g.edges()) edge[e.src * p.vertices + e.dst] = 1;
    // rank -> occupied, independent of global_edge_id.
    std::vector<std::uint8_t> occupied(oracle.size(), 0);
    for (std::size_t c = 0; c < oracle.size(); ++c) occupied[oracle[c]] = edge[c];
    for (std::size_t k = 1; k < ol.entries.size(); ++k) {
      const auto a = ol.entries[k - 1].id, b = ol.entries[k].id;
      REQUIRE(a < b);
      std::uint64_t empty_between = 0;
      for (auto r = a + 1; r < b; ++r) empty_between += occupied[r] == 0;
      REQUIRE(b - a == empty_between + 1);
    }
  }
}

TEST_CASE("check_order catches corruption") {
  const auto g = EdgeListGraph::from_edges(64, {{0, 0, 1}, {5, 1, 1}, {33, 2, 1}});
  auto ol = preprocess_edges(g, testing::fig_config());
  std::swap(ol.entries[0], ol.entries[1]);
  CHECK_THROWS_AS(check_order(ol), OrderError);
  CHECK_THROWS_AS(index_tiles(ol), OrderError);
  auto bad = preprocess_edges(g, testing::fig_config());
  bad.entries[1].id = 70;
  CHECK_THROWS_AS(check_order(bad), OrderError);
}

TEST_CASE("tile stream on the worked configuration") {
  const auto g = EdgeListGraph::from_edges(64, {{0, 0, 3}, {5, 1, 2}});
  const auto tiles = tile_stream(preprocess_edges(g, testing::fig_config()));
  REQUIRE(tiles.size() == 2);
  CHECK(tiles[0].order == 0);
  CHECK(tiles[1].order == 1);
  CHECK(tiles[0].rows == 4);
  CHECK(tiles[0].cols == 16);
  CHECK(tiles[0].nnz == 1);
  CHECK(tiles[0].at(0, 0) == 3);
  CHECK(tiles[0].has(0, 0));
  CHECK_FALSE(tiles[0].has(0, 1));
  CHECK(tiles[1].src_begin(testing::fig_config()) == 4);
  CHECK(tiles[1].at(1, 1) == 2);
}

TEST_CASE("tile stream round-trips through flatten") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    testing::Gen gen(seed);
    const auto p = pad_params(gen.range(4, 200), static_cast<std::uint32_t>(gen.range(1, 4)),
                              static_cast<std::uint32_t>(gen.range(1, 3)), 2, 0);
    const auto g = testing::random_graph(gen, static_cast<std::uint32_t>(p.vertices), gen.range(0, 800), 1, 100);
    const auto ol = preprocess_edges(g, p);
    const auto tiles = tile_stream(ol);
    for (std::size_t k = 1; k < tiles.size(); ++k) REQUIRE(tiles[k - 1].order < tiles[k].order);
    CHECK(flatten_tiles(tiles, p) == ol.entries);

    TileStream stream(ol);
    std::size_t n = 0;
    while (auto t = stream.next()) {
      REQUIRE(t->order == tiles[n].order);
      ++n;
    }
    CHECK(n == tiles.size());
  }
}

TEST_CASE("binary format round-trip and layout") {
  testing::Gen gen(4);
  const auto g = testing::random_graph(gen, 100, 400, 1, 50);
  const auto ol = preprocess_edges(g, pad_params(100, 4, 2, 2, 32));
  std::stringstream ss;
  write_binary(ss, ol);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == kBinaryHeaderSize + kBinaryRecordSize * ol.entries.size());
  CHECK(bytes.substr(0, 4) == "XBGR");
  // Raw vertex count, little-endian, right after the version.
  CHECK(static_cast<unsigned char>(bytes[6]) == 100);
  const auto back = read_binary(ss);
  CHECK(back == ol);

  std::stringstream again;
  write_binary(again, back);
  CHECK(again.str() == bytes);
}

TEST_CASE("binary reader rejects damage") {
  const auto g = EdgeListGraph::from_edges(64, {{0, 0, 1}, {5, 1, 1}, {33, 2, 1}});
  const auto ol = preprocess_edges(g, testing::fig_config());
  std::stringstream ss;
  write_binary(ss, ol);
  const std::string good = ss.str();

  auto expect_bad = [](std::string bytes) {
    std::stringstream in(bytes);
    CHECK_THROWS(read_binary(in));
  };
  std::string magic = good;
  magic[0] = 'Q';
  expect_bad(magic);
  expect_bad(good.substr(0, good.size() - 3));
  // Swap the first two records so the order breaks.
  std::string swapped = good;
  std::swap_ranges(swapped.begin() + kBinaryHeaderSize, swapped.begin() + kBinaryHeaderSize + kBinaryRecordSize,
                   swapped.begin() + kBinaryHeaderSize + kBinaryRecordSize);
  expect_bad(swapped);
}
