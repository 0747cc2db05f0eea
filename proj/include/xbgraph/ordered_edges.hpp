#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xbgraph/fx16.hpp"
#include "xbgraph/graph.hpp"
#include "xbgraph/tiling.hpp"

namespace xbgraph {

struct OrderedEntry {
  std::uint64_t id = 0;  // global order ID
  VertexId src = 0;
  VertexId dst = 0;
  std::uint16_t weight = 0;

  friend bool operator==(const OrderedEntry&, const OrderedEntry&) = default;
};

// Edges sorted by strictly increasing global order ID. Padding vertices never
// appear; absent cells are implicit.
struct OrderedEdgeList {
  TilingParams params;
  std::uint64_t raw_vertices = 0;
  FxFormat weight_format = FxFormat::integer;
  std::vector<OrderedEntry> entries;
  // Weights clamped while encoding.
  std::uint64_t clamped_weights = 0;

  friend bool operator==(const OrderedEdgeList&, const OrderedEdgeList&) = default;
};

class OrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

OrderedEdgeList preprocess_edges(const EdgeListGraph& g, const TilingParams& params,
                                 FxFormat weight_format = FxFormat::integer);

// Throws OrderError unless ids are strictly increasing and each matches its
// (src, dst) under the list's params.
void check_order(const OrderedEdgeList& ol);

// Reconstructs the source graph (decoded weights, raw vertex count).
EdgeListGraph to_graph(const OrderedEdgeList& ol);

// Dense C x (C*N*G) tile. `cells` is row-major (row = local source, column =
// local destination); `present` marks cells that hold an edge. Absent cells
// hold 0.
struct SubgraphTile {
  std::uint64_t order = 0;  // SI
  BlockCoord block;
  SubgraphCoord sub;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint16_t> cells;
  std::vector<std::uint8_t> present;
  std::uint32_t nnz = 0;

  std::uint64_t src_begin(const TilingParams& p) const {
    return block.row * p.block + sub.row * p.tile_rows();
  }
  std::uint64_t dst_begin(const TilingParams& p) const {
    return block.col * p.block + sub.col * p.tile_cols();
  }
  std::uint16_t at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
  bool has(std::size_t r, std::size_t c) const { return present[r * cols + c] != 0; }
};

// Slice of the ordered list belonging to one non-empty subgraph.
struct TileRef {
  std::uint64_t order = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Non-empty subgraphs in ascending SI. Throws OrderError on unsorted input.
std::vector<TileRef> index_tiles(const OrderedEdgeList& ol);

// Zero tile for subgraph `order`.
SubgraphTile empty_tile(std::uint64_t order, const TilingParams& p);

// Densifies `ref` into `tile`, reusing its storage.
void densify(const OrderedEdgeList& ol, const TileRef& ref, SubgraphTile& tile);

// Pull-style stream over the non-empty tiles of an ordered list.
class TileStream {
 public:
  explicit TileStream(const OrderedEdgeList& ol);
  std::optional<SubgraphTile> next();

 private:
  const OrderedEdgeList* ol_;
  std::vector<TileRef> refs_;
  std::size_t pos_ = 0;
};

std::vector<SubgraphTile> tile_stream(const OrderedEdgeList& ol);

// Inverse of tile_stream: cells in column-major order per tile, tiles in
// stream order.
std::vector<OrderedEntry> flatten_tiles(std::span<const SubgraphTile> tiles,
                                        const TilingParams& p);

// Binary layout, little-endian:
//   "XBGR" | version u16 | V u32 | C u16 | N u16 | G u16 | B u32 | E u64
//   E x { src u32 | dst u32 | weight u16 }   in ascending global order
// V is the unpadded vertex count; the padded count follows from B. Only
// integer-format weights are stored.
inline constexpr std::uint16_t kBinaryVersion = 1;
inline constexpr std::size_t kBinaryHeaderSize = 28;
inline constexpr std::size_t kBinaryRecordSize = 10;

void write_binary(std::ostream& out, const OrderedEdgeList& ol);
OrderedEdgeList read_binary(std::istream& in);
void save_binary(const std::string& path, const OrderedEdgeList& ol);
OrderedEdgeList load_binary(const std::string& path);

}  // namespace xbgraph
