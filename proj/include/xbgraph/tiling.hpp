#pragma once

#include <cstdint>
#include <stdexcept>

namespace xbgraph {

// Architectural and partitioning constants that fix the global edge order.
//
//   crossbar_size   C   rows/cols of one crossbar
//   crossbars_per_ge N
//   engines         G   graph engines per node
//   block           B   vertices per block (out-of-core load unit)
//   vertices        V   padded vertex count
//
// After padding: C*N*G divides B and B divides V. A subgraph (tile) is
// C x (C*N*G) cells; a block holds (B/C) * (B/(C*N*G)) subgraphs.
struct TilingParams {
  std::uint32_t crossbar_size = 8;
  std::uint32_t crossbars_per_ge = 32;
  std::uint32_t engines = 64;
  std::uint64_t block = 0;
  std::uint64_t vertices = 0;

  std::uint64_t tile_rows() const { return crossbar_size; }
  std::uint64_t tile_cols() const {
    return std::uint64_t{crossbar_size} * crossbars_per_ge * engines;
  }
  std::uint64_t tile_cells() const { return tile_rows() * tile_cols(); }
  std::uint64_t blocks_per_side() const { return vertices / block; }
  std::uint64_t subgraph_rows_per_block() const { return block / tile_rows(); }
  std::uint64_t subgraph_cols_per_block() const { return block / tile_cols(); }
  std::uint64_t subgraphs_per_block() const {
    return subgraph_rows_per_block() * subgraph_cols_per_block();
  }
  std::uint64_t total_subgraphs() const {
    return subgraphs_per_block() * blocks_per_side() * blocks_per_side();
  }
  // Destination chunks of width C*N*G across the padded vertex range.
  std::uint64_t column_count() const { return vertices / tile_cols(); }
  std::uint64_t tile_rows_per_column() const { return vertices / tile_rows(); }

  friend bool operator==(const TilingParams&, const TilingParams&) = default;
};

class TilingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rounds B up to a multiple of C*N*G (block == 0 means a single block covering
// the whole graph), then V up to a multiple of B. Throws TilingError on a zero
// architectural parameter or an empty graph.
TilingParams pad_params(std::uint64_t raw_vertices, std::uint32_t crossbar_size,
                        std::uint32_t crossbars_per_ge, std::uint32_t engines,
                        std::uint64_t block);

// Throws TilingError unless the divisibility invariants hold.
void check_params(const TilingParams& p);

struct BlockCoord {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  friend bool operator==(BlockCoord, BlockCoord) = default;
};

struct SubgraphCoord {
  std::uint64_t row = 0;  // SI_i', subgraph row inside the block
  std::uint64_t col = 0;  // SI_j', subgraph column inside the block
  friend bool operator==(SubgraphCoord, SubgraphCoord) = default;
};

// All ranks below are zero-based.

BlockCoord block_coords(std::uint64_t i, std::uint64_t j, std::uint64_t block);

// Column-major rank of a block: B(0,0), B(1,0), ..., B(0,1), ...
std::uint64_t block_order(BlockCoord b, std::uint64_t vertices, std::uint64_t block);

SubgraphCoord subgraph_coords(std::uint64_t i, std::uint64_t j, const TilingParams& p);

// Global subgraph rank SI: blocks column-major, subgraphs column-major inside
// each block.
std::uint64_t subgraph_order(std::uint64_t i, std::uint64_t j, const TilingParams& p);

// Column-major rank of the cell inside its C x (C*N*G) subgraph.
std::uint64_t intra_order(std::uint64_t i, std::uint64_t j, const TilingParams& p);

// I = SI * (C*C*N*G) + SubI. A bijection from the padded V x V grid onto
// [0, V*V).
std::uint64_t global_edge_id(std::uint64_t i, std::uint64_t j, const TilingParams& p);

// Inverse of global_edge_id.
struct CellCoord {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  friend bool operator==(CellCoord, CellCoord) = default;
};
CellCoord cell_of_global_id(std::uint64_t id, const TilingParams& p);

// Destination chunk (schedule column) that owns destination vertex j.
inline std::uint64_t column_of(std::uint64_t j, const TilingParams& p) {
  return j / p.tile_cols();
}

}  // namespace xbgraph
