#include "xbgraph/tiling.hpp"

#include <string>

namespace xbgraph {

namespace {

std::uint64_t round_up(std::uint64_t x, std::uint64_t m) { return (x + m - 1) / m * m; }

}  // namespace

TilingParams pad_params(std::uint64_t raw_vertices, std::uint32_t crossbar_size,
                        std::uint32_t crossbars_per_ge, std::uint32_t engines,
                        std::uint64_t block) {
  if (crossbar_size == 0 || crossbars_per_ge == 0 || engines == 0) {
    throw TilingError("tiling: C, N and G must be positive");
  }
  if (raw_vertices == 0) throw TilingError("tiling: graph has no vertices");
  TilingParams p;
  p.crossbar_size = crossbar_size;
  p.crossbars_per_ge = crossbars_per_ge;
  p.engines = engines;
  const std::uint64_t stripe = p.tile_cols();
  p.block = round_up(block == 0 ? raw_vertices : block, stripe);
  p.vertices = round_up(raw_vertices, p.block);
  if (p.vertices > 0xFFFFFFFFull) throw TilingError("tiling: padded vertex count exceeds 2^32");
  return p;
}

void check_params(const TilingParams& p) {
  if (p.crossbar_size == 0 || p.crossbars_per_ge == 0 || p.engines == 0 || p.block == 0 ||
      p.vertices == 0) {
    throw TilingError("tiling: all parameters must be positive");
  }
  if (p.block % p.tile_cols() != 0) {
    throw TilingError("tiling: C*N*G (" + std::to_string(p.tile_cols()) +
                      ") must divide B (" + std::to_string(p.block) + ")");
  }
  if (p.vertices % p.block != 0) {
    throw TilingError("tiling: B must divide V");
  }
}

BlockCoord block_coords(std::uint64_t i, std::uint64_t j, std::uint64_t block) {
  return {i / block, j / block};
}

std::uint64_t block_order(BlockCoord b, std::uint64_t vertices, std::uint64_t block) {
  return b.row + (vertices / block) * b.col;
}

SubgraphCoord subgraph_coords(std::uint64_t i, std::uint64_t j, const TilingParams& p) {
  const auto b = block_coords(i, j, p.block);
  const std::uint64_t ip = i - b.row * p.block;
  const std::uint64_t jp = j - b.col * p.block;
  return {ip / p.tile_rows(), jp / p.tile_cols()};
}

std::uint64_t subgraph_order(std::uint64_t i, std::uint64_t j, const TilingParams& p) {
  const auto b = block_coords(i, j, p.block);
  const auto s = subgraph_coords(i, j, p);
  const std::uint64_t block_rank = block_order(b, p.vertices, p.block);
  return s.row + s.col * p.subgraph_rows_per_block() + block_rank * p.subgraphs_per_block();
}

std::uint64_t intra_order(std::uint64_t i, std::uint64_t j, const TilingParams& p) {
  const auto b = block_coords(i, j, p.block);
  const auto s = subgraph_coords(i, j, p);
  const std::uint64_t local_row = i - p.block * b.row - s.row * p.tile_rows();
  const std::uint64_t local_col = j - p.block * b.col - s.col * p.tile_cols();
  return local_row + local_col * p.tile_rows();
}

std::uint64_t global_edge_id(std::uint64_t i, std::uint64_t j, const TilingParams& p) {
  return subgraph_order(i, j, p) * p.tile_cells() + intra_order(i, j, p);
}

CellCoord cell_of_global_id(std::uint64_t id, const TilingParams& p) {
  const std::uint64_t si = id / p.tile_cells();
  const std::uint64_t sub = id % p.tile_cells();
  const std::uint64_t block_rank = si / p.subgraphs_per_block();
  const std::uint64_t in_block = si % p.subgraphs_per_block();
  const std::uint64_t per_side = p.blocks_per_side();
  const std::uint64_t b_row = block_rank % per_side;
  const std::uint64_t b_col = block_rank / per_side;
  const std::uint64_t s_row = in_block % p.subgraph_rows_per_block();
  const std::uint64_t s_col = in_block / p.subgraph_rows_per_block();
  const std::uint64_t local_row = sub % p.tile_rows();
  const std::uint64_t local_col = sub / p.tile_rows();
  return {b_row * p.block + s_row * p.tile_rows() + local_row,
          b_col * p.block + s_col * p.tile_cols() + local_col};
}

}  // namespace xbgraph
