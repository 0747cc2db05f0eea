#include "xbgraph/ordered_edges.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>

namespace xbgraph {

OrderedEdgeList preprocess_edges(const EdgeListGraph& g, const TilingParams& params,
                                 FxFormat weight_format) {
  check_params(params);
  if (g.num_vertices() > params.vertices) {
    throw TilingError("preprocess: graph has more vertices than the padded range");
  }
  OrderedEdgeList ol;
  ol.params = params;
  ol.raw_vertices = g.num_vertices();
  ol.weight_format = weight_format;
  ol.entries.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    const auto w = fx_encode_clamped(e.weight, weight_format, &ol.clamped_weights);
    ol.entries.push_back({global_edge_id(e.src, e.dst, params), e.src, e.dst, w.raw});
  }
  std::stable_sort(ol.entries.begin(), ol.entries.end(),
                   [](const OrderedEntry& a, const OrderedEntry& b) { return a.id < b.id; });
  for (std::size_t k = 1; k < ol.entries.size(); ++k) {
    // The graph is deduplicated, so every grid cell holds at most one edge.
    assert(ol.entries[k - 1].id < ol.entries[k].id);
  }
  return ol;
}

void check_order(const OrderedEdgeList& ol) {
  check_params(ol.params);
  for (std::size_t k = 0; k < ol.entries.size(); ++k) {
    const auto& e = ol.entries[k];
    if (e.src >= ol.params.vertices || e.dst >= ol.params.vertices) {
      throw OrderError("ordered list: vertex out of padded range at entry " + std::to_string(k));
    }
    if (global_edge_id(e.src, e.dst, ol.params) != e.id) {
      throw OrderError("ordered list: entry " + std::to_string(k) +
                       " id does not match its coordinates");
    }
    if (k > 0 && ol.entries[k - 1].id >= e.id) {
      throw OrderError("ordered list: ids not strictly increasing at entry " + std::to_string(k));
    }
  }
}

EdgeListGraph to_graph(const OrderedEdgeList& ol) {
  std::vector<Edge> edges;
  edges.reserve(ol.entries.size());
  for (const auto& e : ol.entries) {
    edges.push_back({e.src, e.dst, fx_decode({e.weight, ol.weight_format})});
  }
  return EdgeListGraph::from_edges(ol.raw_vertices, std::move(edges));
}

std::vector<TileRef> index_tiles(const OrderedEdgeList& ol) {
  std::vector<TileRef> refs;
  const std::uint64_t cells = ol.params.tile_cells();
  for (std::size_t k = 0; k < ol.entries.size(); ++k) {
    if (k > 0 && ol.entries[k - 1].id >= ol.entries[k].id) {
      throw OrderError("tile stream: input not sorted by global order at entry " +
                       std::to_string(k));
    }
    const std::uint64_t si = ol.entries[k].id / cells;
    if (refs.empty() || refs.back().order != si) {
      refs.push_back({si, k, k + 1});
    } else {
      refs.back().end = k + 1;
    }
  }
  return refs;
}

SubgraphTile empty_tile(std::uint64_t order, const TilingParams& p) {
  SubgraphTile t;
  t.order = order;
  const auto corner = cell_of_global_id(order * p.tile_cells(), p);
  t.block = block_coords(corner.row, corner.col, p.block);
  t.sub = subgraph_coords(corner.row, corner.col, p);
  t.rows = static_cast<std::uint32_t>(p.tile_rows());
  t.cols = static_cast<std::uint32_t>(p.tile_cols());
  t.cells.assign(p.tile_cells(), 0);
  t.present.assign(p.tile_cells(), 0);
  return t;
}

void densify(const OrderedEdgeList& ol, const TileRef& ref, SubgraphTile& tile) {
  const auto& p = ol.params;
  const auto corner = cell_of_global_id(ref.order * p.tile_cells(), p);
  tile.order = ref.order;
  tile.block = block_coords(corner.row, corner.col, p.block);
  tile.sub = subgraph_coords(corner.row, corner.col, p);
  tile.rows = static_cast<std::uint32_t>(p.tile_rows());
  tile.cols = static_cast<std::uint32_t>(p.tile_cols());
  tile.cells.assign(p.tile_cells(), 0);
  tile.present.assign(p.tile_cells(), 0);
  tile.nnz = static_cast<std::uint32_t>(ref.end - ref.begin);
  for (std::size_t k = ref.begin; k < ref.end; ++k) {
    const auto& e = ol.entries[k];
    const std::size_t r = e.src - corner.row;
    const std::size_t c = e.dst - corner.col;
    tile.cells[r * tile.cols + c] = e.weight;
    tile.present[r * tile.cols + c] = 1;
  }
}

TileStream::TileStream(const OrderedEdgeList& ol) : ol_(&ol), refs_(index_tiles(ol)) {}

std::optional<SubgraphTile> TileStream::next() {
  if (pos_ >= refs_.size()) return std::nullopt;
  SubgraphTile t;
  densify(*ol_, refs_[pos_++], t);
  return t;
}

std::vector<SubgraphTile> tile_stream(const OrderedEdgeList& ol) {
  std::vector<SubgraphTile> out;
  TileStream s(ol);
  while (auto t = s.next()) out.push_back(std::move(*t));
  return out;
}

std::vector<OrderedEntry> flatten_tiles(std::span<const SubgraphTile> tiles,
                                        const TilingParams& p) {
  std::vector<OrderedEntry> out;
  for (const auto& t : tiles) {
    const auto r0 = t.src_begin(p);
    const auto c0 = t.dst_begin(p);
    for (std::uint32_t c = 0; c < t.cols; ++c) {
      for (std::uint32_t r = 0; r < t.rows; ++r) {
        if (!t.has(r, c)) continue;
        const auto src = static_cast<VertexId>(r0 + r);
        const auto dst = static_cast<VertexId>(c0 + c);
        out.push_back({global_edge_id(src, dst, p), src, dst, t.at(r, c)});
      }
    }
  }
  return out;
}

namespace {

template <typename T>
void put_le(std::ostream& out, T v) {
  std::array<char, sizeof(T)> b{};
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    b[k] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * k)) & 0xFFu);
  }
  out.write(b.data(), b.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> b{};
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  if (!in) throw std::runtime_error("binary edge list: truncated input");
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) v |= std::uint64_t{b[k]} << (8 * k);
  return static_cast<T>(v);
}

}  // namespace

void write_binary(std::ostream& out, const OrderedEdgeList& ol) {
  const auto& p = ol.params;
  if (ol.weight_format != FxFormat::integer) {
    throw std::invalid_argument("binary edge list: only integer-format weights are stored");
  }
  if (p.crossbar_size > 0xFFFF || p.crossbars_per_ge > 0xFFFF || p.engines > 0xFFFF ||
      p.block > 0xFFFFFFFFull || ol.raw_vertices > 0xFFFFFFFFull) {
    throw std::invalid_argument("binary edge list: parameter exceeds header field width");
  }
  if (pad_params(ol.raw_vertices, p.crossbar_size, p.crossbars_per_ge, p.engines, p.block) != p) {
    throw std::invalid_argument("binary edge list: padded V must follow from V and B");
  }
  out.write("XBGR", 4);
  put_le<std::uint16_t>(out, kBinaryVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ol.raw_vertices));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(p.crossbar_size));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(p.crossbars_per_ge));
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(p.engines));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(p.block));
  put_le<std::uint64_t>(out, ol.entries.size());
  for (const auto& e : ol.entries) {
    put_le<std::uint32_t>(out, e.src);
    put_le<std::uint32_t>(out, e.dst);
    put_le<std::uint16_t>(out, e.weight);
  }
}

OrderedEdgeList read_binary(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "XBGR") {
    throw std::runtime_error("binary edge list: bad magic");
  }
  const auto version = get_le<std::uint16_t>(in);
  if (version != kBinaryVersion) {
    throw std::runtime_error("binary edge list: unsupported version " + std::to_string(version));
  }
  const auto raw_v = get_le<std::uint32_t>(in);
  const auto c = get_le<std::uint16_t>(in);
  const auto n = get_le<std::uint16_t>(in);
  const auto g = get_le<std::uint16_t>(in);
  const auto b = get_le<std::uint32_t>(in);
  const auto e = get_le<std::uint64_t>(in);

  OrderedEdgeList ol;
  ol.params = pad_params(raw_v, c, n, g, b);
  if (ol.params.block != b) {
    throw std::runtime_error("binary edge list: block size not a multiple of C*N*G");
  }
  ol.raw_vertices = raw_v;
  ol.weight_format = FxFormat::integer;
  ol.entries.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(e, 1u << 24)));
  for (std::uint64_t k = 0; k < e; ++k) {
    OrderedEntry entry;
    entry.src = get_le<std::uint32_t>(in);
    entry.dst = get_le<std::uint32_t>(in);
    entry.weight = get_le<std::uint16_t>(in);
    if (entry.src >= raw_v || entry.dst >= raw_v) {
      throw std::runtime_error("binary edge list: record " + std::to_string(k) +
                               " references a vertex >= V");
    }
    entry.id = global_edge_id(entry.src, entry.dst, ol.params);
    if (!ol.entries.empty() && ol.entries.back().id >= entry.id) {
      throw OrderError("binary edge list: records not in ascending global order");
    }
    ol.entries.push_back(entry);
  }
  return ol;
}

void save_binary(const std::string& path, const OrderedEdgeList& ol) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_binary(out, ol);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

OrderedEdgeList load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_binary(in);
}

}  // namespace xbgraph
