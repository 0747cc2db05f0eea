#include "xbgraph/sparse.hpp"

#include <algorithm>
#include <numeric>

namespace xbgraph {

namespace {

struct Triple {
  VertexId row;
  VertexId col;
  double val;
};

std::vector<Triple> triples_of(const SparseRep& rep) {
  std::vector<Triple> out;
  out.reserve(rep.nnz());
  switch (rep.kind) {
    case SparseKind::coo:
      for (std::size_t k = 0; k < rep.nnz(); ++k) {
        out.push_back({rep.row_index[k], rep.col_index[k], rep.values[k]});
      }
      break;
    case SparseKind::csr:
      for (std::size_t r = 0; r < rep.rows; ++r) {
        for (auto k = rep.ptr[r]; k < rep.ptr[r + 1]; ++k) {
          out.push_back({static_cast<VertexId>(r), rep.col_index[k], rep.values[k]});
        }
      }
      break;
    case SparseKind::csc:
      for (std::size_t c = 0; c < rep.cols; ++c) {
        for (auto k = rep.ptr[c]; k < rep.ptr[c + 1]; ++k) {
          out.push_back({rep.row_index[k], static_cast<VertexId>(c), rep.values[k]});
        }
      }
      break;
  }
  return out;
}

SparseRep build(std::vector<Triple> t, std::size_t rows, std::size_t cols, SparseKind kind) {
  SparseRep rep;
  rep.kind = kind;
  rep.rows = rows;
  rep.cols = cols;
  const bool by_col = kind == SparseKind::csc;
  std::stable_sort(t.begin(), t.end(), [by_col](const Triple& a, const Triple& b) {
    if (by_col) return a.col != b.col ? a.col < b.col : a.row < b.row;
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  rep.values.reserve(t.size());
  for (const auto& x : t) rep.values.push_back(x.val);

  if (kind != SparseKind::csc) {
    rep.col_index.reserve(t.size());
    for (const auto& x : t) rep.col_index.push_back(x.col);
  }
  if (kind != SparseKind::csr) {
    rep.row_index.reserve(t.size());
    for (const auto& x : t) rep.row_index.push_back(x.row);
  }
  if (kind != SparseKind::coo) {
    const std::size_t dim = by_col ? cols : rows;
    rep.ptr.assign(dim + 1, 0);
    for (const auto& x : t) ++rep.ptr[(by_col ? x.col : x.row) + 1];
    std::partial_sum(rep.ptr.begin(), rep.ptr.end(), rep.ptr.begin());
  }
  return rep;
}

}  // namespace

SparseRep convert_representation(const EdgeListGraph& g, SparseKind kind) {
  std::vector<Triple> t;
  t.reserve(g.num_edges());
  for (const auto& e : g.edges()) t.push_back({e.src, e.dst, e.weight});
  return build(std::move(t), g.num_vertices(), g.num_vertices(), kind);
}

SparseRep convert_representation(const SparseRep& rep, SparseKind kind) {
  return build(triples_of(rep), rep.rows, rep.cols, kind);
}

EdgeListGraph to_graph(const SparseRep& rep) {
  std::vector<Edge> edges;
  edges.reserve(rep.nnz());
  for (const auto& t : triples_of(rep)) edges.push_back({t.row, t.col, t.val});
  return EdgeListGraph::from_edges(std::max(rep.rows, rep.cols), std::move(edges));
}

bool validate(const SparseRep& rep) {
  const auto nnz = rep.nnz();
  switch (rep.kind) {
    case SparseKind::coo:
      return rep.row_index.size() == nnz && rep.col_index.size() == nnz && rep.ptr.empty();
    case SparseKind::csr:
    case SparseKind::csc: {
      const bool csr = rep.kind == SparseKind::csr;
      const std::size_t dim = csr ? rep.rows : rep.cols;
      const auto& idx = csr ? rep.col_index : rep.row_index;
      if (rep.ptr.size() != dim + 1 || idx.size() != nnz) return false;
      if (rep.ptr.front() != 0 || rep.ptr.back() != nnz) return false;
      return std::is_sorted(rep.ptr.begin(), rep.ptr.end());
    }
  }
  return false;
}

}  // namespace xbgraph
