#pragma once

#include <cstdint>
#include <vector>

#include "xbgraph/graph.hpp"

namespace xbgraph {

enum class SparseKind { coo, csr, csc };

// One struct for the three compressed layouts. Rows are sources, columns are
// destinations.
//   coo: row_index, col_index, values (row-major order)
//   csr: ptr (rows + 1), col_index, values
//   csc: ptr (cols + 1), row_index, values
struct SparseRep {
  SparseKind kind = SparseKind::coo;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> ptr;
  std::vector<VertexId> row_index;
  std::vector<VertexId> col_index;
  std::vector<double> values;

  std::size_t nnz() const { return values.size(); }
};

SparseRep convert_representation(const EdgeListGraph& g, SparseKind kind);

// Any layout to any other layout.
SparseRep convert_representation(const SparseRep& rep, SparseKind kind);

// Back to an edge list; the inverse of convert_representation.
EdgeListGraph to_graph(const SparseRep& rep);

// Pointer array checks: length, monotonicity, last == nnz.
bool validate(const SparseRep& rep);

}  // namespace xbgraph
