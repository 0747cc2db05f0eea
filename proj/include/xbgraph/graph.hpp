#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xbgraph {

using VertexId = std::uint32_t;

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// COO edge list. Edges are kept sorted by (src, dst) and unique; duplicates
// in the input resolve to the last weight seen. Self-loops are kept.
class EdgeListGraph {
 public:
  EdgeListGraph() = default;

  // Throws std::invalid_argument on an out-of-range id or a negative or
  // non-finite weight.
  static EdgeListGraph from_edges(std::size_t num_vertices, std::vector<Edge> edges,
                                  bool directed = true);

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  bool directed() const { return directed_; }

  // Edges / V^2.
  double density() const;

 private:
  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  bool directed_ = true;
};

// Lines are "src dst" or "src dst weight"; '#' and '%' start comments.
// With weighted == false any third column is ignored and every weight is 1.
EdgeListGraph parse_edge_list(std::istream& in, bool weighted);
EdgeListGraph parse_edge_list(const std::string& text, bool weighted);
EdgeListGraph load_edge_list(const std::string& path, bool weighted);

void write_edge_list(std::ostream& out, const EdgeListGraph& g, bool weighted);

std::vector<std::uint32_t> out_degrees(const EdgeListGraph& g);

}  // namespace xbgraph
