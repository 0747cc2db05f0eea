#include "xbgraph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace xbgraph {

EdgeListGraph EdgeListGraph::from_edges(std::size_t num_vertices, std::vector<Edge> edges,
                                        bool directed) {
  if (num_vertices > std::size_t{0xFFFFFFFFu}) {
    throw std::invalid_argument("graph: vertex count exceeds 32-bit id space");
  }
  for (const auto& e : edges) {
    if (e.src >= num_vertices || e.dst >= num_vertices) {
      throw std::invalid_argument("graph: edge (" + std::to_string(e.src) + "," +
                                  std::to_string(e.dst) + ") references a vertex >= " +
                                  std::to_string(num_vertices));
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw std::invalid_argument("graph: edge weight must be finite and non-negative");
    }
  }
  // Stable sort so that among duplicates the last input occurrence ends up last.
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  std::vector<Edge> unique;
  unique.reserve(edges.size());
  for (const auto& e : edges) {
    if (!unique.empty() && unique.back().src == e.src && unique.back().dst == e.dst) {
      unique.back().weight = e.weight;
    } else {
      unique.push_back(e);
    }
  }
  EdgeListGraph g;
  g.num_vertices_ = num_vertices;
  g.edges_ = std::move(unique);
  g.directed_ = directed;
  return g;
}

double EdgeListGraph::density() const {
  if (num_vertices_ == 0) return 0.0;
  const double v = static_cast<double>(num_vertices_);
  return static_cast<double>(edges_.size()) / (v * v);
}

namespace {

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_weight(const std::string& tok, double& out) {
  // from_chars for double is not available on every libstdc++ we target.
  std::size_t pos = 0;
  try {
    out = std::stod(tok, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == tok.size();
}

}  // namespace

EdgeListGraph parse_edge_list(std::istream& in, bool weighted) {
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  std::uint64_t declared_vertices = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#%");
    if (hash != std::string::npos) {
      // "# vertices N" declares trailing isolated vertices.
      std::istringstream cs(line.substr(hash + 1));
      std::string key;
      std::uint64_t declared = 0;
      if (cs >> key >> declared && key == "vertices") declared_vertices = declared;
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw ParseError("expected 'src dst [weight]', got " + std::to_string(tokens.size()) +
                           " fields",
                       line_no);
    }
    std::uint64_t src = 0;
    std::uint64_t dst = 0;
    if (!parse_number(tokens[0], src) || !parse_number(tokens[1], dst)) {
      throw ParseError("vertex ids must be non-negative decimal integers", line_no);
    }
    if (src >= 0xFFFFFFFFull || dst >= 0xFFFFFFFFull) {
      throw ParseError("vertex id exceeds 32-bit range", line_no);
    }
    double w = 1.0;
    if (weighted && tokens.size() == 3) {
      if (!parse_weight(tokens[2], w) || !std::isfinite(w) || w < 0.0) {
        throw ParseError("weight must be a finite non-negative number", line_no);
      }
    }
    max_id = std::max({max_id, src, dst});
    edges.push_back({static_cast<VertexId>(src), static_cast<VertexId>(dst), w});
  }
  if (edges.empty()) throw ParseError("empty input: no edges", 0);
  const auto n = std::max<std::uint64_t>(max_id + 1, declared_vertices);
  return EdgeListGraph::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

EdgeListGraph parse_edge_list(const std::string& text, bool weighted) {
  std::istringstream in(text);
  return parse_edge_list(in, weighted);
}

EdgeListGraph load_edge_list(const std::string& path, bool weighted) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  return parse_edge_list(in, weighted);
}

void write_edge_list(std::ostream& out, const EdgeListGraph& g, bool weighted) {
  out << "# vertices " << g.num_vertices() << " edges " << g.num_edges() << '\n';
  for (const auto& e : g.edges()) {
    out << e.src << ' ' << e.dst;
    if (weighted) out << ' ' << std::setprecision(17) << e.weight;
    out << '\n';
  }
}

std::vector<std::uint32_t> out_degrees(const EdgeListGraph& g) {
  std::vector<std::uint32_t> deg(g.num_vertices(), 0);
  for (const auto& e : g.edges()) ++deg[e.src];
  return deg;
}

}  // namespace xbgraph
