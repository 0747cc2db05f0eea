#pragma once

#include <cstdint>
#include <vector>

#include "xbgraph/fx16.hpp"

namespace xbgraph {

// Per-vertex property words plus the active list and out-degrees. Length is
// the padded vertex count; padding entries carry the program identity, are
// inactive and have out-degree 0.
struct VertexStateVector {
  FxFormat format = FxFormat::frac;
  std::vector<std::uint16_t> prop;
  std::vector<std::uint8_t> active;
  std::vector<std::uint32_t> outdegree;

  VertexStateVector() = default;
  VertexStateVector(std::size_t n, FxFormat fmt, std::uint16_t init)
      : format(fmt), prop(n, init), active(n, 0), outdegree(n, 0) {}

  std::size_t size() const { return prop.size(); }
  Fx16 at(std::size_t v) const { return {prop[v], format}; }
  double value(std::size_t v) const { return fx_decode(at(v)); }

  std::size_t active_count() const {
    std::size_t n = 0;
    for (auto a : active) n += a != 0;
    return n;
  }

  friend bool operator==(const VertexStateVector&, const VertexStateVector&) = default;
};

}  // namespace xbgraph
