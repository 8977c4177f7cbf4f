#pragma once

#include <string>
#include <vector>

#include "gcoh/graph.hpp"
#include "gcoh/verify.hpp"

namespace fx {

using gcoh::BigInt;
using gcoh::WeightedGraph;

inline WeightedGraph make(std::vector<std::pair<std::string, BigInt>> vs,
                          std::vector<std::pair<std::string, std::string>> es) {
  return WeightedGraph(std::move(vs), es);
}

// the worked example: K3 on R, G, B with weights 27, 1, 3
inline WeightedGraph k3() { return make({{"R", 27}, {"G", 1}, {"B", 3}}, {{"R", "G"}, {"G", "B"}, {"R", "B"}}); }

inline WeightedGraph triangle(long a, long b, long c) {
  return make({{"u", a}, {"v", b}, {"w", c}}, {{"u", "v"}, {"v", "w"}, {"u", "w"}});
}

inline WeightedGraph edge(long a, long b) { return make({{"u", a}, {"v", b}}, {{"u", "v"}}); }

inline WeightedGraph complete(const std::vector<long>& weights) {
  std::vector<std::pair<std::string, BigInt>> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    vs.emplace_back(gcoh::vertex_name(static_cast<int>(i)), weights[i]);
    for (std::size_t j = 0; j < i; ++j) es.emplace_back(gcoh::vertex_name(static_cast<int>(j)), gcoh::vertex_name(static_cast<int>(i)));
  }
  return WeightedGraph(std::move(vs), es);
}

inline int vid(const WeightedGraph& g, const std::string& id) { return *g.index_of(id); }

inline int eid(const WeightedGraph& g, const std::string& a, const std::string& b) {
  return *g.edge_index(vid(g, a), vid(g, b));
}

inline gcoh::Rng rng(std::uint64_t seed) { return gcoh::Rng(seed); }

}  // namespace fx
