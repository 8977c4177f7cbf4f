#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "gcoh/graph.hpp"

namespace gcoh {

using Rng = std::mt19937_64;
using WeightDraw = std::function<BigInt(Rng&)>;

// "A".."Z", then "V026", "V027", ...
std::string vertex_name(int i);

// Random spanning tree plus extra edges with the given probability.
WeightedGraph random_connected_graph(Rng& rng, int n, double extra_edge_prob, const WeightDraw& weight);
WeightedGraph random_tree(Rng& rng, int n, const WeightDraw& weight);
WeightedGraph random_bipartite_graph(Rng& rng, int n, double extra_edge_prob, const WeightDraw& weight);

// p^a times a unit coprime to p, a uniform in [0, max_valuation].
WeightDraw prime_power_weights(unsigned long p, unsigned max_valuation, bool with_units);

// Disjoint union; identifiers get the prefixes "a." and "b.".
WeightedGraph disjoint_union(const WeightedGraph& x, const WeightedGraph& y);

struct VerificationConfig {
  std::size_t instances = 500;
  int max_vertices = 6;
  unsigned max_valuation = 4;
  std::vector<unsigned long> primes{3, 5};
  std::uint64_t seed = 42;
  unsigned parallelism = 0;  // 0: hardware concurrency
  bool inject_fault = false;  // harness self-test: corrupts the forest exponents
};

struct PropertyResult {
  std::string name;
  std::size_t passed = 0, failed = 0, skipped = 0;
  nlohmann::json counterexample;  // null unless failed
};

struct VerificationSummary {
  std::vector<PropertyResult> properties;
  bool all_passed() const;
  nlohmann::json to_json(const VerificationConfig& cfg) const;
};

VerificationSummary run_verification(const VerificationConfig& cfg);

}  // namespace gcoh
