#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcoh/cohomology.hpp"

namespace gcoh {

struct ForestNode {
  int graph = 0;   // index into FundamentalForest::subgraphs
  unsigned level = 0;
  unsigned m = 0;
  std::optional<unsigned> r_sup;  // nullopt = infinity
};

// Pairs (D, r) with D an orientable component of reduce(g, p, r) and
// m(D) < r, together with the s / B / T maps.
struct FundamentalForest {
  unsigned long p = 0;
  const WeightedGraph* graph = nullptr;
  unsigned horizon = 0;  // levels 1..horizon are materialised
  std::vector<unsigned> vertex_valuation;

  // per subgraph D in S
  std::vector<Subgraph> subgraphs;
  std::vector<unsigned> m;
  std::vector<unsigned> lowest_level;
  std::vector<std::optional<unsigned>> r_sup;
  std::vector<bool> bipartite_component;  // D is a bipartite component of g
  std::vector<std::optional<unsigned>> r_low;  // absent on P(Min)
  std::vector<std::vector<int>> phi;           // subgraph indices
  std::vector<std::vector<int>> phantoms;      // vertices of D missed by phi(D)

  // per node
  std::vector<ForestNode> nodes;
  std::vector<std::optional<int>> s_map;
  std::vector<std::optional<int>> s_preimage;
  std::vector<int> b_map;
  std::vector<bool> in_h0;  // B(node) lies in Min0

  std::vector<int> min_set, min0_set, max0_set;
  std::vector<int> maximal;             // nodes not below any other node
  std::map<int, int> t_map;             // Min0 node -> Max0 node
  std::map<int, int> witness;           // minimal node -> vertex

  std::vector<int> orientation;  // sign per vertex of g, inherited from maximal elements

  std::optional<int> node_index(int subgraph, unsigned level) const;
  std::optional<int> subgraph_index(const Subgraph& d) const;
  std::string node_label(int node) const;  // "({G,B}, 2)"

 private:
  friend FundamentalForest build_forest(const WeightedGraph& g, unsigned long p);
  std::map<std::pair<int, unsigned>, int> node_lookup_;
  std::map<Subgraph, int> subgraph_lookup_;
};

FundamentalForest build_forest(const WeightedGraph& g, unsigned long p);

// Exponents e_i with p-torsion of H^1 = sum Z/p^{e_i}, sorted.
std::vector<unsigned> torsion_structure(const FundamentalForest& f);

std::string forest_to_dot(const FundamentalForest& f);

enum class GenKind { RhoMinus1, Rho0, Alpha0, Alpha1 };

struct Generator {
  GenKind kind;
  int graph;
  friend bool operator==(const Generator&, const Generator&) = default;
};

std::string generator_label(const FundamentalForest& f, const Generator& g);

// Three-term complex in degrees -1, 0, 1.
struct FundamentalComplex {
  unsigned long p = 0;
  std::vector<Generator> deg_m1, deg0, deg1;
  IntMatrix d_m1;  // deg0 x deg_m1
  IntMatrix d0;    // deg1 x deg0
  std::optional<int> index(const Generator& g) const;  // position within its degree
};

FundamentalComplex fundamental_complex(const FundamentalForest& f);
CohomologyGroups complex_cohomology(const FundamentalComplex& F);

// Comparison map into the cochain complex of the graph.
struct ChiMaps {
  IntMatrix degree0;  // vertices x deg0
  IntMatrix degree1;  // edges x deg1
};

ChiMaps chi(const FundamentalComplex& F, const FundamentalForest& f);
bool chi_is_chain_map(const ChiMaps& x, const FundamentalComplex& F, const WeightedGraph& g);
// Order of the subgroup of coker(d^0) generated by the degree 1 images.
BigInt chi_image_order(const ChiMaps& x, const WeightedGraph& g);

// Restriction along a subgraph inclusion.
struct Restriction {
  std::shared_ptr<const WeightedGraph> graph;  // the subgraph, standalone
  FundamentalForest forest;
  FundamentalComplex source, target;
  IntMatrix j_m1, j0, j1;  // target gens x source gens, per degree
};

Restriction restrict_to(const FundamentalForest& f, const Subgraph& d);
bool restriction_is_chain_map(const Restriction& r);

}  // namespace gcoh
