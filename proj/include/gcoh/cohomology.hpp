#pragma once

#include "gcoh/graph.hpp"
#include "gcoh/linalg.hpp"

namespace gcoh {

// Cochain over the vertices (degree 0) or edges (degree 1) of a graph.
// modulus == 0 means integer coefficients.
struct Chain {
  const WeightedGraph* graph = nullptr;
  int degree = 0;
  BigInt modulus = 0;
  Vec coeffs;  // indexed by parent vertex / edge

  static Chain zero(const WeightedGraph& g, int degree, const BigInt& modulus = 0);
  Chain reduced(const BigInt& q) const;
  bool is_zero() const;
  std::string to_string() const;
  friend bool operator==(const Chain& x, const Chain& y) {
    return x.degree == y.degree && x.modulus == y.modulus && x.coeffs == y.coeffs;
  }
};

// Rows = edges of g, columns = vertices of g; entry (e(v,w), v) = k_w.
IntMatrix d0_matrix(const Subgraph& g);
// Entry (e(v,w), v) = k_v k_w.
IntMatrix d0_edge_matrix(const Subgraph& g);

// d^0 of a degree 0 chain on the parent graph.
Chain coboundary(const Chain& z);

struct CohomologyGroups {
  AbelianGroup h0, h1;
};

CohomologyGroups cohomology_groups(const Subgraph& g);
CohomologyGroups cohomology_groups(const WeightedGraph& g);

// N with |p-torsion of H^1| = p^N.
unsigned torsion_order_p(const Subgraph& g, unsigned long p);
unsigned torsion_order_p(const WeightedGraph& g, unsigned long p);

// dim over Z/p of coker(H^0(Z/p^{s-1}) -> H^0(Z/p^s)).
unsigned critical_cohomology_dim(const Subgraph& g, unsigned long p, unsigned s);

// Generator of H^0 for a connected bipartite graph, absent otherwise.
std::optional<Chain> h0_generator(const Subgraph& g);

inline constexpr unsigned kDefaultGenerationCap = 4;

// Is every mod p^s cocycle a combination of p^d times divided fundamental
// classes of forest subgraphs with r - m >= s - d?
bool generation_check(const WeightedGraph& g, unsigned long p, unsigned s,
                      unsigned cap = kDefaultGenerationCap);

}  // namespace gcoh
