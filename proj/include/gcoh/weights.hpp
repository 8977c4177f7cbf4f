#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcoh/forest.hpp"

namespace gcoh {

// |torsion H^1| of a tree: gcd(k) * prod k_v^{deg(v) - 1}.
BigInt tree_torsion(const Subgraph& tree);

// Constants of the edge-weighted complex.
struct EulerConstants {
  BigInt c0, c1, c2;
};
EulerConstants edge_weighted_constants(const Subgraph& g);

// Forest node count plus total valuation of the weights; odd p and no
// bipartite component, InputError otherwise.
unsigned hbe_count(const WeightedGraph& g, unsigned long p);

struct CorePart {
  Subgraph graph;
  std::optional<unsigned> r_sup;
  unsigned m = 0;
  bool bipartite = false;
  bool from_forest = true;  // false for a leftover one-vertex part
};

struct CoreDecomposition {
  Subgraph core;                    // union of the parts
  std::vector<int> special_edges;   // p = 2 only
  std::vector<CorePart> parts;
};

CoreDecomposition oriented_core(const FundamentalForest& f);
CoreDecomposition oriented_core(const WeightedGraph& g, unsigned long p);

// max val on E(D) <= r - 1 < r <= min val on the boundary, per forest part.
bool core_inequalities_hold(const CoreDecomposition& core, unsigned long p);

struct CoreRelation {
  bool applicable = false;
  std::string reason;  // why not, when not applicable
  unsigned core_exponent = 0;  // val_p of |torsion H^1(core)|
  unsigned level_sum = 0;      // sum of r - m over the parts
  unsigned value() const { return core_exponent + level_sum; }
};

// Throws std::logic_error if an applicable instance disagrees with the
// Smith normal form.
CoreRelation core_torsion_relation(const WeightedGraph& g, unsigned long p);

// Largest r with u, v in different components of reduce(g, p, r); 0 if
// none.  Indexed by parent vertices of g.
std::vector<std::vector<unsigned>> separation_levels(const Subgraph& g, unsigned long p);

// Spanning tree obtained by deleting maximal-valuation cycle edges, the
// largest edge index first.  InputError unless g is connected and
// orientable at its top level.
Subgraph weighted_spanning_tree(const Subgraph& g, unsigned long p);

// min val k + sum (deg_T(v) - 1) val k_v, checked against the Smith normal form.
unsigned oriented_torsion_exponent(const Subgraph& g, unsigned long p);

}  // namespace gcoh
