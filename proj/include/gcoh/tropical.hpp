#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcoh/graph.hpp"

namespace gcoh {

// Element of the min-plus semiring: an integer or infinity.
class TropicalValue {
 public:
  TropicalValue() = default;  // 0
  TropicalValue(std::int64_t v) : value_(v) {}
  static TropicalValue infinity();

  bool is_infinite() const { return inf_; }
  std::int64_t value() const;  // throws on infinity
  std::string to_string() const;

  friend bool operator==(const TropicalValue&, const TropicalValue&) = default;

 private:
  std::int64_t value_ = 0;
  bool inf_ = false;
};

TropicalValue tplus(const TropicalValue& a, const TropicalValue& b);   // min
TropicalValue ttimes(const TropicalValue& a, const TropicalValue& b);  // +
TropicalValue tdivide(const TropicalValue& a, const TropicalValue& b); // -, b finite

using Assignment = std::map<std::string, TropicalValue>;

struct TropicalExpr {
  enum class Kind { Variable, Constant, Plus, Times, Quotient, Clamp };
  Kind kind = Kind::Constant;
  std::string var;
  TropicalValue constant;
  std::vector<TropicalExpr> children;  // Quotient: {numerator, denominator}

  static TropicalExpr variable(std::string id);
  static TropicalExpr value(TropicalValue v);
  // Single operands collapse; an empty sum is infinity, an empty product 0.
  static TropicalExpr plus(std::vector<TropicalExpr> xs);
  static TropicalExpr times(std::vector<TropicalExpr> xs);
  static TropicalExpr quotient(TropicalExpr num, TropicalExpr den);
  static TropicalExpr clamp(TropicalExpr x);  // max(x, 0)

  friend bool operator==(const TropicalExpr&, const TropicalExpr&) = default;
};

TropicalValue eval(const TropicalExpr& e, const Assignment& a);

// k[R], 3, ∞, (a ⊕ b), (a ⊙ b), (a ⊘ b), max(a, 0).
std::string render(const TropicalExpr& e);
TropicalExpr parse_tropical(const std::string& text);

// sigma_i: sum of the i smallest values.
TropicalExpr elementary_symmetric(unsigned i, const std::vector<TropicalExpr>& xs);
TropicalExpr elementary_symmetric(unsigned i, const std::vector<std::string>& vars);
// Maximum written with min-plus operations only.
TropicalExpr tropical_max(const std::vector<TropicalExpr>& xs);

// Monomial k_a ⊙ k_b of an edge.
TropicalExpr edge_monomial(const WeightedGraph& g, int e);

// Contribution of a connected bipartite proper subgraph.
TropicalExpr g_delta(const Subgraph& d, const WeightedGraph& g);

struct EnumerationLimits {
  int max_vertices = 10;
  std::uint64_t max_subgraphs = std::uint64_t{1} << 22;  // edge masks examined
  static EnumerationLimits from_environment();  // reads GCOH_MAX_SUBGRAPHS
};

// Connected bipartite proper subgraphs that occur as a component of some
// reduction of g (g connected).
std::vector<Subgraph> candidate_subgraphs(const WeightedGraph& g, const EnumerationLimits& lim = {});

// The tropical torsion function of g; ResourceLimitError past the limits.
TropicalExpr z_gamma(const WeightedGraph& g, const EnumerationLimits& lim = {});

// sigma_1^{n-3} ⊙ sigma_3 in the given variables, n >= 3.
TropicalExpr z_complete(const std::vector<std::string>& vars);

// val_p of the weights, p odd.
Assignment valuation_assignment(const WeightedGraph& g, unsigned long p);

}  // namespace gcoh
