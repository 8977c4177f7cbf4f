#include "gcoh/cohomology.hpp"

#include <algorithm>

#include "gcoh/orientation.hpp"

namespace gcoh {

Chain Chain::zero(const WeightedGraph& g, int degree, const BigInt& modulus) {
  Chain c;
  c.graph = &g;
  c.degree = degree;
  c.modulus = modulus;
  c.coeffs.assign(degree == 0 ? g.vertex_count() : g.edge_count(), 0);
  return c;
}

Chain Chain::reduced(const BigInt& q) const {
  Chain c = *this;
  c.modulus = q;
  for (auto& x : c.coeffs) x = mod_floor(x, q);
  return c;
}

bool Chain::is_zero() const {
  for (const auto& x : coeffs)
    if (x != 0) return false;
  return true;
}

std::string Chain::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    const std::string label =
        degree == 0 ? graph->id(static_cast<int>(i)) : graph->edge_name(static_cast<int>(i));
    if (!out.empty()) out += coeffs[i] < 0 ? " - " : " + ";
    else if (coeffs[i] < 0) out += "-";
    const BigInt mag = abs(coeffs[i]);
    out += (mag == 1 ? std::string() : mag.get_str() + "*") + label;
  }
  return out.empty() ? "0" : out;
}

namespace {

IntMatrix edge_vertex_matrix(const Subgraph& g, bool edge_weighted) {
  const WeightedGraph& G = *g.parent;
  IntMatrix m(g.edges.size(), g.vertices.size());
  for (int v : g.vertices) m.col_labels.push_back(G.id(v));
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = G.edge(g.edges[i]);
    m.row_labels.push_back(G.edge_name(g.edges[i]));
    const auto ca = std::lower_bound(g.vertices.begin(), g.vertices.end(), e.a) - g.vertices.begin();
    const auto cb = std::lower_bound(g.vertices.begin(), g.vertices.end(), e.b) - g.vertices.begin();
    if (edge_weighted) {
      const BigInt k = G.weight(e.a) * G.weight(e.b);
      m.at(i, ca) = k;
      m.at(i, cb) = k;
    } else {
      m.at(i, ca) = G.weight(e.b);
      m.at(i, cb) = G.weight(e.a);
    }
  }
  return m;
}

}  // namespace

IntMatrix d0_matrix(const Subgraph& g) { return edge_vertex_matrix(g, false); }

IntMatrix d0_edge_matrix(const Subgraph& g) { return edge_vertex_matrix(g, true); }

Chain coboundary(const Chain& z) {
  if (z.degree != 0) throw std::invalid_argument("coboundary expects a degree 0 chain");
  const WeightedGraph& G = *z.graph;
  Chain out = Chain::zero(G, 1, z.modulus);
  for (int e = 0; e < G.edge_count(); ++e) {
    const Edge& ed = G.edge(e);
    out.coeffs[e] = z.coeffs[ed.a] * G.weight(ed.b) + z.coeffs[ed.b] * G.weight(ed.a);
    if (z.modulus != 0) out.coeffs[e] = mod_floor(out.coeffs[e], z.modulus);
  }
  return out;
}

CohomologyGroups cohomology_groups(const Subgraph& g) {
  const IntMatrix d = d0_matrix(g);
  CohomologyGroups out;
  if (d.rows == 0 || d.cols == 0) {
    out.h0.rank = d.cols;
    out.h1.rank = d.rows;
    return out;
  }
  const auto snf = smith_normal_form(d);
  out.h0.rank = d.cols - snf.rank;
  out.h1 = cokernel_from_diagonal(d.rows, snf.diagonal);
  return out;
}

CohomologyGroups cohomology_groups(const WeightedGraph& g) {
  return cohomology_groups(Subgraph::whole(g));
}

unsigned torsion_order_p(const Subgraph& g, unsigned long p) {
  unsigned n = 0;
  for (const auto& d : cohomology_groups(g).h1.divisors) n += p_valuation(d, p);
  return n;
}

unsigned torsion_order_p(const WeightedGraph& g, unsigned long p) {
  return torsion_order_p(Subgraph::whole(g), p);
}

unsigned critical_cohomology_dim(const Subgraph& g, unsigned long p, unsigned s) {
  if (s == 0) throw std::invalid_argument("critical cohomology needs s >= 1");
  const IntMatrix d = d0_matrix(g);
  const auto snf = smith_normal_form(d);
  const BigInt top = kernel_mod_size(snf, d.cols, p, s);
  const BigInt below = s > 1 ? kernel_mod_size(snf, d.cols, p, s - 1) : BigInt(1);
  if (!mpz_divisible_p(top.get_mpz_t(), below.get_mpz_t()))
    throw std::logic_error("coefficient inclusion is not injective on H^0");
  return p_valuation(top / below, p);
}

std::optional<Chain> h0_generator(const Subgraph& g) {
  if (components(g).size() != 1) return std::nullopt;
  auto bp = bipartition(g);
  if (!bp) return std::nullopt;
  return divided_fundamental_class(g, *bp);
}

}  // namespace gcoh
