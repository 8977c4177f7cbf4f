#include <set>

#include "gcoh/cohomology.hpp"
#include "gcoh/orientation.hpp"

namespace gcoh {

bool generation_check(const WeightedGraph& g, unsigned long p, unsigned s, unsigned cap) {
  if (s == 0) throw InputError("generation check needs s >= 1");
  if (s > cap) throw ResourceLimitError("generation check: s exceeds the configured cap");
  if (!is_prime(p)) throw InputError("p must be prime");
  const BigInt q = ipow(p, s);

  unsigned top = 0;
  for (int e = 0; e < g.edge_count(); ++e) top = std::max(top, edge_valuation(g, e, p));
  std::set<Subgraph> seen;
  std::set<Vec> candidates;
  for (unsigned r = 1; r <= top + 1; ++r) {
    for (const auto& d : components(reduce(g, p, r))) {
      if (!seen.insert(d).second) continue;
      unsigned m = p_valuation(g.weight(d.vertices.front()), p);
      for (int v : d.vertices) m = std::min(m, p_valuation(g.weight(v), p));
      std::optional<unsigned> boundary;
      for (int e : edge_boundary(d, g)) {
        const unsigned val = edge_valuation(g, e, p);
        if (!boundary || val < *boundary) boundary = val;
      }
      for (unsigned shift = 0; shift < s; ++shift) {
        const unsigned t = s - shift;
        if (boundary && (*boundary < m || *boundary - m < t)) continue;
        const auto rep = is_orientable(d, p, t);
        if (!rep.orientable || !rep.orientation_class) continue;
        Vec v(g.vertex_count());
        const BigInt scale = ipow(p, shift);
        for (int i = 0; i < g.vertex_count(); ++i) v[i] = mod_floor(scale * rep.orientation_class->coeffs[i], q);
        candidates.insert(v);
      }
    }
  }
  const auto kernel = kernel_mod(d0_matrix(Subgraph::whole(g)), p, s);
  if (candidates.empty()) return kernel.empty();
  const std::vector<Vec> cols(candidates.begin(), candidates.end());
  IntMatrix span(g.vertex_count(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < g.vertex_count(); ++i) span.at(i, j) = cols[j][i];
  for (const auto& u : kernel)
    if (!solve_mod(span, u, p, s)) return false;
  return true;
}

}  // namespace gcoh
