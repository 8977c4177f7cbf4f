#include "gcoh/orientation.hpp"

#include <algorithm>

namespace gcoh {

const char* to_string(RingKind r) {
  switch (r) {
    case RingKind::Integers: return "integers";
    case RingKind::Field: return "field";
    case RingKind::Modular: return "modular";
  }
  return "?";
}

const char* to_string(OrientationMethod m) {
  switch (m) {
    case OrientationMethod::Bipartite: return "bipartite";
    case OrientationMethod::OddPrime: return "odd-prime";
    case OrientationMethod::TwoAdic: return "two-adic";
    case OrientationMethod::CriticalDimension: return "critical-dimension";
  }
  return "?";
}

Chain fundamental_chain(const Subgraph& d, const Bipartition& a) {
  const WeightedGraph& G = *d.parent;
  if (static_cast<int>(a.sign.size()) != G.vertex_count())
    throw std::invalid_argument("bipartition does not match the graph");
  for (int v : d.vertices)
    if (a[v] != 1 && a[v] != -1) throw std::invalid_argument("bipartition misses a vertex");
  for (int e : d.edges)
    if (a[G.edge(e).a] == a[G.edge(e).b])
      throw std::invalid_argument("not a bipartition: edge " + G.edge_name(e));
  Chain c = Chain::zero(G, 0);
  for (int v : d.vertices) c.coeffs[v] = a[v] * G.weight(v);
  return c;
}

Chain divided_fundamental_class(const Subgraph& d, const Bipartition& a) {
  Chain c = fundamental_chain(d, a);
  BigInt g = 0;
  for (int v : d.vertices) g = gcd(g, d.parent->weight(v));
  if (g > 1)
    for (auto& x : c.coeffs) x /= g;
  return c;
}

OrientationReport is_orientable_over_integers(const Subgraph& d) {
  OrientationReport out;
  out.ring = RingKind::Integers;
  out.bipartition = bipartition(d);
  out.orientable = out.bipartition.has_value();
  if (out.orientable && components(d).size() == 1)
    out.orientation_class = divided_fundamental_class(d, *out.bipartition);
  return out;
}

namespace {

BigInt weight_gcd(const Subgraph& d) {
  BigInt g = 0;
  for (int v : d.vertices) g = gcd(g, d.parent->weight(v));
  return g;
}

bool is_reduced(const Subgraph& d, unsigned long p, unsigned s) {
  return std::all_of(d.edges.begin(), d.edges.end(),
                     [&](int e) { return edge_valuation(*d.parent, e, p) < s; });
}

struct ComponentVerdict {
  bool orientable = false;
  OrientationMethod method = OrientationMethod::Bipartite;
  std::optional<Bipartition> bp;
};

ComponentVerdict decide_component(const Subgraph& c, unsigned long p, unsigned s) {
  ComponentVerdict out;
  if (is_reduced(c, p, s)) {
    if (auto bp = bipartition(c)) {
      out.orientable = true;
      out.bp = bp;
      out.method = OrientationMethod::Bipartite;
    } else if (p != 2) {
      out.method = OrientationMethod::OddPrime;
    } else {
      out.method = OrientationMethod::TwoAdic;
      auto bp2 = bipartition(reduce(c, 2, s - 1));
      if (bp2 && p_valuation(weight_gcd(c), 2) == 0) {
        out.orientable = true;
        out.bp = bp2;
      }
    }
    return out;
  }
  out.method = OrientationMethod::CriticalDimension;
  out.orientable = critical_cohomology_dim(c, p, s) == 1;
  if (!out.orientable) return out;
  // pick a bipartitioning whose divided class is an orientation class
  std::vector<Subgraph> tries{c, reduce(c, p, s)};
  if (s > 1) tries.push_back(reduce(c, p, s - 1));
  for (const auto& t : tries) {
    if (components(t).size() != 1) continue;
    auto bp = bipartition(t);
    if (!bp) continue;
    Chain z = divided_fundamental_class(t, *bp);
    try {
      if (is_orientation_class(z.reduced(ipow(p, s)), c, p, s)) {
        out.bp = bp;
        break;
      }
    } catch (const InputError&) {
      // not a cocycle on c
    }
  }
  return out;
}

}  // namespace

OrientationReport is_orientable(const Subgraph& d, unsigned long p, unsigned s) {
  if (s == 0) throw std::invalid_argument("orientability needs s >= 1");
  if (!is_prime(p)) throw std::invalid_argument("modulus base must be prime");
  OrientationReport out;
  out.ring = s == 1 ? RingKind::Field : RingKind::Modular;
  out.p = p;
  out.s = s;
  out.orientable = true;
  const auto comps = components(d);
  bool all_ch = false;
  for (const auto& c : comps) {
    const auto v = decide_component(c, p, s);
    out.method = v.method;
    all_ch = all_ch || v.method == OrientationMethod::CriticalDimension;
    if (!v.orientable) {
      out.orientable = false;
      break;
    }
    if (comps.size() == 1) out.bipartition = v.bp;
  }
  if (all_ch) out.method = OrientationMethod::CriticalDimension;
  if (out.orientable && comps.size() == 1) {
    if (out.bipartition) {
      // a two-adic bipartitioning only covers the reduced graph
      Subgraph carrier = d;
      carrier.edges.clear();
      for (int e : d.edges) {
        const Edge& ed = d.parent->edge(e);
        if ((*out.bipartition)[ed.a] != (*out.bipartition)[ed.b]) carrier.edges.push_back(e);
      }
      Chain z = divided_fundamental_class(carrier, *out.bipartition);
      out.orientation_class = z.reduced(ipow(p, s));
    } else {
      for (auto& u : kernel_mod(d0_matrix(d), p, s)) {
        Chain z = Chain::zero(*d.parent, 0, ipow(p, s));
        for (std::size_t i = 0; i < d.vertices.size(); ++i) z.coeffs[d.vertices[i]] = u[i];
        if (is_orientation_class(z, d, p, s)) {
          out.orientation_class = z;
          break;
        }
      }
    }
  }
  return out;
}

bool is_orientation_class(const Chain& z, const Subgraph& d, unsigned long p, unsigned s) {
  if (components(d).size() != 1) throw std::invalid_argument("orientation classes need a connected graph");
  const BigInt q = ipow(p, s);
  const BigInt low = ipow(p, s - 1);
  Vec zd;
  for (int v : d.vertices) zd.push_back(mod_floor(z.coeffs.at(v), q));
  const IntMatrix m = d0_matrix(d);
  for (const auto& x : m * zd)
    if (mod_floor(x, q) != 0) throw InputError("chain is not a cocycle mod p^s");
  auto annihilated = [&](const Vec& w) {
    return std::all_of(w.begin(), w.end(), [&](const BigInt& x) { return mod_floor(low * x, q) == 0; });
  };
  if (annihilated(zd)) return false;
  for (const auto& u : kernel_mod(m, p, s)) {
    bool found = false;
    for (unsigned long n = 0; n < p && !found; ++n) {
      Vec w(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - BigInt(n) * zd[i];
      found = annihilated(w);
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace gcoh
