#include "gcoh/forest.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gcoh/orientation.hpp"

namespace gcoh {

namespace {

bool contains_vertices(const Subgraph& big, const Subgraph& small) {
  return std::includes(big.vertices.begin(), big.vertices.end(), small.vertices.begin(),
                       small.vertices.end());
}

BigInt exact_div(const BigInt& x, const BigInt& d, const char* what) {
  if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t())) throw std::logic_error(what);
  return x / d;
}

}  // namespace

std::optional<int> FundamentalForest::node_index(int subgraph, unsigned level) const {
  auto it = node_lookup_.find({subgraph, level});
  if (it == node_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FundamentalForest::subgraph_index(const Subgraph& d) const {
  auto it = subgraph_lookup_.find(d);
  if (it == subgraph_lookup_.end()) return std::nullopt;
  return it->second;
}

std::string FundamentalForest::node_label(int node) const {
  const ForestNode& n = nodes.at(node);
  std::string out = "({";
  const auto& vs = subgraphs[n.graph].vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += graph->id(vs[i]);
  }
  return out + "}, " + std::to_string(n.level) + ")";
}

FundamentalForest build_forest(const WeightedGraph& g, unsigned long p) {
  if (!is_prime(p)) throw InputError("p must be prime");
  FundamentalForest f;
  f.p = p;
  f.graph = &g;
  const int n = g.vertex_count();
  unsigned top = 0;
  for (int v = 0; v < n; ++v) {
    f.vertex_valuation.push_back(p_valuation(g.weight(v), p));
    top = std::max(top, f.vertex_valuation.back());
  }
  for (int e = 0; e < g.edge_count(); ++e) top = std::max(top, edge_valuation(g, e, p));
  f.horizon = top + 1;

  std::vector<unsigned> highest;
  // per level: vertex -> node covering it (or -1)
  std::vector<std::vector<int>> cover(f.horizon + 2, std::vector<int>(n, -1));
  for (unsigned r = 1; r <= f.horizon; ++r) {
    for (const auto& c : components(reduce(g, p, r))) {
      unsigned mm = f.vertex_valuation[c.vertices.front()];
      for (int v : c.vertices) mm = std::min(mm, f.vertex_valuation[v]);
      if (mm >= r) continue;
      if (!is_orientable(c, p, r).orientable) continue;
      int idx;
      if (auto found = f.subgraph_index(c)) {
        idx = *found;
        if (highest[idx] + 1 != r) throw std::logic_error("forest levels of a subgraph are not contiguous");
        highest[idx] = r;
      } else {
        idx = static_cast<int>(f.subgraphs.size());
        f.subgraphs.push_back(c);
        f.subgraph_lookup_[c] = idx;
        f.m.push_back(mm);
        f.lowest_level.push_back(r);
        highest.push_back(r);
      }
      const int node = static_cast<int>(f.nodes.size());
      f.nodes.push_back({idx, r, mm, std::nullopt});
      f.node_lookup_[{idx, r}] = node;
      for (int v : c.vertices) cover[r][v] = node;
    }
  }

  const std::size_t S = f.subgraphs.size();
  f.bipartite_component.assign(S, false);
  std::vector<int> bip_tops;
  for (const auto& c : components(g)) {
    if (!bipartition(c)) continue;
    auto idx = f.subgraph_index(c);
    if (!idx || highest[*idx] != f.horizon)
      throw std::logic_error("bipartite component missing at the forest horizon");
    f.bipartite_component[*idx] = true;
    bip_tops.push_back(*f.node_index(*idx, f.horizon));
  }
  f.r_sup.resize(S);
  f.r_low.resize(S);
  f.phi.resize(S);
  f.phantoms.resize(S);
  for (std::size_t d = 0; d < S; ++d) {
    if (!f.bipartite_component[d]) f.r_sup[d] = highest[d];
    if (f.lowest_level[d] == f.m[d] + 1) continue;  // in P(Min)
    const unsigned rl = f.lowest_level[d] - 1;
    f.r_low[d] = rl;
    std::set<int> covered;
    for (int v : f.subgraphs[d].vertices) {
      const int node = cover[rl][v];
      if (node < 0) continue;
      const int o = f.nodes[node].graph;
      if (std::find(f.phi[d].begin(), f.phi[d].end(), o) == f.phi[d].end()) f.phi[d].push_back(o);
      covered.insert(v);
    }
    std::sort(f.phi[d].begin(), f.phi[d].end());
    for (int v : f.subgraphs[d].vertices)
      if (!covered.count(v)) {
        if (f.vertex_valuation[v] != rl) throw std::logic_error("phantom vertex with unexpected valuation");
        f.phantoms[d].push_back(v);
      }
  }
  for (auto& node : f.nodes) node.r_sup = f.r_sup[node.graph];

  const std::size_t N = f.nodes.size();
  f.s_map.assign(N, std::nullopt);
  f.s_preimage.assign(N, std::nullopt);
  for (std::size_t a = 0; a < N; ++a) {
    const ForestNode& nd = f.nodes[a];
    if (nd.level == nd.m + 1) {
      f.min_set.push_back(static_cast<int>(a));
      continue;
    }
    const Subgraph& D = f.subgraphs[nd.graph];
    int v0 = -1;
    for (int v : D.vertices)
      if (f.vertex_valuation[v] == nd.m) {
        v0 = v;
        break;
      }
    const int below = cover[nd.level - 1][v0];
    if (below < 0) throw std::logic_error("s-map target missing");
    const ForestNode& bn = f.nodes[below];
    if (bn.m != nd.m || !contains_vertices(D, f.subgraphs[bn.graph]))
      throw std::logic_error("s-map target is not a subgraph with equal m");
    f.s_map[a] = below;
    if (f.s_preimage[below]) throw std::logic_error("s-map is not injective");
    f.s_preimage[below] = static_cast<int>(a);
  }
  f.b_map.resize(N);
  for (std::size_t a = 0; a < N; ++a) {
    int x = static_cast<int>(a);
    while (f.s_map[x]) x = *f.s_map[x];
    f.b_map[a] = x;
  }
  std::set<int> used_witness;
  for (int a : f.min_set) {
    const Subgraph& D = f.subgraphs[f.nodes[a].graph];
    for (int v : D.vertices)
      if (f.vertex_valuation[v] == f.nodes[a].m) {
        f.witness[a] = v;
        break;
      }
    if (!used_witness.insert(f.witness[a]).second) throw std::logic_error("witness map is not injective");
  }
  std::set<int> excluded;
  for (int t : bip_tops) excluded.insert(f.b_map[t]);
  for (int a : f.min_set)
    if (!excluded.count(a)) f.min0_set.push_back(a);
  std::set<int> min0(f.min0_set.begin(), f.min0_set.end());
  f.in_h0.assign(N, false);
  for (std::size_t a = 0; a < N; ++a) f.in_h0[a] = min0.count(f.b_map[a]) > 0;
  std::set<int> tops;
  for (int a : f.min0_set) {
    int x = a;
    while (f.s_preimage[x]) x = *f.s_preimage[x];
    f.t_map[a] = x;
    tops.insert(x);
  }
  f.max0_set.assign(tops.begin(), tops.end());

  for (std::size_t a = 0; a < N; ++a) {
    const ForestNode& nd = f.nodes[a];
    bool top_here = nd.level == f.horizon;
    if (!top_here) {
      const int v0 = f.subgraphs[nd.graph].vertices.front();
      top_here = cover[nd.level + 1][v0] < 0;
    }
    if (top_here) f.maximal.push_back(static_cast<int>(a));
  }

  f.orientation.assign(n, 0);
  for (int x : f.maximal) {
    const ForestNode& nd = f.nodes[x];
    const Subgraph& D = f.subgraphs[nd.graph];
    auto bp = bipartition(D);
    if (!bp && p == 2) bp = bipartition(reduce(D, 2, nd.level - 1));
    if (!bp) throw std::logic_error("maximal forest element without a bipartitioning");
    for (int v : D.vertices) {
      if (f.orientation[v] != 0) throw std::logic_error("maximal forest elements overlap");
      f.orientation[v] = (*bp)[v];
    }
  }
  return f;
}

std::vector<unsigned> torsion_structure(const FundamentalForest& f) {
  std::vector<unsigned> out;
  for (const auto& [a, t] : f.t_map) out.push_back(f.nodes[t].level - f.nodes[a].m);
  std::sort(out.begin(), out.end());
  return out;
}

std::string forest_to_dot(const FundamentalForest& f) {
  std::ostringstream os;
  os << "digraph forest {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t a = 0; a < f.nodes.size(); ++a) {
    os << "  n" << a << " [label=\"" << f.node_label(static_cast<int>(a)) << "\"";
    if (std::find(f.min0_set.begin(), f.min0_set.end(), static_cast<int>(a)) != f.min0_set.end())
      os << ", peripheries=2";
    os << "];\n";
  }
  for (std::size_t a = 0; a < f.nodes.size(); ++a)
    if (f.s_map[a]) os << "  n" << a << " -> n" << *f.s_map[a] << " [color=red, label=\"s\"];\n";
  int tail = 0;
  for (std::size_t a = 0; a < f.nodes.size(); ++a) {
    const ForestNode& nd = f.nodes[a];
    if (nd.r_sup || nd.level != f.horizon) continue;
    std::string verts = f.node_label(static_cast<int>(a));
    verts = verts.substr(1, verts.rfind(',') - 1);
    os << "  inf" << tail << " [shape=plaintext, label=\"(" << verts << ", r > " << f.horizon
       << ") ... ∞\"];\n";
    os << "  inf" << tail << " -> n" << a << " [color=red, style=dashed, label=\"s\"];\n";
    ++tail;
  }
  os << "}\n";
  return os.str();
}

std::string generator_label(const FundamentalForest& f, const Generator& g) {
  static const char* names[] = {"rho-1", "rho0", "alpha0", "alpha1"};
  return std::string(names[static_cast<int>(g.kind)]) + f.subgraphs.at(g.graph).name();
}

std::optional<int> FundamentalComplex::index(const Generator& g) const {
  const auto& list = g.kind == GenKind::RhoMinus1 ? deg_m1 : g.kind == GenKind::Alpha1 ? deg1 : deg0;
  auto it = std::find(list.begin(), list.end(), g);
  if (it == list.end()) return std::nullopt;
  return static_cast<int>(it - list.begin());
}

FundamentalComplex fundamental_complex(const FundamentalForest& f) {
  FundamentalComplex F;
  F.p = f.p;
  const int S = static_cast<int>(f.subgraphs.size());
  for (int d = 0; d < S; ++d)
    if (f.r_low[d]) {
      F.deg_m1.push_back({GenKind::RhoMinus1, d});
      F.deg0.push_back({GenKind::Rho0, d});
    }
  for (int d = 0; d < S; ++d) F.deg0.push_back({GenKind::Alpha0, d});
  for (int d = 0; d < S; ++d)
    if (!f.bipartite_component[d]) F.deg1.push_back({GenKind::Alpha1, d});

  std::vector<int> rho0(S, -1), alpha0(S, -1), alpha1(S, -1);
  for (std::size_t i = 0; i < F.deg0.size(); ++i)
    (F.deg0[i].kind == GenKind::Rho0 ? rho0 : alpha0)[F.deg0[i].graph] = static_cast<int>(i);
  for (std::size_t i = 0; i < F.deg1.size(); ++i) alpha1[F.deg1[i].graph] = static_cast<int>(i);

  const unsigned long p = f.p;
  F.d0 = IntMatrix(F.deg1.size(), F.deg0.size());
  for (std::size_t j = 0; j < F.deg0.size(); ++j) {
    const int d = F.deg0[j].graph;
    if (F.deg0[j].kind == GenKind::Alpha0) {
      if (f.r_sup[d]) F.d0.at(alpha1[d], j) += ipow(p, *f.r_sup[d] - f.m[d]);
    } else {
      if (f.r_sup[d]) F.d0.at(alpha1[d], j) += ipow(p, *f.r_sup[d] - *f.r_low[d]);
      for (int o : f.phi[d])
        if (alpha1[o] >= 0) F.d0.at(alpha1[o], j) -= 1;
    }
  }
  F.d_m1 = IntMatrix(F.deg0.size(), F.deg_m1.size());
  for (std::size_t j = 0; j < F.deg_m1.size(); ++j) {
    const int d = F.deg_m1[j].graph;
    F.d_m1.at(alpha0[d], j) += 1;
    F.d_m1.at(rho0[d], j) -= ipow(p, *f.r_low[d] - f.m[d]);
    for (int o : f.phi[d]) F.d_m1.at(alpha0[o], j) -= ipow(p, f.m[o] - f.m[d]);
  }
  for (const auto& g : F.deg_m1) F.d_m1.col_labels.push_back(generator_label(f, g));
  for (const auto& g : F.deg0) {
    F.d_m1.row_labels.push_back(generator_label(f, g));
    F.d0.col_labels.push_back(generator_label(f, g));
  }
  for (const auto& g : F.deg1) F.d0.row_labels.push_back(generator_label(f, g));
  if (!(F.d0 * F.d_m1).is_zero()) throw std::logic_error("fundamental complex: d o d != 0");
  return F;
}

CohomologyGroups complex_cohomology(const FundamentalComplex& F) {
  CohomologyGroups out;
  const std::size_t n0 = F.deg0.size();
  out.h1 = cokernel_structure(F.d0);
  if (n0 == 0) return out;
  // coordinates of im d^{-1} in a basis of ker d^0
  IntMatrix coords;
  std::size_t k;
  if (F.deg1.empty()) {
    k = n0;
    coords = F.d_m1;
  } else {
    const auto snf = smith_normal_form(F.d0);
    k = n0 - snf.rank;
    const IntMatrix full = snf.V_inv * F.d_m1;
    coords = IntMatrix(k, F.deg_m1.size());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < F.deg_m1.size(); ++j) coords.at(i, j) = full.at(snf.rank + i, j);
  }
  out.h0 = cokernel_structure(coords);
  out.h0.rank = k - (coords.cols == 0 ? 0 : smith_normal_form(coords).rank);
  return out;
}

ChiMaps chi(const FundamentalComplex& F, const FundamentalForest& f) {
  const WeightedGraph& g = *f.graph;
  ChiMaps x;
  x.degree0 = IntMatrix(g.vertex_count(), F.deg0.size());
  x.degree1 = IntMatrix(g.edge_count(), F.deg1.size());
  for (std::size_t j = 0; j < F.deg0.size(); ++j) {
    const int d = F.deg0[j].graph;
    if (F.deg0[j].kind == GenKind::Alpha0) {
      const BigInt scale = ipow(f.p, f.m[d]);
      for (int v : f.subgraphs[d].vertices)
        x.degree0.at(v, j) = exact_div(f.orientation[v] * g.weight(v), scale, "chi: weight below m");
    } else {
      const BigInt scale = ipow(f.p, *f.r_low[d]);
      for (int v : f.phantoms[d])
        x.degree0.at(v, j) = exact_div(f.orientation[v] * g.weight(v), scale, "chi: phantom weight");
    }
  }
  for (std::size_t j = 0; j < F.deg1.size(); ++j) {
    const int d = F.deg1[j].graph;
    const Subgraph& D = f.subgraphs[d];
    const BigInt scale = ipow(f.p, *f.r_sup[d]);
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      BigInt val = 0;
      if (D.has_vertex(ed.a)) val += f.orientation[ed.a] * g.weight(ed.a) * g.weight(ed.b);
      if (D.has_vertex(ed.b)) val += f.orientation[ed.b] * g.weight(ed.b) * g.weight(ed.a);
      x.degree1.at(e, j) = exact_div(val, scale, "chi: coboundary of a fundamental chain not divisible");
    }
  }
  return x;
}

bool chi_is_chain_map(const ChiMaps& x, const FundamentalComplex& F, const WeightedGraph& g) {
  const IntMatrix dC = d0_matrix(Subgraph::whole(g));
  return dC * x.degree0 == x.degree1 * F.d0 && (x.degree0 * F.d_m1).is_zero();
}

BigInt chi_image_order(const ChiMaps& x, const WeightedGraph& g) {
  if (g.edge_count() == 0) return 1;
  const IntMatrix dC = d0_matrix(Subgraph::whole(g));
  IntMatrix both(dC.rows, dC.cols + x.degree1.cols);
  for (std::size_t i = 0; i < dC.rows; ++i) {
    for (std::size_t j = 0; j < dC.cols; ++j) both.at(i, j) = dC.at(i, j);
    for (std::size_t j = 0; j < x.degree1.cols; ++j) both.at(i, dC.cols + j) = x.degree1.at(i, j);
  }
  const auto small = smith_normal_form(dC);
  const auto big = smith_normal_form(both);
  if (small.rank != big.rank) throw std::logic_error("chi image is not torsion");
  BigInt a = 1, b = 1;
  for (const auto& d : small.diagonal) a *= d;
  for (const auto& d : big.diagonal) b *= d;
  return exact_div(a, b, "chi image index");
}

Restriction restrict_to(const FundamentalForest& f, const Subgraph& d) {
  Restriction R;
  R.graph = std::make_shared<const WeightedGraph>(as_graph(d));
  R.forest = build_forest(*R.graph, f.p);
  R.source = fundamental_complex(f);
  R.target = fundamental_complex(R.forest);
  const FundamentalForest& t = R.forest;
  const unsigned long p = f.p;
  R.j_m1 = IntMatrix(R.target.deg_m1.size(), R.source.deg_m1.size());
  R.j0 = IntMatrix(R.target.deg0.size(), R.source.deg0.size());
  R.j1 = IntMatrix(R.target.deg1.size(), R.source.deg1.size());

  auto power = [p](long e) {
    if (e < 0) throw std::logic_error("restriction: negative exponent");
    return ipow(p, static_cast<unsigned>(e));
  };
  auto put = [](IntMatrix& m, const FundamentalComplex& C, Generator g, std::size_t col, const BigInt& v) {
    if (auto row = C.index(g)) m.at(*row, col) += v;
  };

  auto image = [&](const Generator& src, std::size_t col) {
    const int o = src.graph;
    const Subgraph inter = transfer(f.subgraphs[o], *R.graph);
    for (const auto& psi : components(inter)) {
      auto idx = t.subgraph_index(psi);
      if (!idx) throw std::logic_error("restriction: component not in the target forest");
      const int q = *idx;
      const int v0 = psi.vertices.front();
      const int v0g = *f.graph->index_of(R.graph->id(v0));
      const int eps = t.orientation[v0] * f.orientation[v0g];
      if (eps == 0) throw std::logic_error("restriction: unoriented vertex");
      const long dm = static_cast<long>(t.m[q]) - static_cast<long>(f.m[o]);
      const bool same_low = psi.vertices.size() > 1 && t.r_low[q] && f.r_low[o] && *t.r_low[q] == *f.r_low[o];
      switch (src.kind) {
        case GenKind::RhoMinus1:
          if (same_low) put(R.j_m1, R.target, {GenKind::RhoMinus1, q}, col, eps * power(dm));
          break;
        case GenKind::Rho0:
          if (same_low) {
            put(R.j0, R.target, {GenKind::Rho0, q}, col, BigInt(eps));
          } else if (psi.vertices.size() == 1) {
            const auto& ph = f.phantoms[o];
            if (std::find(ph.begin(), ph.end(), v0g) != ph.end())
              put(R.j0, R.target, {GenKind::Alpha0, q}, col, BigInt(eps));
          }
          break;
        case GenKind::Alpha0:
          put(R.j0, R.target, {GenKind::Alpha0, q}, col, eps * power(dm));
          break;
        case GenKind::Alpha1:
          if (t.r_sup[q])
            put(R.j1, R.target, {GenKind::Alpha1, q}, col,
                eps * power(static_cast<long>(*t.r_sup[q]) - static_cast<long>(*f.r_sup[o])));
          break;
      }
    }
  };
  for (std::size_t j = 0; j < R.source.deg_m1.size(); ++j) image(R.source.deg_m1[j], j);
  for (std::size_t j = 0; j < R.source.deg0.size(); ++j) image(R.source.deg0[j], j);
  for (std::size_t j = 0; j < R.source.deg1.size(); ++j) image(R.source.deg1[j], j);
  return R;
}

bool restriction_is_chain_map(const Restriction& r) {
  return r.j0 * r.source.d_m1 == r.target.d_m1 * r.j_m1 && r.j1 * r.source.d0 == r.target.d0 * r.j0;
}

}  // namespace gcoh
