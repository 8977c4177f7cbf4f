#include "gcoh/weights.hpp"

#include <algorithm>

#include "gcoh/orientation.hpp"

namespace gcoh {

namespace {

bool is_tree(const Subgraph& g) {
  return !g.empty() && g.edges.size() + 1 == g.vertices.size() && components(g).size() == 1;
}

std::vector<int> degrees(const Subgraph& g) {
  std::vector<int> deg(g.parent->vertex_count(), 0);
  for (int e : g.edges) {
    ++deg[g.parent->edge(e).a];
    ++deg[g.parent->edge(e).b];
  }
  return deg;
}

unsigned max_edge_valuation(const Subgraph& g, unsigned long p) {
  unsigned top = 0;
  for (int e : g.edges) top = std::max(top, edge_valuation(*g.parent, e, p));
  return top;
}

}  // namespace

BigInt tree_torsion(const Subgraph& tree) {
  if (!is_tree(tree)) throw InputError("tree_torsion expects a tree");
  const WeightedGraph& G = *tree.parent;
  const auto deg = degrees(tree);
  BigInt num = 0, den = 1;
  for (int v : tree.vertices) num = gcd(num, G.weight(v));
  for (int v : tree.vertices) {
    if (deg[v] == 0)
      den *= G.weight(v);
    else
      for (int i = 1; i < deg[v]; ++i) num *= G.weight(v);
  }
  return num / den;
}

EulerConstants edge_weighted_constants(const Subgraph& g) {
  EulerConstants c{1, 1, 1};
  for (const auto& comp : components(g)) {
    if (!bipartition(comp)) continue;
    BigInt k = 0;
    for (int v : comp.vertices) k = gcd(k, g.parent->weight(v));
    c.c0 *= k;
  }
  for (int v : g.vertices) c.c1 *= g.parent->weight(v);
  if (!g.edges.empty()) c.c2 = cokernel_structure(d0_edge_matrix(g)).torsion_order();
  return c;
}

unsigned hbe_count(const WeightedGraph& g, unsigned long p) {
  if (p == 2) throw InputError("hbe count is only available for odd primes");
  for (const auto& c : components(g))
    if (bipartition(c)) throw InputError("hbe count is infinite when a component is bipartite");
  const FundamentalForest f = build_forest(g, p);
  unsigned n = static_cast<unsigned>(f.nodes.size());
  for (unsigned v : f.vertex_valuation) n += v;
  return n;
}

CoreDecomposition oriented_core(const FundamentalForest& f) {
  const WeightedGraph& g = *f.graph;
  CoreDecomposition out;
  out.core.parent = &g;
  std::vector<bool> covered(g.vertex_count(), false);
  for (int x : f.maximal) {
    const ForestNode& nd = f.nodes[x];
    CorePart part;
    part.graph = f.subgraphs[nd.graph];
    part.r_sup = nd.r_sup;
    part.m = nd.m;
    part.bipartite = bipartition(part.graph).has_value();
    for (int v : part.graph.vertices) covered[v] = true;
    if (f.p == 2 && !part.bipartite)
      for (int e : part.graph.edges)
        if (edge_valuation(g, e, 2) + 1 == nd.level) out.special_edges.push_back(e);
    out.parts.push_back(std::move(part));
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (covered[v]) continue;
    CorePart part;
    part.graph = Subgraph::from_vertices(g, {v}, false);
    part.m = f.vertex_valuation[v];
    part.bipartite = true;
    part.from_forest = false;
    out.parts.push_back(std::move(part));
  }
  std::sort(out.parts.begin(), out.parts.end(),
            [](const CorePart& a, const CorePart& b) { return a.graph.vertices < b.graph.vertices; });
  for (const auto& part : out.parts) {
    out.core.vertices.insert(out.core.vertices.end(), part.graph.vertices.begin(), part.graph.vertices.end());
    out.core.edges.insert(out.core.edges.end(), part.graph.edges.begin(), part.graph.edges.end());
  }
  std::sort(out.core.vertices.begin(), out.core.vertices.end());
  std::sort(out.core.edges.begin(), out.core.edges.end());
  std::sort(out.special_edges.begin(), out.special_edges.end());
  return out;
}

CoreDecomposition oriented_core(const WeightedGraph& g, unsigned long p) {
  // the forest's graph pointer is g itself, so the result stays valid
  return oriented_core(build_forest(g, p));
}

bool core_inequalities_hold(const CoreDecomposition& core, unsigned long p) {
  for (const auto& part : core.parts) {
    if (!part.from_forest || !part.r_sup) continue;
    const unsigned r = *part.r_sup;
    const WeightedGraph& G = *part.graph.parent;
    for (int e : part.graph.edges)
      if (edge_valuation(G, e, p) + 1 > r) return false;
    for (int e : edge_boundary(part.graph, G))
      if (edge_valuation(G, e, p) < r) return false;
  }
  return true;
}

CoreRelation core_torsion_relation(const WeightedGraph& g, unsigned long p) {
  CoreRelation out;
  auto refuse = [&](const char* why) {
    out.reason = why;
    return out;
  };
  if (p == 2) return refuse("p = 2");
  if (g.vertex_count() == 0 || components(g).size() != 1) return refuse("graph is not connected");
  if (bipartition(Subgraph::whole(g))) return refuse("graph is bipartite");
  const CoreDecomposition core = oriented_core(g, p);
  for (const auto& part : core.parts)
    if (!part.from_forest) return refuse("some vertex is not covered by a maximal forest element");
  out.applicable = true;
  out.core_exponent = torsion_order_p(core.core, p);
  for (const auto& part : core.parts) out.level_sum += *part.r_sup - part.m;
  if (out.value() != torsion_order_p(g, p))
    throw std::logic_error("core torsion relation disagrees with the Smith normal form");
  return out;
}

std::vector<std::vector<unsigned>> separation_levels(const Subgraph& g, unsigned long p) {
  const int n = g.parent->vertex_count();
  std::vector<std::vector<unsigned>> q(n, std::vector<unsigned>(n, 0));
  const unsigned top = max_edge_valuation(g, p) + 1;
  for (unsigned r = 1; r <= top; ++r) {
    std::vector<int> label(n, -1);
    int next = 0;
    for (const auto& c : components(reduce(g, p, r))) {
      for (int v : c.vertices) label[v] = next;
      ++next;
    }
    for (int u : g.vertices)
      for (int v : g.vertices)
        if (label[u] != label[v]) q[u][v] = r;
  }
  return q;
}

Subgraph weighted_spanning_tree(const Subgraph& g, unsigned long p) {
  if (g.empty() || components(g).size() != 1) throw InputError("spanning tree needs a connected graph");
  const bool bip = bipartition(g).has_value();
  if (p == 2 && !bip) throw InputError("spanning tree for p = 2 is only available on bipartite graphs");
  if (!is_orientable(g, p, max_edge_valuation(g, p) + 1).orientable)
    throw InputError("graph is not orientable at its top reduction level");
  const WeightedGraph& G = *g.parent;
  Subgraph t = g;
  while (t.edges.size() + 1 > t.vertices.size()) {
    int pick = -1;
    unsigned best = 0;
    for (int e : t.edges) {
      Subgraph rest = t;
      rest.edges.erase(std::find(rest.edges.begin(), rest.edges.end(), e));
      if (components(rest).size() != 1) continue;  // a bridge
      const unsigned v = edge_valuation(G, e, p);
      if (pick < 0 || v >= best) {
        pick = e;
        best = v;
      }
    }
    t.edges.erase(std::find(t.edges.begin(), t.edges.end(), pick));
  }
  if (separation_levels(t, p) != separation_levels(g, p))
    throw std::logic_error("spanning tree changed a separation level");
  return t;
}

unsigned oriented_torsion_exponent(const Subgraph& g, unsigned long p) {
  const Subgraph t = weighted_spanning_tree(g, p);
  const WeightedGraph& G = *g.parent;
  const auto deg = degrees(t);
  long n = -1;
  long sum = 0;
  for (int v : t.vertices) {
    const long k = p_valuation(G.weight(v), p);
    n = n < 0 ? k : std::min(n, k);
    sum += (deg[v] - 1) * k;
  }
  const unsigned out = static_cast<unsigned>(n + sum);
  if (out != torsion_order_p(g, p))
    throw std::logic_error("oriented torsion exponent disagrees with the Smith normal form");
  return out;
}

}  // namespace gcoh
