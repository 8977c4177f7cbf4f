#include "gcoh/graph.hpp"

#include <algorithm>
#include <queue>

namespace gcoh {

WeightedGraph::WeightedGraph(std::vector<std::pair<std::string, BigInt>> vertices,
                             const std::vector<std::pair<std::string, std::string>>& edges) {
  std::sort(vertices.begin(), vertices.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i > 0 && vertices[i].first == vertices[i - 1].first)
      throw InputError("duplicate vertex '" + vertices[i].first + "'");
    if (vertices[i].second < 1)
      throw InputError("vertex '" + vertices[i].first + "' has non-positive weight");
    ids_.push_back(vertices[i].first);
    weights_.push_back(vertices[i].second);
  }
  for (const auto& [x, y] : edges) {
    auto a = index_of(x), b = index_of(y);
    if (!a) throw InputError("edge endpoint '" + x + "' is not a vertex");
    if (!b) throw InputError("edge endpoint '" + y + "' is not a vertex");
    if (*a == *b) throw InputError("loop at '" + x + "'");
    edges_.push_back({std::min(*a, *b), std::max(*a, *b)});
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] == edges_[i - 1])
      throw InputError("multiple edge " + ids_[edges_[i].a] + "-" + ids_[edges_[i].b]);
  incident_.assign(ids_.size(), {});
  for (int e = 0; e < edge_count(); ++e) {
    incident_[edges_[e].a].push_back(e);
    incident_[edges_[e].b].push_back(e);
  }
}

std::optional<int> WeightedGraph::index_of(const std::string& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - ids_.begin());
}

std::optional<int> WeightedGraph::edge_index(int a, int b) const {
  Edge key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

std::string WeightedGraph::edge_name(int e) const {
  return ids_.at(edges_.at(e).a) + "-" + ids_.at(edges_.at(e).b);
}

Subgraph Subgraph::whole(const WeightedGraph& g) {
  Subgraph s;
  s.parent = &g;
  for (int v = 0; v < g.vertex_count(); ++v) s.vertices.push_back(v);
  for (int e = 0; e < g.edge_count(); ++e) s.edges.push_back(e);
  return s;
}

Subgraph Subgraph::from_vertices(const WeightedGraph& g, std::vector<int> verts, bool induced) {
  Subgraph s;
  s.parent = &g;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  s.vertices = std::move(verts);
  if (induced) {
    for (int e = 0; e < g.edge_count(); ++e)
      if (s.has_vertex(g.edge(e).a) && s.has_vertex(g.edge(e).b)) s.edges.push_back(e);
  }
  return s;
}

bool Subgraph::has_vertex(int v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Subgraph::has_edge(int e) const { return std::binary_search(edges.begin(), edges.end(), e); }

std::string Subgraph::name() const {
  std::string out = "{";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out += ",";
    out += parent->id(vertices[i]);
  }
  if (!edges.empty()) {
    out += ";";
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i) out += ",";
      out += parent->edge_name(edges[i]);
    }
  }
  return out + "}";
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

unsigned p_valuation(const BigInt& n, unsigned long p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  if (p < 2) throw std::invalid_argument("valuation base must be >= 2");
  mpz_class rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

BigInt ipow(unsigned long p, unsigned e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, e);
  return out;
}

namespace {

// Adjacency restricted to the subgraph, indexed by parent vertex.
std::vector<std::vector<int>> adjacency(const Subgraph& g) {
  std::vector<std::vector<int>> adj(g.parent->vertex_count());
  for (int e : g.edges) {
    const Edge& ed = g.parent->edge(e);
    adj[ed.a].push_back(ed.b);
    adj[ed.b].push_back(ed.a);
  }
  return adj;
}

}  // namespace

std::vector<Subgraph> components(const Subgraph& g) {
  const auto adj = adjacency(g);
  std::vector<int> comp(g.parent->vertex_count(), -1);
  std::vector<Subgraph> out;
  for (int start : g.vertices) {
    if (comp[start] >= 0) continue;
    Subgraph c;
    c.parent = g.parent;
    const int id = static_cast<int>(out.size());
    std::vector<int> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      c.vertices.push_back(x);
      for (int y : adj[x])
        if (comp[y] < 0) {
          comp[y] = id;
          stack.push_back(y);
        }
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    out.push_back(std::move(c));
  }
  for (int e : g.edges) out[comp[g.parent->edge(e).a]].edges.push_back(e);
  return out;
}

std::vector<Subgraph> components(const WeightedGraph& g) { return components(Subgraph::whole(g)); }

std::optional<Bipartition> bipartition(const Subgraph& g) {
  const auto adj = adjacency(g);
  Bipartition bp;
  bp.sign.assign(g.parent->vertex_count(), 0);
  for (int start : g.vertices) {
    if (bp.sign[start] != 0) continue;
    bp.sign[start] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (bp.sign[y] == 0) {
          bp.sign[y] = -bp.sign[x];
          stack.push_back(y);
        } else if (bp.sign[y] == bp.sign[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return bp;
}

std::vector<int> odd_cycle(const Subgraph& g) {
  const auto adj = adjacency(g);
  const int n = g.parent->vertex_count();
  std::vector<int> depth(n, -1), up(n, -1);
  for (int start : g.vertices) {
    if (depth[start] >= 0) continue;
    depth[start] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[x]) {
        if (depth[y] < 0) {
          depth[y] = depth[x] + 1;
          up[y] = x;
          q.push(y);
        } else if (depth[y] == depth[x]) {
          // climb both sides to the common ancestor
          std::vector<int> left{x}, right{y};
          int a = x, b = y;
          while (a != b) {
            a = up[a];
            b = up[b];
            left.push_back(a);
            right.push_back(b);
          }
          right.pop_back();
          std::reverse(right.begin(), right.end());
          left.insert(left.end(), right.begin(), right.end());
          return left;
        }
      }
    }
  }
  return {};
}

unsigned edge_valuation(const WeightedGraph& g, int e, unsigned long p) {
  const Edge& ed = g.edge(e);
  return p_valuation(g.weight(ed.a), p) + p_valuation(g.weight(ed.b), p);
}

Subgraph reduce(const Subgraph& d, unsigned long p, unsigned s) {
  Subgraph out;
  out.parent = d.parent;
  out.vertices = d.vertices;
  for (int e : d.edges)
    if (edge_valuation(*d.parent, e, p) < s) out.edges.push_back(e);
  return out;
}

Subgraph reduce(const WeightedGraph& g, unsigned long p, unsigned s) {
  return reduce(Subgraph::whole(g), p, s);
}

std::vector<int> edge_boundary(const Subgraph& d, const WeightedGraph& g) {
  std::vector<int> out;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if ((d.has_vertex(ed.a) || d.has_vertex(ed.b)) && !d.has_edge(e)) out.push_back(e);
  }
  return out;
}

WeightedGraph as_graph(const Subgraph& d) {
  std::vector<std::pair<std::string, BigInt>> verts;
  for (int v : d.vertices) verts.emplace_back(d.parent->id(v), d.parent->weight(v));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int e : d.edges) {
    const Edge& ed = d.parent->edge(e);
    edges.emplace_back(d.parent->id(ed.a), d.parent->id(ed.b));
  }
  return WeightedGraph(std::move(verts), edges);
}

WeightedGraph p_part(const WeightedGraph& g, unsigned long p) {
  std::vector<std::pair<std::string, BigInt>> verts;
  for (int v = 0; v < g.vertex_count(); ++v)
    verts.emplace_back(g.id(v), ipow(p, p_valuation(g.weight(v), p)));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(g.id(e.a), g.id(e.b));
  return WeightedGraph(std::move(verts), edges);
}

Subgraph transfer(const Subgraph& d, const WeightedGraph& target) {
  Subgraph out;
  out.parent = &target;
  for (int v : d.vertices)
    if (auto t = target.index_of(d.parent->id(v))) out.vertices.push_back(*t);
  std::sort(out.vertices.begin(), out.vertices.end());
  for (int e : d.edges) {
    const Edge& ed = d.parent->edge(e);
    auto a = target.index_of(d.parent->id(ed.a));
    auto b = target.index_of(d.parent->id(ed.b));
    if (!a || !b) continue;
    if (auto te = target.edge_index(*a, *b)) out.edges.push_back(*te);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace gcoh
