#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gcoh {

using BigInt = mpz_class;

// Malformed user input (bad graph file, unknown vertex, ...).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An enumeration or size cap was hit.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Edge {
  int a = 0;  // a < b, indices into the vertex list
  int b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple graph with positive integer vertex weights.  Vertices are kept in
// lexicographic order of their identifiers, so index order is id order and
// edge index order is lexicographic order of (id(a), id(b)).
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::vector<std::pair<std::string, BigInt>> vertices,
                const std::vector<std::pair<std::string, std::string>>& edges);

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& id(int v) const { return ids_.at(v); }
  const BigInt& weight(int v) const { return weights_.at(v); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<BigInt>& weights() const { return weights_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<int>& incident(int v) const { return incident_.at(v); }

  std::optional<int> index_of(const std::string& id) const;
  std::optional<int> edge_index(int a, int b) const;
  std::string edge_name(int e) const;

  friend bool operator==(const WeightedGraph& x, const WeightedGraph& y) {
    return x.ids_ == y.ids_ && x.weights_ == y.weights_ && x.edges_ == y.edges_;
  }

 private:
  std::vector<std::string> ids_;
  std::vector<BigInt> weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

// Vertex and edge subsets of a parent graph; the parent must outlive it.
struct Subgraph {
  const WeightedGraph* parent = nullptr;
  std::vector<int> vertices;  // sorted
  std::vector<int> edges;     // sorted edge indices

  static Subgraph whole(const WeightedGraph& g);
  static Subgraph from_vertices(const WeightedGraph& g, std::vector<int> verts, bool induced);

  bool has_vertex(int v) const;
  bool has_edge(int e) const;
  bool empty() const { return vertices.empty(); }
  std::string name() const;  // "{A,B;A-B}"

  friend bool operator==(const Subgraph& x, const Subgraph& y) {
    return x.vertices == y.vertices && x.edges == y.edges;
  }
  friend bool operator<(const Subgraph& x, const Subgraph& y) {
    return std::tie(x.vertices, x.edges) < std::tie(y.vertices, y.edges);
  }
};

// Sign per parent vertex: +1 / -1 on the partitioned vertices, 0 elsewhere.
struct Bipartition {
  std::vector<int> sign;
  int operator[](int v) const { return sign.at(v); }
};

bool is_prime(unsigned long p);

// Largest a with p^a | n.  n >= 1.
unsigned p_valuation(const BigInt& n, unsigned long p);
BigInt ipow(unsigned long p, unsigned e);

// Connected components sorted by smallest vertex.
std::vector<Subgraph> components(const Subgraph& g);
std::vector<Subgraph> components(const WeightedGraph& g);

// Signs normalised to +1 on the smallest vertex of every component.
std::optional<Bipartition> bipartition(const Subgraph& g);

// Vertex sequence of an odd closed walk, empty if g is bipartite.
std::vector<int> odd_cycle(const Subgraph& g);

// Drops edges with val_p(k_v k_w) >= s.
Subgraph reduce(const WeightedGraph& g, unsigned long p, unsigned s);
Subgraph reduce(const Subgraph& d, unsigned long p, unsigned s);

// Edges of g touching V(d) but not in E(d).
std::vector<int> edge_boundary(const Subgraph& d, const WeightedGraph& g);

unsigned edge_valuation(const WeightedGraph& g, int e, unsigned long p);

// The subgraph as a standalone graph (identifiers and weights kept).
WeightedGraph as_graph(const Subgraph& d);

// Same graph, weights replaced by their p-parts.
WeightedGraph p_part(const WeightedGraph& g, unsigned long p);

// Intersection of d with another graph over (a subset of) the same ids,
// expressed as a subgraph of that graph.
Subgraph transfer(const Subgraph& d, const WeightedGraph& target);

}  // namespace gcoh
