// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "gcoh/forest.hpp"
#include "gcoh/io.hpp"
#include "gcoh/tropical.hpp"
#include "gcoh/verify.hpp"
#include "gcoh/weights.hpp"
#include "oracle.hpp"

using namespace gcoh;

namespace {

// runtime budgets in seconds
constexpr double kWorkedExampleBudget = 1.0;
constexpr double kMainTheoremBudget = 60.0;
constexpr double kTropicalBudget = 120.0;

struct Outcome {
  bool ok = true;
  std::string detail;  // counts, or the first counterexample
};

class Tally {
 public:
  void check(bool cond, const std::function<std::string()>& why) {
    ++total_;
    if (cond) return;
    ++failed_;
    if (first_.empty()) first_ = why();
  }
  Outcome outcome(const std::string& what) const {
    std::ostringstream os;
    os << (total_ - failed_) << "/" << total_ << " " << what;
    if (failed_) os << "; first failure: " << first_;
    return {failed_ == 0, os.str()};
  }
 private:
  std::size_t total_ = 0, failed_ = 0;
  std::string first_;
};

std::string show(const WeightedGraph& g) { return graph_to_json(g).dump(); }

template <class T>
std::string show(const std::vector<T>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "]";
}

WeightedGraph with_weights(const WeightedGraph& g, const std::vector<BigInt>& w) {
  std::vector<std::pair<std::string, BigInt>> vs;
  for (int v = 0; v < g.vertex_count(); ++v) vs.emplace_back(g.id(v), w[v]);
  std::vector<std::pair<std::string, std::string>> es;
  for (const auto& e : g.edges()) es.emplace_back(g.id(e.a), g.id(e.b));
  return WeightedGraph(std::move(vs), es);
}

WeightedGraph complete_graph(const std::vector<BigInt>& w) {
  std::vector<std::pair<std::string, BigInt>> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i < w.size(); ++i) {
    vs.emplace_back(vertex_name(static_cast<int>(i)), w[i]);
    for (std::size_t j = 0; j < i; ++j) es.emplace_back(vertex_name(static_cast<int>(j)), vertex_name(static_cast<int>(i)));
  }
  return WeightedGraph(std::move(vs), es);
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

unsigned oracle_exponent(const WeightedGraph& g, unsigned long p) {
  return oracle::p_exponent_total(oracle::cochain_matrix(g), p);
}

std::vector<unsigned long> prime_divisors(BigInt n) {
  std::vector<unsigned long> out;
  for (unsigned long q = 2; n > 1; ++q) {
    if (BigInt(q) * q > n) {
      out.push_back(n.get_ui());
      break;
    }
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  return out;
}

Outcome worked_example() {
  const WeightedGraph g({{"R", 27}, {"G", 1}, {"B", 3}}, {{"R", "G"}, {"G", "B"}, {"R", "B"}});
  Tally t;
  const auto divisors = oracle::invariant_factors(oracle::cochain_matrix(g));
  t.check(divisors == std::vector<oracle::Z>{1, 1, 162}, [] { return std::string("oracle divisors"); });
  const auto snf = smith_normal_form(d0_matrix(Subgraph::whole(g)));
  t.check(snf.diagonal == Vec{1, 1, 162}, [] { return std::string("library divisors"); });
  t.check(cohomology_groups(g).h1 == AbelianGroup{0, Vec{162}}, [] { return std::string("H1 != Z/162"); });
  t.check(torsion_order_p(g, 3) == 4, [] { return std::string("3-exponent != 4"); });

  const auto f = build_forest(g, 3);
  std::set<std::string> nodes;
  for (std::size_t a = 0; a < f.nodes.size(); ++a) nodes.insert(f.node_label(static_cast<int>(a)));
  t.check(nodes == std::set<std::string>{"({G}, 1)", "({B,G}, 2)", "({B,G}, 3)", "({B,G,R}, 4)"},
          [] { return std::string("forest nodes"); });
  t.check(torsion_structure(f) == std::vector<unsigned>{4}, [] { return std::string("forest exponents"); });

  const auto core = oriented_core(f);
  std::set<std::string> core_edges;
  for (int e : core.core.edges) core_edges.insert(g.edge_name(e));
  t.check(core_edges == std::set<std::string>{"G-R", "B-G"}, [] { return std::string("oriented core"); });

  const Assignment vals{{"R", 3}, {"G", 0}, {"B", 1}};
  t.check(eval(z_gamma(g), vals) == TropicalValue(4), [] { return std::string("Z(3,0,1)"); });
  t.check(eval(elementary_symmetric(3, g.ids()), vals) == TropicalValue(4), [] { return std::string("sigma_3"); });
  return t.outcome("worked-example facts");
}

Outcome main_theorem() {
  std::ostringstream detail;
  bool ok = true;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    Rng rng(1000 + p);
    Tally t;
    for (int i = 0; i < 500; ++i) {
      const auto g = random_connected_graph(rng, uniform(rng, 1, 7), 0.5, prime_power_weights(p, 4, false));
      const auto got = torsion_structure(build_forest(g, p));
      const auto want = oracle::p_exponents(oracle::cochain_matrix(g), p);
      t.check(got == want, [&] { return show(g) + " forest " + show(got) + " oracle " + show(want); });
    }
    const auto o = t.outcome("graphs at p=" + std::to_string(p));
    ok = ok && o.ok;
    detail << (p == 2 ? "" : " | ") << o.detail;
  }
  return {ok, detail.str()};
}

Outcome tropical_theorem() {
  Tally t;
  for (unsigned long p : {3ul, 5ul}) {
    Rng rng(2000 + p);
    for (int i = 0; i < 300; ++i) {
      const auto g = random_connected_graph(rng, uniform(rng, 1, 6), 0.5, prime_power_weights(p, 4, true));
      const auto z = eval(z_gamma(g), valuation_assignment(g, p));
      const unsigned want = oracle_exponent(g, p);
      t.check(z == TropicalValue(want), [&] {
        return show(g) + " p=" + std::to_string(p) + " Z=" + z.to_string() + " oracle=" + std::to_string(want);
      });
    }
  }
  return t.outcome("graphs over p in {3,5}");
}

Outcome complete_formula() {
  Tally t;
  Rng rng(3000);
  for (int n = 3; n <= 5; ++n) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(vertex_name(i));
    const auto kn = complete_graph(std::vector<BigInt>(n, 1));
    const auto zg = z_gamma(kn);
    const auto zc = z_complete(ids);
    for (int i = 0; i < 100; ++i) {
      const unsigned long p = i % 2 ? 3 : 5;
      std::vector<BigInt> w(n);
      Assignment a;
      for (int v = 0; v < n; ++v) {
        const unsigned e = static_cast<unsigned>(uniform(rng, 0, 4));
        w[v] = ipow(p, e);
        a[ids[v]] = e;
      }
      const auto g = with_weights(kn, w);
      const unsigned want = oracle_exponent(g, p);
      const auto vc = eval(zc, a), vg = eval(zg, a);
      t.check(vc == TropicalValue(want) && vg == TropicalValue(want), [&] {
        return show(g) + " formula=" + vc.to_string() + " Z=" + vg.to_string() + " oracle=" + std::to_string(want);
      });
    }
  }
  return t.outcome("valuation vectors for n in {3,4,5}");
}

Outcome tree_formula() {
  Tally t;
  Rng rng(4000);
  for (int i = 0; i < 200; ++i) {
    const auto tree = random_tree(rng, uniform(rng, 1, 8), [](Rng& r) { return BigInt(uniform(r, 1, 1000000)); });
    const BigInt got = tree_torsion(Subgraph::whole(tree));
    const BigInt want = oracle::torsion_order(oracle::cochain_matrix(tree));
    t.check(got == want, [&] { return show(tree) + " formula " + got.get_str() + " oracle " + want.get_str(); });
  }
  return t.outcome("trees");
}

Outcome spanning_tree() {
  Tally t;
  Rng rng(5000);
  const unsigned long primes[] = {2, 3, 5};
  for (int i = 0; i < 200; ++i) {
    const unsigned long p = primes[i % 3];
    // connected and reduced at the top level, orientable there: bipartite
    const auto g = random_bipartite_graph(rng, uniform(rng, 1, 7), 0.5, prime_power_weights(p, 4, true));
    const unsigned got = oriented_torsion_exponent(Subgraph::whole(g), p);
    const unsigned want = oracle_exponent(g, p);
    t.check(got == want, [&] { return show(g) + " p=" + std::to_string(p) + " tree " + std::to_string(got) + " oracle " + std::to_string(want); });
  }
  return t.outcome("oriented instances over p in {2,3,5}");
}

Outcome euler_relation() {
  Tally euler, hbe;
  Rng rng(6000);
  for (int i = 0; i < 200; ++i) {
    const unsigned long p = i % 2 ? 3 : 5;
    const auto draw = prime_power_weights(p, 3, true);
    WeightedGraph g;
    switch (i % 4) {
      case 0: g = random_bipartite_graph(rng, uniform(rng, 1, 6), 0.5, draw); break;
      case 1: g = disjoint_union(random_connected_graph(rng, uniform(rng, 1, 4), 0.6, draw),
                                 random_connected_graph(rng, uniform(rng, 1, 4), 0.6, draw)); break;
      default: g = random_connected_graph(rng, uniform(rng, 1, 6), 0.6, draw);
    }
    const auto c = edge_weighted_constants(Subgraph::whole(g));
    const BigInt tors = oracle::torsion_order(oracle::cochain_matrix(g));
    euler.check(tors * c.c1 == c.c0 * c.c2, [&] {
      return show(g) + " |T|=" + tors.get_str() + " C0=" + c.c0.get_str() + " C1=" + c.c1.get_str() + " C2=" + c.c2.get_str();
    });
    bool bipartite_part = false;
    for (const auto& comp : components(g)) bipartite_part = bipartite_part || bipartition(comp).has_value();
    if (!bipartite_part) {
      const unsigned got = hbe_count(g, p);
      const unsigned want = oracle::valuation(oracle::torsion_order(oracle::edge_weighted_matrix(g)), p);
      hbe.check(got == want, [&] { return show(g) + " HBE " + std::to_string(got) + " val C2 " + std::to_string(want); });
    }
  }
  const auto a = euler.outcome("Euler relations");
  const auto b = hbe.outcome("HBE counts on graphs without bipartite components");
  return {a.ok && b.ok, a.detail + " | " + b.detail};
}

Outcome structural_suite() {
  Tally ranks, split, sum, chi_chain, chi_img, jstar, gen, order;
  Rng rng(7000);
  const unsigned long odd[] = {3, 5};
  const unsigned long all[] = {2, 3, 5};

  for (int i = 0; i < 50; ++i) {
    const auto g = random_connected_graph(rng, uniform(rng, 1, 7), 0.4, prime_power_weights(3, 3, true));
    const auto base = cohomology_groups(g);
    for (int k = 0; k < 10; ++k) {
      std::vector<BigInt> w(g.vertex_count());
      for (auto& x : w) x = uniform(rng, 1, 1000);
      const auto h = cohomology_groups(with_weights(g, w));
      ranks.check(h.h0.rank == base.h0.rank && h.h1.rank == base.h1.rank, [&] { return show(g); });
    }
  }

  for (int i = 0; i < 100; ++i) {
    std::vector<BigInt> w;
    const auto shape = random_connected_graph(rng, uniform(rng, 1, 6), 0.5, prime_power_weights(3, 1, false));
    for (int v = 0; v < shape.vertex_count(); ++v) w.push_back(uniform(rng, 1, 60));
    const auto g = with_weights(shape, w);
    BigInt prod = cohomology_groups(g).h1.torsion_order();
    for (const auto& x : g.weights()) prod *= x;
    BigInt whole = 1;
    for (unsigned long q : prime_divisors(prod)) {
      const unsigned here = torsion_order_p(g, q), there = torsion_order_p(p_part(g, q), q);
      split.check(here == there, [&] { return show(g) + " q=" + std::to_string(q); });
      whole *= ipow(q, there);
    }
    split.check(whole == cohomology_groups(g).h1.torsion_order(), [&] { return show(g) + " product"; });
  }

  for (int i = 0; i < 100; ++i) {
    const auto a = random_connected_graph(rng, uniform(rng, 1, 5), 0.5, prime_power_weights(3, 3, true));
    const auto b = random_connected_graph(rng, uniform(rng, 1, 5), 0.5, prime_power_weights(5, 3, true));
    const auto ha = cohomology_groups(a), hb = cohomology_groups(b), hu = cohomology_groups(disjoint_union(a, b));
    bool merged = hu.h0.rank == ha.h0.rank + hb.h0.rank && hu.h1.rank == ha.h1.rank + hb.h1.rank;
    for (unsigned long q : {2ul, 3ul, 5ul, 7ul}) {
      std::vector<unsigned> ea = oracle::p_exponents(oracle::cochain_matrix(a), q);
      const auto eb = oracle::p_exponents(oracle::cochain_matrix(b), q);
      ea.insert(ea.end(), eb.begin(), eb.end());
      std::sort(ea.begin(), ea.end());
      merged = merged && ea == oracle::p_exponents(oracle::cochain_matrix(disjoint_union(a, b)), q);
    }
    sum.check(merged, [&] { return show(a) + " + " + show(b); });
  }

  for (int i = 0; i < 150; ++i) {
    const unsigned long p = all[i % 3];
    const auto g = random_connected_graph(rng, uniform(rng, 1, 6), 0.5, prime_power_weights(p, 4, true));
    const auto f = build_forest(g, p);
    const auto F = fundamental_complex(f);
    const auto x = chi(F, f);
    chi_chain.check(chi_is_chain_map(x, F, g), [&] { return show(g) + " p=" + std::to_string(p); });
    std::size_t h0_nodes = static_cast<std::size_t>(std::count(f.in_h0.begin(), f.in_h0.end(), true));
    order.check(complex_cohomology(F).h1.torsion_order() == ipow(p, static_cast<unsigned>(h0_nodes)),
                [&] { return show(g) + " p=" + std::to_string(p); });
    const unsigned s = static_cast<unsigned>(uniform(rng, 1, 3));
    gen.check(generation_check(g, p, s), [&] { return show(g) + " p=" + std::to_string(p) + " s=" + std::to_string(s); });
  }

  for (int i = 0; i < 100; ++i) {
    const unsigned long p = odd[i % 2];
    const auto g = random_connected_graph(rng, uniform(rng, 1, 6), 0.5, prime_power_weights(p, 4, true));
    const auto f = build_forest(g, p);
    const auto F = fundamental_complex(f);
    const BigInt img = chi_image_order(chi(F, f), g);
    chi_img.check(img == ipow(p, oracle_exponent(g, p)), [&] { return show(g) + " image " + img.get_str(); });

    std::vector<int> keep;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (uniform(rng, 0, 2)) keep.push_back(v);
    if (keep.empty()) keep.push_back(0);
    Subgraph d = Subgraph::from_vertices(g, keep, true);
    std::erase_if(d.edges, [&](int) { return uniform(rng, 0, 3) == 0; });
    const auto r = restrict_to(f, d);
    std::vector<int> inner_keep;
    for (int v = 0; v < r.graph->vertex_count(); ++v)
      if (uniform(rng, 0, 1)) inner_keep.push_back(v);
    if (inner_keep.empty()) inner_keep.push_back(0);
    const Subgraph inner = Subgraph::from_vertices(*r.graph, inner_keep, true);
    const auto step = restrict_to(r.forest, inner);
    const auto direct = restrict_to(f, transfer(inner, g));
    const bool composes = step.j_m1 * r.j_m1 == direct.j_m1 && step.j0 * r.j0 == direct.j0 && step.j1 * r.j1 == direct.j1;
    jstar.check(restriction_is_chain_map(r) && restriction_is_chain_map(step) && composes,
                [&] { return show(g) + " subgraph " + d.name(); });
  }

  struct Part {
    const char* name;
    const Tally* tally;
  };
  const Part parts[] = {{"rank independence", &ranks}, {"p-splitting", &split},     {"disjoint union", &sum},
                        {"chi chain map", &chi_chain}, {"chi image", &chi_img},     {"j* chain map+composition", &jstar},
                        {"generation", &gen},          {"order law", &order}};
  bool ok = true;
  std::string detail;
  for (const auto& part : parts) {
    const auto o = part.tally->outcome(part.name);
    ok = ok && o.ok;
    detail += (detail.empty() ? "" : " | ") + o.detail;
  }
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget;  // seconds, 0 = none
  };
  const Criterion criteria[] = {
      {"worked example", worked_example, kWorkedExampleBudget},
      {"main theorem vs oracle", main_theorem, kMainTheoremBudget},
      {"tropical theorem", tropical_theorem, kTropicalBudget},
      {"complete-graph formula", complete_formula, 0},
      {"tree formula", tree_formula, 0},
      {"spanning-tree theorem", spanning_tree, 0},
      {"Euler relation", euler_relation, 0},
      {"structural suite", structural_suite, 0},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && secs > c.budget) {
      o.ok = false;
      o.detail += "; over the " + std::to_string(c.budget) + " s budget";
    }
    failures += !o.ok;
    std::printf("%s criterion %d (%s) %.2fs: %s\n", o.ok ? "PASS" : "FAIL", index, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
