#include "gcoh/verify.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "gcoh/forest.hpp"
#include "gcoh/io.hpp"
#include "gcoh/tropical.hpp"
#include "gcoh/weights.hpp"

namespace gcoh {

std::string vertex_name(int i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  std::string digits = std::to_string(i);
  return "V" + std::string(digits.size() < 3 ? 3 - digits.size() : 0, '0') + digits;
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double prob) { return std::bernoulli_distribution(prob)(rng); }

WeightedGraph assemble(int n, const std::vector<std::pair<int, int>>& pairs, Rng& rng, const WeightDraw& weight) {
  std::vector<std::pair<std::string, BigInt>> vs;
  for (int i = 0; i < n; ++i) vs.emplace_back(vertex_name(i), weight(rng));
  std::vector<std::pair<std::string, std::string>> es;
  for (const auto& [a, b] : pairs) es.emplace_back(vertex_name(a), vertex_name(b));
  return WeightedGraph(std::move(vs), es);
}

}  // namespace

WeightedGraph random_connected_graph(Rng& rng, int n, double extra_edge_prob, const WeightDraw& weight) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i) pairs.emplace_back(uniform_int(rng, 0, i - 1), i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool present = std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) != pairs.end();
      if (!present && coin(rng, extra_edge_prob)) pairs.emplace_back(i, j);
    }
  return assemble(n, pairs, rng, weight);
}

WeightedGraph random_tree(Rng& rng, int n, const WeightDraw& weight) {
  return random_connected_graph(rng, n, 0.0, weight);
}

WeightedGraph random_bipartite_graph(Rng& rng, int n, double extra_edge_prob, const WeightDraw& weight) {
  std::vector<int> side(n);
  for (int i = 0; i < n; ++i) side[i] = i == 0 ? 0 : uniform_int(rng, 0, 1);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i) {
    std::vector<int> opposite;
    for (int j = 0; j < i; ++j)
      if (side[j] != side[i]) opposite.push_back(j);
    if (opposite.empty()) {
      side[i] = 1 - side[i];
      for (int j = 0; j < i; ++j) opposite.push_back(j);
    }
    pairs.emplace_back(opposite[uniform_int(rng, 0, static_cast<int>(opposite.size()) - 1)], i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (side[i] == side[j]) continue;
      const bool present = std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) != pairs.end();
      if (!present && coin(rng, extra_edge_prob)) pairs.emplace_back(i, j);
    }
  return assemble(n, pairs, rng, weight);
}

WeightDraw prime_power_weights(unsigned long p, unsigned max_valuation, bool with_units) {
  return [=](Rng& rng) {
    BigInt w = ipow(p, static_cast<unsigned>(uniform_int(rng, 0, static_cast<int>(max_valuation))));
    if (with_units && coin(rng, 0.5)) {
      int u;
      do u = uniform_int(rng, 2, 12);
      while (u % static_cast<long>(p) == 0);
      w *= u;
    }
    return w;
  };
}

WeightedGraph disjoint_union(const WeightedGraph& x, const WeightedGraph& y) {
  std::vector<std::pair<std::string, BigInt>> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (const auto& [g, prefix] : {std::pair<const WeightedGraph*, std::string>{&x, "a."}, {&y, "b."}}) {
    for (int v = 0; v < g->vertex_count(); ++v) vs.emplace_back(prefix + g->id(v), g->weight(v));
    for (const auto& e : g->edges()) es.emplace_back(prefix + g->id(e.a), prefix + g->id(e.b));
  }
  return WeightedGraph(std::move(vs), es);
}

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Check {
  Outcome outcome = Outcome::Pass;
  nlohmann::json detail;
};

Check pass() { return {}; }
Check skip() { return {Outcome::Skip, nullptr}; }
Check fail(nlohmann::json detail) { return {Outcome::Fail, std::move(detail)}; }
Check expect(bool ok, nlohmann::json detail) { return ok ? pass() : fail(std::move(detail)); }

struct Context {
  const VerificationConfig& cfg;
  unsigned long p;
  const WeightedGraph& g;
  Rng& rng;
};

std::vector<unsigned> oracle_exponents(const WeightedGraph& g, unsigned long p) {
  std::vector<unsigned> out;
  for (const auto& d : cohomology_groups(g).h1.divisors)
    if (const unsigned v = p_valuation(d, p)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

Subgraph random_subgraph(const WeightedGraph& g, Rng& rng) {
  std::vector<int> verts;
  while (verts.empty())
    for (int v = 0; v < g.vertex_count(); ++v)
      if (coin(rng, 0.6)) verts.push_back(v);
  Subgraph d = Subgraph::from_vertices(g, verts, true);
  std::vector<int> kept;
  for (int e : d.edges)
    if (coin(rng, 0.75)) kept.push_back(e);
  d.edges = kept;
  return d;
}

IntMatrix selection(const WeightedGraph& sub, const WeightedGraph& g, int degree) {
  if (degree == 0) {
    IntMatrix m(sub.vertex_count(), g.vertex_count());
    for (int v = 0; v < sub.vertex_count(); ++v) m.at(v, *g.index_of(sub.id(v))) = 1;
    return m;
  }
  IntMatrix m(sub.edge_count(), g.edge_count());
  for (int e = 0; e < sub.edge_count(); ++e) {
    const Edge& ed = sub.edge(e);
    m.at(e, *g.edge_index(*g.index_of(sub.id(ed.a)), *g.index_of(sub.id(ed.b)))) = 1;
  }
  return m;
}

std::vector<BigInt> prime_factors(BigInt n) {
  std::vector<BigInt> out;
  for (BigInt q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

Check main_theorem(const Context& c) {
  auto forest = torsion_structure(build_forest(c.g, c.p));
  if (c.cfg.inject_fault) forest.push_back(1);
  std::sort(forest.begin(), forest.end());
  const auto oracle = oracle_exponents(c.g, c.p);
  return expect(forest == oracle, {{"forest", forest}, {"oracle", oracle}});
}

Check order_law(const Context& c) {
  const auto f = build_forest(c.g, c.p);
  const auto h = complex_cohomology(fundamental_complex(f));
  const auto nodes = std::count(f.in_h0.begin(), f.in_h0.end(), true);
  const BigInt want = ipow(c.p, static_cast<unsigned>(nodes));
  return expect(h.h1.rank == 0 && h.h1.torsion_order() == want,
                {{"h1", h.h1.to_string()}, {"h0_nodes", nodes}});
}

Check chi_chain(const Context& c) {
  const auto f = build_forest(c.g, c.p);
  const auto F = fundamental_complex(f);
  return expect(chi_is_chain_map(chi(F, f), F, c.g), {{"reason", "chi does not commute with d"}});
}

Check chi_image(const Context& c) {
  const auto f = build_forest(c.g, c.p);
  const auto F = fundamental_complex(f);
  const BigInt got = chi_image_order(chi(F, f), c.g);
  const BigInt h1 = complex_cohomology(F).h1.torsion_order();
  // injective for every p; onto the p-torsion for odd p
  const BigInt want = c.p == 2 ? h1 : ipow(c.p, torsion_order_p(c.g, c.p));
  return expect(got == h1 && got == want,
                {{"image_order", got.get_str()}, {"complex_h1", h1.get_str()}, {"expected", want.get_str()}});
}

Check restriction_checks(const Context& c) {
  if (c.p == 2) return skip();
  const auto f = build_forest(c.g, c.p);
  const Subgraph d = random_subgraph(c.g, c.rng);
  const Restriction r = restrict_to(f, d);
  if (!restriction_is_chain_map(r)) return fail({{"subgraph", d.name()}, {"reason", "not a chain map"}});
  const auto xg = chi(r.source, f);
  const auto xd = chi(r.target, r.forest);
  if (!(xd.degree0 * r.j0 == selection(*r.graph, c.g, 0) * xg.degree0) ||
      !(xd.degree1 * r.j1 == selection(*r.graph, c.g, 1) * xg.degree1))
    return fail({{"subgraph", d.name()}, {"reason", "not compatible with chi"}});
  const Subgraph inner = random_subgraph(*r.graph, c.rng);
  const Restriction step = restrict_to(r.forest, inner);
  const Restriction direct = restrict_to(f, transfer(inner, c.g));
  const bool composes = step.j_m1 * r.j_m1 == direct.j_m1 && step.j0 * r.j0 == direct.j0 &&
                        step.j1 * r.j1 == direct.j1;
  return expect(composes, {{"subgraph", d.name()}, {"inner", inner.name()}, {"reason", "composition"}});
}

Check generation(const Context& c) {
  const unsigned s = static_cast<unsigned>(uniform_int(c.rng, 1, 3));
  return expect(generation_check(c.g, c.p, s), {{"s", s}});
}

Check tropical(const Context& c) {
  if (c.p == 2) return skip();
  const auto value = eval(z_gamma(c.g), valuation_assignment(c.g, c.p));
  const unsigned want = torsion_order_p(c.g, c.p);
  return expect(!value.is_infinite() && value.value() == static_cast<std::int64_t>(want),
                {{"z", value.to_string()}, {"oracle", want}});
}

Check euler(const Context& c) {
  const auto k = edge_weighted_constants(Subgraph::whole(c.g));
  const BigInt t = cohomology_groups(c.g).h1.torsion_order();
  return expect(t * k.c1 == k.c0 * k.c2,
                {{"torsion", t.get_str()}, {"c0", k.c0.get_str()}, {"c1", k.c1.get_str()}, {"c2", k.c2.get_str()}});
}

Check hbe(const Context& c) {
  if (c.p == 2) return skip();
  for (const auto& comp : components(c.g))
    if (bipartition(comp)) return skip();
  const unsigned got = hbe_count(c.g, c.p);
  const unsigned want = p_valuation(edge_weighted_constants(Subgraph::whole(c.g)).c2, c.p);
  return expect(got == want, {{"hbe", got}, {"val_c2", want}});
}

Check core_relation(const Context& c) {
  const auto rel = core_torsion_relation(c.g, c.p);
  if (!rel.applicable) return skip();
  return expect(rel.value() == torsion_order_p(c.g, c.p), {{"relation", rel.value()}});
}

Check core_inequalities(const Context& c) {
  return expect(core_inequalities_hold(oriented_core(c.g, c.p), c.p), {{"reason", "core inequalities"}});
}

Check tree_formula(const Context& c) {
  const WeightDraw big = [](Rng& r) { return BigInt(std::uniform_int_distribution<long>(1, 1000000)(r)); };
  const WeightedGraph t = random_tree(c.rng, uniform_int(c.rng, 1, 8), big);
  const BigInt got = tree_torsion(Subgraph::whole(t));
  const BigInt want = cohomology_groups(t).h1.torsion_order();
  return expect(got == want, {{"tree", graph_to_json(t)}, {"formula", got.get_str()}, {"oracle", want.get_str()}});
}

Check spanning_tree(const Context& c) {
  if (c.p == 2) return skip();
  const WeightedGraph b = random_bipartite_graph(c.rng, uniform_int(c.rng, 1, c.cfg.max_vertices), 0.5,
                                                 prime_power_weights(c.p, c.cfg.max_valuation, true));
  const unsigned got = oriented_torsion_exponent(Subgraph::whole(b), c.p);
  const unsigned want = torsion_order_p(b, c.p);
  return expect(got == want, {{"graph", graph_to_json(b)}, {"exponent", got}, {"oracle", want}});
}

Check rank_independence(const Context& c) {
  const auto base = cohomology_groups(c.g);
  for (int k = 0; k < 3; ++k) {
    std::vector<std::pair<std::string, BigInt>> vs;
    for (int v = 0; v < c.g.vertex_count(); ++v) vs.emplace_back(c.g.id(v), BigInt(uniform_int(c.rng, 1, 1000)));
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& e : c.g.edges()) es.emplace_back(c.g.id(e.a), c.g.id(e.b));
    const WeightedGraph h(std::move(vs), es);
    const auto other = cohomology_groups(h);
    if (other.h0.rank != base.h0.rank || other.h1.rank != base.h1.rank)
      return fail({{"reweighted", graph_to_json(h)}});
  }
  return pass();
}

Check p_splitting(const Context& c) {
  const auto whole = cohomology_groups(c.g).h1;
  BigInt prod = whole.torsion_order();
  for (const auto& w : c.g.weights()) prod *= w;
  BigInt total = 1;
  for (const auto& q : prime_factors(prod)) {
    const unsigned long qq = q.get_ui();
    const auto part = cohomology_groups(p_part(c.g, qq)).h1;
    std::vector<unsigned> a, b;
    for (const auto& d : whole.divisors)
      if (auto v = p_valuation(d, qq)) a.push_back(v);
    for (const auto& d : part.divisors)
      if (auto v = p_valuation(d, qq)) b.push_back(v);
    if (a != b) return fail({{"prime", qq}, {"primary_part", a}, {"from_p_part", b}});
    total *= ipow(qq, std::accumulate(b.begin(), b.end(), 0u));
  }
  return expect(total == whole.torsion_order(), {{"reason", "product of primary parts"}});
}

Check disjoint_union_law(const Context& c) {
  const WeightedGraph h = random_connected_graph(c.rng, uniform_int(c.rng, 1, c.cfg.max_vertices), 0.4,
                                                 prime_power_weights(c.p, c.cfg.max_valuation, true));
  const WeightedGraph u = disjoint_union(c.g, h);
  const auto a = cohomology_groups(c.g), b = cohomology_groups(h), ab = cohomology_groups(u);
  bool ok = ab.h0.rank == a.h0.rank + b.h0.rank && ab.h1.rank == a.h1.rank + b.h1.rank &&
            ab.h1.torsion_order() == a.h1.torsion_order() * b.h1.torsion_order();
  auto ea = torsion_structure(build_forest(c.g, c.p));
  const auto eb = torsion_structure(build_forest(h, c.p));
  ea.insert(ea.end(), eb.begin(), eb.end());
  std::sort(ea.begin(), ea.end());
  ok = ok && ea == torsion_structure(build_forest(u, c.p));
  return expect(ok, {{"other", graph_to_json(h)}});
}

struct Property {
  const char* name;
  Check (*run)(const Context&);
};

const std::vector<Property>& properties() {
  static const std::vector<Property> list{
      {"main_theorem", main_theorem},
      {"order_law", order_law},
      {"chi_chain_map", chi_chain},
      {"chi_image_order", chi_image},
      {"restriction", restriction_checks},
      {"generation", generation},
      {"tropical", tropical},
      {"euler_relation", euler},
      {"hbe_count", hbe},
      {"core_relation", core_relation},
      {"core_inequalities", core_inequalities},
      {"tree_formula", tree_formula},
      {"spanning_tree", spanning_tree},
      {"rank_independence", rank_independence},
      {"p_splitting", p_splitting},
      {"disjoint_union", disjoint_union_law},
  };
  return list;
}

struct InstanceResult {
  unsigned long p = 0;
  nlohmann::json graph;
  std::vector<Check> checks;
};

InstanceResult run_instance(const VerificationConfig& cfg, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  Rng rng(seq);
  InstanceResult out;
  out.p = cfg.primes[std::uniform_int_distribution<std::size_t>(0, cfg.primes.size() - 1)(rng)];
  const int n = uniform_int(rng, 1, cfg.max_vertices);
  const WeightedGraph g = random_connected_graph(rng, n, 0.4, prime_power_weights(out.p, cfg.max_valuation, true));
  out.graph = graph_to_json(g);
  const auto& props = properties();
  for (std::size_t k = 0; k < props.size(); ++k) {
    std::seed_seq sub{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(k)};
    Rng local(sub);
    try {
      out.checks.push_back(props[k].run({cfg, out.p, g, local}));
    } catch (const std::exception& e) {
      out.checks.push_back(fail({{"exception", e.what()}}));
    }
  }
  return out;
}

}  // namespace

bool VerificationSummary::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.failed == 0; });
}

nlohmann::json VerificationSummary::to_json(const VerificationConfig& cfg) const {
  nlohmann::json out;
  out["seed"] = cfg.seed;
  out["instances"] = cfg.instances;
  out["max_vertices"] = cfg.max_vertices;
  out["max_valuation"] = cfg.max_valuation;
  out["primes"] = cfg.primes;
  out["properties"] = nlohmann::json::array();
  for (const auto& r : properties) {
    nlohmann::json j{{"name", r.name}, {"passed", r.passed}, {"failed", r.failed}, {"skipped", r.skipped}};
    if (r.failed) j["counterexample"] = r.counterexample;
    out["properties"].push_back(j);
  }
  out["all_passed"] = all_passed();
  return out;
}

VerificationSummary run_verification(const VerificationConfig& cfg) {
  if (cfg.primes.empty()) throw InputError("verification needs at least one prime");
  for (auto p : cfg.primes)
    if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
  if (cfg.max_vertices < 1) throw InputError("max vertices must be positive");

  std::vector<InstanceResult> results(cfg.instances);
  std::atomic<std::size_t> next{0};
  unsigned workers = cfg.parallelism ? cfg.parallelism : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(cfg.instances, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfg.instances; i = next++) results[i] = run_instance(cfg, i);
      });
  }

  VerificationSummary summary;
  for (const auto& prop : properties()) {
    PropertyResult r;
    r.name = prop.name;
    summary.properties.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t k = 0; k < results[i].checks.size(); ++k) {
      PropertyResult& r = summary.properties[k];
      const Check& c = results[i].checks[k];
      switch (c.outcome) {
        case Outcome::Pass: ++r.passed; break;
        case Outcome::Skip: ++r.skipped; break;
        case Outcome::Fail:
          if (r.failed++ == 0)
            r.counterexample = {{"instance", i}, {"prime", results[i].p}, {"graph", results[i].graph}, {"detail", c.detail}};
          break;
      }
    }
  }
  return summary;
}

}  // namespace gcoh
