#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "gcoh/forest.hpp"
#include "gcoh/io.hpp"
#include "gcoh/tropical.hpp"
#include "gcoh/verify.hpp"
#include "gcoh/weights.hpp"

using nlohmann::json;
using namespace gcoh;

namespace {

constexpr int kInputError = 2;
constexpr int kResourceCap = 3;
constexpr int kVerifyFailed = 4;

json group_json(const AbelianGroup& a) {
  json d = json::array();
  for (const auto& x : a.divisors) d.push_back(x.get_str());
  return {{"rank", a.rank}, {"divisors", d}};
}

json level_json(const std::optional<unsigned>& r) { return r ? json(*r) : json("inf"); }

json ids_json(const Subgraph& d) {
  json out = json::array();
  for (int v : d.vertices) out.push_back(d.parent->id(v));
  return out;
}

json edges_json(const WeightedGraph& g, const std::vector<int>& edges) {
  json out = json::array();
  for (int e : edges) out.push_back(g.edge_name(e));
  return out;
}

void check_prime(unsigned long p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
}

json cmd_cohomology(const WeightedGraph& g) {
  const auto h = cohomology_groups(g);
  return {{"h0", group_json(h.h0)}, {"h1", group_json(h.h1)}, {"graph", graph_to_json(g)}};
}

json cmd_forest(const WeightedGraph& g, unsigned long p, const std::string& dot_path) {
  check_prime(p);
  const auto f = build_forest(g, p);
  json nodes = json::array();
  for (std::size_t a = 0; a < f.nodes.size(); ++a) {
    const auto& nd = f.nodes[a];
    const Subgraph& d = f.subgraphs[nd.graph];
    nodes.push_back({{"index", a},
                     {"label", f.node_label(static_cast<int>(a))},
                     {"vertices", ids_json(d)},
                     {"edges", edges_json(g, d.edges)},
                     {"level", nd.level},
                     {"m", nd.m},
                     {"r_sup", level_json(nd.r_sup)},
                     {"s", f.s_map[a] ? json(*f.s_map[a]) : json(nullptr)},
                     {"in_h0", static_cast<bool>(f.in_h0[a])}});
  }
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) throw InputError("cannot write " + dot_path);
    out << forest_to_dot(f);
  }
  return {{"prime", p},
          {"horizon", f.horizon},
          {"nodes", nodes},
          {"min0", f.min0_set},
          {"max0", f.max0_set},
          {"maximal", f.maximal},
          {"torsion_exponents", torsion_structure(f)}};
}

json cmd_torsion(const WeightedGraph& g, unsigned long p) {
  const auto h1 = cohomology_groups(g).h1;
  json out = group_json(h1);
  out["torsion_order"] = h1.torsion_order().get_str();
  if (p) {
    check_prime(p);
    out["prime"] = p;
    out["exponent"] = torsion_order_p(g, p);
    out["forest_exponents"] = torsion_structure(build_forest(g, p));
  }
  return out;
}

json cmd_tropical(const WeightedGraph& g, const std::string& eval_path, unsigned long p, bool complete,
                  int max_vertices) {
  EnumerationLimits lim = EnumerationLimits::from_environment();
  lim.max_vertices = max_vertices;
  TropicalExpr z;
  if (complete) {
    const int n = g.vertex_count();
    if (g.edge_count() != n * (n - 1) / 2) throw InputError("--complete-formula needs a complete graph");
    z = z_complete(g.ids());
  } else {
    z = z_gamma(g, lim);
  }
  json out{{"expression", render(z)}};
  if (!eval_path.empty() && p) throw InputError("--eval and --prime are exclusive");
  std::optional<Assignment> a;
  if (!eval_path.empty()) a = load_assignment(eval_path);
  if (p) a = valuation_assignment(g, p);
  if (a) {
    for (const auto& id : g.ids())
      if (!a->count(id)) throw InputError("no valuation given for vertex " + id);
    const auto v = eval(z, *a);
    out["value"] = v.is_infinite() ? json("∞") : json(v.value());
  }
  return out;
}

json cmd_core(const WeightedGraph& g, unsigned long p) {
  check_prime(p);
  const auto core = oriented_core(g, p);
  json parts = json::array();
  for (const auto& part : core.parts)
    parts.push_back({{"vertices", ids_json(part.graph)},
                     {"edges", edges_json(g, part.graph.edges)},
                     {"r_sup", level_json(part.r_sup)},
                     {"m", part.m},
                     {"bipartite", part.bipartite},
                     {"forest", part.from_forest}});
  json out{{"prime", p},
           {"parts", parts},
           {"core_edges", edges_json(g, core.core.edges)},
           {"special_edges", edges_json(g, core.special_edges)},
           {"inequalities_hold", core_inequalities_hold(core, p)}};
  const auto rel = core_torsion_relation(g, p);
  out["relation"] = rel.applicable ? json{{"applicable", true}, {"exponent", rel.value()}}
                                   : json{{"applicable", false}, {"reason", rel.reason}};
  return out;
}

json cmd_spanning_tree(const WeightedGraph& g, unsigned long p) {
  check_prime(p);
  const Subgraph whole = Subgraph::whole(g);
  const Subgraph t = weighted_spanning_tree(whole, p);
  return {{"prime", p}, {"edges", edges_json(g, t.edges)}, {"exponent", oriented_torsion_exponent(whole, p)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of vertex-weighted graphs"};
  app.require_subcommand(1);

  std::string graph_path, dot_path, eval_path;
  unsigned long prime = 0;
  bool complete = false;
  int max_vertices = 10;

  auto* coh = app.add_subcommand("cohomology", "H^0 and H^1 with elementary divisors");
  coh->add_option("graph", graph_path, "graph JSON file")->required();

  auto* forest = app.add_subcommand("forest", "fundamental forest and torsion exponents");
  forest->add_option("graph", graph_path, "graph JSON file")->required();
  forest->add_option("--prime,-p", prime, "prime")->required();
  forest->add_option("--dot", dot_path, "write the forest as Graphviz DOT");

  auto* torsion = app.add_subcommand("torsion", "torsion subgroup of H^1");
  torsion->add_option("graph", graph_path, "graph JSON file")->required();
  torsion->add_option("--prime,-p", prime, "also report the p-part");

  auto* trop = app.add_subcommand("tropical", "tropical torsion function");
  trop->add_option("graph", graph_path, "graph JSON file")->required();
  trop->add_option("--eval", eval_path, "JSON object of vertex valuations to evaluate at");
  trop->add_option("--prime,-p", prime, "evaluate at the p-adic valuations of the weights");
  trop->add_flag("--complete-formula", complete, "use the closed formula for complete graphs");
  trop->add_option("--max-vertices", max_vertices, "enumeration cap on vertices")->capture_default_str();

  auto* core = app.add_subcommand("core", "oriented core");
  core->add_option("graph", graph_path, "graph JSON file")->required();
  core->add_option("--prime,-p", prime, "prime")->required();

  auto* tree = app.add_subcommand("spanning-tree", "weighted spanning tree and torsion exponent");
  tree->add_option("graph", graph_path, "graph JSON file")->required();
  tree->add_option("--prime,-p", prime, "prime")->required();

  VerificationConfig cfg;
  auto* verify = app.add_subcommand("verify", "randomised cross-checks against Smith normal form");
  verify->add_option("--seed", cfg.seed)->capture_default_str();
  verify->add_option("--instances", cfg.instances)->capture_default_str();
  verify->add_option("--max-vertices", cfg.max_vertices)->capture_default_str();
  verify->add_option("--max-valuation", cfg.max_valuation)->capture_default_str();
  verify->add_option("--prime,-p", cfg.primes, "primes to sample from")->capture_default_str();
  verify->add_option("--threads", cfg.parallelism, "worker threads, 0 for all cores");
  verify->add_flag("--inject-fault", cfg.inject_fault, "corrupt one computation (harness self-test)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    json out;
    if (*verify) {
      const auto summary = run_verification(cfg);
      std::cout << summary.to_json(cfg).dump(2) << "\n";
      return summary.all_passed() ? 0 : kVerifyFailed;
    }
    const WeightedGraph g = load_graph(graph_path);
    if (*coh) out = cmd_cohomology(g);
    else if (*forest) out = cmd_forest(g, prime, dot_path);
    else if (*torsion) out = cmd_torsion(g, prime);
    else if (*trop) out = cmd_tropical(g, eval_path, prime, complete, max_vertices);
    else if (*core) out = cmd_core(g, prime);
    else if (*tree) out = cmd_spanning_tree(g, prime);
    std::cout << out.dump(2) << "\n";
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
