#include "gcoh/tropical.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace gcoh {

TropicalValue TropicalValue::infinity() {
  TropicalValue v;
  v.inf_ = true;
  return v;
}

std::int64_t TropicalValue::value() const {
  if (inf_) throw std::domain_error("tropical infinity has no integer value");
  return value_;
}

std::string TropicalValue::to_string() const { return inf_ ? "∞" : std::to_string(value_); }

TropicalValue tplus(const TropicalValue& a, const TropicalValue& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  return std::min(a.value(), b.value());
}

TropicalValue ttimes(const TropicalValue& a, const TropicalValue& b) {
  if (a.is_infinite() || b.is_infinite()) return TropicalValue::infinity();
  return a.value() + b.value();
}

TropicalValue tdivide(const TropicalValue& a, const TropicalValue& b) {
  if (b.is_infinite()) throw InputError("tropical division by infinity");
  if (a.is_infinite()) return a;
  return a.value() - b.value();
}

TropicalExpr TropicalExpr::variable(std::string id) {
  TropicalExpr e;
  e.kind = Kind::Variable;
  e.var = std::move(id);
  return e;
}

TropicalExpr TropicalExpr::value(TropicalValue v) {
  TropicalExpr e;
  e.kind = Kind::Constant;
  e.constant = v;
  return e;
}

TropicalExpr TropicalExpr::plus(std::vector<TropicalExpr> xs) {
  if (xs.empty()) return value(TropicalValue::infinity());
  if (xs.size() == 1) return std::move(xs.front());
  TropicalExpr e;
  e.kind = Kind::Plus;
  e.children = std::move(xs);
  return e;
}

TropicalExpr TropicalExpr::times(std::vector<TropicalExpr> xs) {
  if (xs.empty()) return value(0);
  if (xs.size() == 1) return std::move(xs.front());
  TropicalExpr e;
  e.kind = Kind::Times;
  e.children = std::move(xs);
  return e;
}

TropicalExpr TropicalExpr::quotient(TropicalExpr num, TropicalExpr den) {
  TropicalExpr e;
  e.kind = Kind::Quotient;
  e.children = {std::move(num), std::move(den)};
  return e;
}

TropicalExpr TropicalExpr::clamp(TropicalExpr x) {
  TropicalExpr e;
  e.kind = Kind::Clamp;
  e.children = {std::move(x)};
  return e;
}

TropicalValue eval(const TropicalExpr& e, const Assignment& a) {
  using K = TropicalExpr::Kind;
  switch (e.kind) {
    case K::Variable: {
      auto it = a.find(e.var);
      if (it == a.end()) throw InputError("no value for variable k[" + e.var + "]");
      return it->second;
    }
    case K::Constant: return e.constant;
    case K::Plus: {
      TropicalValue acc = TropicalValue::infinity();
      for (const auto& c : e.children) acc = tplus(acc, eval(c, a));
      return acc;
    }
    case K::Times: {
      TropicalValue acc = 0;
      for (const auto& c : e.children) acc = ttimes(acc, eval(c, a));
      return acc;
    }
    case K::Quotient: return tdivide(eval(e.children[0], a), eval(e.children[1], a));
    case K::Clamp: {
      const TropicalValue x = eval(e.children[0], a);
      if (x.is_infinite()) return x;
      return std::max<std::int64_t>(x.value(), 0);
    }
  }
  throw std::logic_error("unknown tropical expression kind");
}

namespace {

std::string escape_id(const std::string& id) {
  std::string out;
  for (char c : id) {
    if (c == ']' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void render_to(const TropicalExpr& e, std::string& out) {
  using K = TropicalExpr::Kind;
  switch (e.kind) {
    case K::Variable: out += "k[" + escape_id(e.var) + "]"; return;
    case K::Constant: out += e.constant.to_string(); return;
    case K::Clamp:
      out += "max(";
      render_to(e.children[0], out);
      out += ", 0)";
      return;
    default: break;
  }
  const char* op = e.kind == K::Plus ? " ⊕ " : e.kind == K::Times ? " ⊙ " : " ⊘ ";
  out += "(";
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += op;
    render_to(e.children[i], out);
  }
  out += ")";
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  TropicalExpr run() {
    TropicalExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("tropical expression: " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n')) ++pos_;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) != 0) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }

  TropicalExpr expr() {
    skip();
    if (eat("∞")) return TropicalExpr::value(TropicalValue::infinity());
    if (eat("max(")) {
      TropicalExpr inner = expr();
      expect(",");
      expect("0");
      expect(")");
      return TropicalExpr::clamp(std::move(inner));
    }
    if (eat("k[")) {
      std::string id;
      while (pos_ < s_.size() && s_[pos_] != ']') {
        if (s_[pos_] == '\\') ++pos_;
        if (pos_ >= s_.size()) fail("unterminated variable");
        id += s_[pos_++];
      }
      expect("]");
      return TropicalExpr::variable(id);
    }
    if (eat("(")) return group();
    return number();
  }

  TropicalExpr number() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (pos_ == digits) fail("expected an expression");
    try {
      return TropicalExpr::value(std::stoll(s_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail("constant out of range");
    }
  }

  TropicalExpr group() {
    std::vector<TropicalExpr> xs;
    xs.push_back(expr());
    std::string op;
    for (;;) {
      if (eat(")")) break;
      std::string next;
      for (const char* cand : {"⊕", "⊙", "⊘"})
        if (eat(cand)) next = cand;
      if (next.empty()) fail("expected an operator or ')'");
      if (!op.empty() && op != next) fail("mixed operators need parentheses");
      op = next;
      xs.push_back(expr());
    }
    if (op.empty()) return std::move(xs.front());
    if (op == "⊘") {
      if (xs.size() != 2) fail("tropical quotient takes two operands");
      return TropicalExpr::quotient(std::move(xs[0]), std::move(xs[1]));
    }
    return op == "⊕" ? TropicalExpr::plus(std::move(xs)) : TropicalExpr::times(std::move(xs));
  }
};

bool connected_bipartite(const Subgraph& d) {
  return components(d).size() == 1 && bipartition(d).has_value();
}

}  // namespace

std::string render(const TropicalExpr& e) {
  std::string out;
  render_to(e, out);
  return out;
}

TropicalExpr parse_tropical(const std::string& text) { return Parser(text).run(); }

TropicalExpr elementary_symmetric(unsigned i, const std::vector<TropicalExpr>& xs) {
  if (i < 1 || i > xs.size()) throw InputError("elementary symmetric function index out of range");
  std::vector<TropicalExpr> terms;
  std::vector<bool> pick(xs.size(), false);
  std::fill(pick.begin(), pick.begin() + i, true);
  do {
    std::vector<TropicalExpr> factors;
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (pick[j]) factors.push_back(xs[j]);
    terms.push_back(TropicalExpr::times(std::move(factors)));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return TropicalExpr::plus(std::move(terms));
}

TropicalExpr elementary_symmetric(unsigned i, const std::vector<std::string>& vars) {
  std::vector<TropicalExpr> xs;
  for (const auto& v : vars) xs.push_back(TropicalExpr::variable(v));
  return elementary_symmetric(i, xs);
}

TropicalExpr tropical_max(const std::vector<TropicalExpr>& xs) {
  if (xs.empty()) throw std::invalid_argument("maximum of nothing");
  if (xs.size() == 1) return xs.front();
  std::vector<TropicalExpr> rest;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::vector<TropicalExpr> others;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (i != j) others.push_back(xs[i]);
    rest.push_back(TropicalExpr::times(std::move(others)));
  }
  return TropicalExpr::quotient(TropicalExpr::times(xs), TropicalExpr::plus(std::move(rest)));
}

TropicalExpr edge_monomial(const WeightedGraph& g, int e) {
  const Edge& ed = g.edge(e);
  return TropicalExpr::times({TropicalExpr::variable(g.id(ed.a)), TropicalExpr::variable(g.id(ed.b))});
}

TropicalExpr g_delta(const Subgraph& d, const WeightedGraph& g) {
  if (d.parent != &g) throw InputError("subgraph belongs to another graph");
  if (!connected_bipartite(d)) throw InputError("g_delta needs a connected bipartite subgraph");
  const auto boundary = edge_boundary(d, g);
  if (boundary.empty()) throw InputError("g_delta needs a nonempty edge boundary");
  std::vector<TropicalExpr> outer, inner;
  for (int e : boundary) outer.push_back(edge_monomial(g, e));
  for (int e : d.edges) inner.push_back(edge_monomial(g, e));
  std::vector<std::string> ids;
  for (int v : d.vertices) ids.push_back(g.id(v));
  inner.push_back(elementary_symmetric(1, ids));
  return TropicalExpr::clamp(TropicalExpr::quotient(TropicalExpr::plus(std::move(outer)), tropical_max(inner)));
}

EnumerationLimits EnumerationLimits::from_environment() {
  EnumerationLimits lim;
  if (const char* env = std::getenv("GCOH_MAX_SUBGRAPHS")) {
    try {
      std::size_t used = 0;
      lim.max_subgraphs = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw InputError("GCOH_MAX_SUBGRAPHS must be a nonnegative integer");
    }
  }
  return lim;
}

std::vector<Subgraph> candidate_subgraphs(const WeightedGraph& g, const EnumerationLimits& lim) {
  const int n = g.vertex_count();
  if (n > lim.max_vertices)
    throw ResourceLimitError("graph has " + std::to_string(n) + " vertices, enumeration cap is " +
                             std::to_string(lim.max_vertices) + " (raise it with --max-vertices)");
  if (n > 30) throw ResourceLimitError("subgraph enumeration beyond 30 vertices is not supported");
  std::vector<std::vector<int>> induced(std::size_t{1} << n);
  std::uint64_t total = 0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    for (int e = 0; e < g.edge_count(); ++e)
      if ((s >> g.edge(e).a & 1) && (s >> g.edge(e).b & 1)) induced[s].push_back(e);
    const std::size_t k = induced[s].size();
    const std::uint64_t masks = k >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << k;
    total = masks > ~std::uint64_t{0} - total ? ~std::uint64_t{0} : total + masks;
  }
  if (total > lim.max_subgraphs)
    throw ResourceLimitError("subgraph enumeration would examine " + std::to_string(total) +
                             " edge sets, cap is " + std::to_string(lim.max_subgraphs) +
                             " (raise it with GCOH_MAX_SUBGRAPHS)");

  // x -> z when some vertex has internal edge to x and boundary edge to z:
  // then val k_x < val k_z is forced, so a cycle rules the subgraph out.
  auto realisable = [&](const Subgraph& d) {
    std::vector<std::vector<int>> arcs(n);
    for (int u : d.vertices) {
      std::vector<int> in, out;
      for (int e : g.incident(u)) {
        const int w = g.edge(e).a == u ? g.edge(e).b : g.edge(e).a;
        (d.has_edge(e) ? in : out).push_back(w);
      }
      for (int x : in)
        for (int z : out) arcs[x].push_back(z);
    }
    std::vector<int> state(n, 0);
    std::function<bool(int)> cyclic = [&](int v) {
      state[v] = 1;
      for (int w : arcs[v])
        if (state[w] == 1 || (state[w] == 0 && cyclic(w))) return true;
      state[v] = 2;
      return false;
    };
    for (int v = 0; v < n; ++v)
      if (state[v] == 0 && cyclic(v)) return false;
    return true;
  };

  std::vector<Subgraph> out;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (s >> v & 1) verts.push_back(v);
    const auto& es = induced[s];
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << es.size()); ++mask) {
      Subgraph d{&g, verts, {}};
      for (std::size_t i = 0; i < es.size(); ++i)
        if (mask >> i & 1) d.edges.push_back(es[i]);
      if (static_cast<int>(verts.size()) == n && static_cast<int>(d.edges.size()) == g.edge_count()) continue;
      if (d.edges.size() + 1 < verts.size()) continue;
      if (!connected_bipartite(d) || !realisable(d)) continue;
      out.push_back(std::move(d));
    }
  }
  return out;
}

TropicalExpr z_gamma(const WeightedGraph& g, const EnumerationLimits& lim) {
  if (g.vertex_count() > lim.max_vertices)
    throw ResourceLimitError("graph has " + std::to_string(g.vertex_count()) +
                             " vertices, enumeration cap is " + std::to_string(lim.max_vertices) +
                             " (raise it with --max-vertices)");
  const auto comps = components(g);
  if (comps.size() > 1) {
    std::vector<TropicalExpr> parts;
    for (const auto& c : comps) parts.push_back(z_gamma(as_graph(c), lim));
    return TropicalExpr::times(std::move(parts));
  }
  if (g.vertex_count() == 0) return TropicalExpr::value(0);
  std::vector<TropicalExpr> terms;
  for (const auto& d : candidate_subgraphs(g, lim)) terms.push_back(g_delta(d, g));
  TropicalExpr z = TropicalExpr::times(std::move(terms));
  if (g.edge_count() > 0 && bipartition(Subgraph::whole(g))) {
    std::vector<TropicalExpr> monomials;
    for (int e = 0; e < g.edge_count(); ++e) monomials.push_back(edge_monomial(g, e));
    const TropicalExpr spread =
        TropicalExpr::quotient(tropical_max(monomials), elementary_symmetric(1, g.ids()));
    z = TropicalExpr::quotient(std::move(z), spread);
  }
  return z;
}

TropicalExpr z_complete(const std::vector<std::string>& vars) {
  if (vars.size() < 3) throw InputError("the complete-graph formula needs n >= 3");
  std::vector<TropicalExpr> factors(vars.size() - 3, elementary_symmetric(1, vars));
  factors.push_back(elementary_symmetric(3, vars));
  return TropicalExpr::times(std::move(factors));
}

Assignment valuation_assignment(const WeightedGraph& g, unsigned long p) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (p == 2) throw InputError("tropical evaluation is only defined for odd primes");
  Assignment a;
  for (int v = 0; v < g.vertex_count(); ++v) a[g.id(v)] = static_cast<std::int64_t>(p_valuation(g.weight(v), p));
  return a;
}

}  // namespace gcoh
