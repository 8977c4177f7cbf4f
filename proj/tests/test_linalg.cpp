#include <doctest.h>

#include "fixtures.hpp"
#include "gcoh/cohomology.hpp"
#include "gcoh/linalg.hpp"
#include "oracle.hpp"

using namespace gcoh;

namespace {

IntMatrix from(const std::vector<std::vector<long>>& rows) {
  std::vector<Vec> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return IntMatrix::from_rows(r, rows.empty() ? 0 : rows[0].size());
}

oracle::Mat to_oracle(const IntMatrix& m) {
  oracle::Mat out(m.rows, std::vector<oracle::Z>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i][j] = m.at(i, j);
  return out;
}

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long range) {
  IntMatrix m(r, c);
  for (auto& x : m.data) x = static_cast<long>(rng() % (2 * range + 1)) - range;
  return m;
}

BigInt det(IntMatrix m) {
  // fraction-free elimination, small square matrices only
  const std::size_t n = m.rows;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m.at(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(from({{2, 0}, {0, 3}}));
  CHECK(s.diagonal == Vec{1, 6});

  s = smith_normal_form(IntMatrix(2, 3));
  CHECK(s.rank == 0);
  CHECK(s.U == IntMatrix::identity(2));
  CHECK(s.V == IntMatrix::identity(3));

  s = smith_normal_form(d0_matrix(Subgraph::whole(fx::k3())));
  CHECK(s.diagonal == Vec{1, 1, 162});
}

TEST_CASE("cokernel structure examples") {
  const auto c = cokernel_structure(from({{6, 4}}));
  CHECK(c.rank == 0);
  CHECK(c.divisors == Vec{2});
  CHECK(cokernel_structure(IntMatrix(3, 0)).rank == 3);
  const auto k = cokernel_structure(d0_matrix(Subgraph::whole(fx::k3())));
  CHECK(k.rank == 0);
  CHECK(k.divisors == Vec{162});
  CHECK(k.to_string() == "Z/162");
}

TEST_CASE("kernel mod p^s examples") {
  const auto all = kernel_mod(from({{6, 4}}), 2, 1);
  CHECK(span_order_mod(all, 2, 2) == 4);
  CHECK(kernel_mod(d0_matrix(Subgraph::whole(fx::triangle(1, 1, 1))), 3, 1).empty());

  const auto t = fx::triangle(2, 1, 1);
  const auto gens = kernel_mod(d0_matrix(Subgraph::whole(t)), 2, 2);
  CHECK(span_order_mod(gens, 3, 4) == 4);
  // (-2, 1, -1) lies in the span and generates it
  const Vec z{2, 1, 3};
  CHECK(span_order_mod({z}, 3, 4) == 4);
  IntMatrix m(3, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < 3; ++i) m.at(i, j) = gens[j][i];
  CHECK(solve_mod(m, z, 2, 2).has_value());
}

TEST_CASE("solve mod p^s examples") {
  const auto id = IntMatrix::identity(3);
  const Vec b{5, 7, 11};
  const auto x = solve_mod(id, b, 5, 2);
  REQUIRE(x);
  for (std::size_t i = 0; i < 3; ++i) CHECK(mod_floor((*x)[i] - b[i], 25) == 0);
  CHECK_FALSE(solve_mod(from({{3}}), Vec{1}, 3, 2));
  const auto y = solve_mod(from({{3}}), Vec{3}, 3, 2);
  REQUIRE(y);
  CHECK(mod_floor((*y)[0] * 3 - 3, 9) == 0);
}

TEST_CASE("smith normal form agrees with independent oracles") {
  auto rng = fx::rng(7);
  for (int it = 0; it < 150; ++it) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const IntMatrix a = random_matrix(rng, r, c, it % 3 == 0 ? 60 : 6);
    const auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.S);
    CHECK(abs(det(s.U)) == 1);
    CHECK(abs(det(s.V)) == 1);
    CHECK(s.V * s.V_inv == IntMatrix::identity(c));
    const auto euclid = oracle::invariant_factors(to_oracle(a));
    CHECK(s.diagonal == Vec(euclid.begin(), euclid.end()));
    if (r <= 4 && c <= 4) {
      const auto minors = oracle::determinantal_divisors(to_oracle(a));
      CHECK(s.diagonal == Vec(minors.begin(), minors.end()));
    }
  }
}

TEST_CASE("cokernel is invariant under row and column permutations") {
  auto rng = fx::rng(8);
  for (int it = 0; it < 60; ++it) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const IntMatrix a = random_matrix(rng, r, c, 9);
    std::vector<std::size_t> pr(r), pc(c);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    IntMatrix b(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b.at(i, j) = a.at(pr[i], pc[j]);
    CHECK(cokernel_structure(a) == cokernel_structure(b));
  }
}

TEST_CASE("kernel mod p^s: generators, cardinality and reduction") {
  auto rng = fx::rng(9);
  for (int it = 0; it < 80; ++it) {
    const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    const unsigned long p = it % 2 ? 2 : 3;
    const unsigned s = 1 + static_cast<unsigned>(rng() % 2);
    const IntMatrix a = random_matrix(rng, r, c, 12);
    const BigInt q = ipow(p, s);
    const auto gens = kernel_mod(a, p, s);
    for (const auto& u : gens)
      for (const auto& x : a * u) CHECK(mod_floor(x, q) == 0);
    const auto brute = oracle::kernel_count(to_oracle(a), q.get_ui(), c);
    CHECK(kernel_mod_size(a, p, s) == brute);
    CHECK(span_order_mod(gens, c, q) == brute);
    if (s > 1) {
      const BigInt low = ipow(p, s - 1);
      std::vector<Vec> reduced;
      for (const auto& u : gens) {
        Vec v;
        for (const auto& x : u) v.push_back(mod_floor(x, low));
        reduced.push_back(v);
      }
      const auto lower = kernel_mod(a, p, s - 1);
      // reductions of level-s cocycles stay cocycles and sit inside the level s-1 kernel
      CHECK(span_order_mod(reduced, c, low) <= span_order_mod(lower, c, low));
      IntMatrix m(c, lower.size());
      for (std::size_t j = 0; j < lower.size(); ++j)
        for (std::size_t i = 0; i < c; ++i) m.at(i, j) = lower[j][i];
      for (const auto& v : reduced)
        if (!lower.empty()) CHECK(solve_mod(m, v, p, s - 1).has_value());
    }
  }
}

TEST_CASE("integer kernel is a basis of the null space") {
  auto rng = fx::rng(10);
  for (int it = 0; it < 40; ++it) {
    const IntMatrix a = random_matrix(rng, 1 + rng() % 3, 2 + rng() % 3, 5);
    const auto basis = integer_kernel(a);
    CHECK(basis.size() == a.cols - smith_normal_form(a).rank);
    for (const auto& v : basis) CHECK((IntMatrix(a) * v) == Vec(a.rows, 0));
  }
}
