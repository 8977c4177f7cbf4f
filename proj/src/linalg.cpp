#include "gcoh/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcoh {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec IntMatrix::column(std::size_t j) const {
  Vec out(rows);
  for (std::size_t i = 0; i < rows; ++i) out[i] = at(i, j);
  return out;
}

Vec IntMatrix::row(std::size_t i) const {
  return Vec(data.begin() + i * cols, data.begin() + (i + 1) * cols);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](const BigInt& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const BigInt& a = x.at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        if (y.at(k, j) != 0) out.at(i, j) += a * y.at(k, j);
    }
  out.row_labels = x.row_labels;
  out.col_labels = y.col_labels;
  return out;
}

Vec operator*(const IntMatrix& x, const Vec& v) {
  if (x.cols != v.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
  Vec out(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k)
      if (x.at(i, k) != 0 && v[k] != 0) out[i] += x.at(i, k) * v[k];
  return out;
}

BigInt AbelianGroup::torsion_order() const {
  BigInt n = 1;
  for (const auto& d : divisors) n *= d;
  return n;
}

std::string AbelianGroup::to_string() const {
  std::string out;
  if (rank > 0) out = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  for (const auto& d : divisors) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out.empty() ? "0" : out;
}

BigInt mod_floor(const BigInt& x, const BigInt& q) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
  return r;
}

namespace {

class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& a)
      : A(a), U(IntMatrix::identity(a.rows)), V(IntMatrix::identity(a.cols)),
        Vi(IntMatrix::identity(a.cols)), m(a.rows), n(a.cols) {}

  IntMatrix A, U, V, Vi;
  std::size_t m, n;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(A.at(i, k), A.at(j, k));
    for (std::size_t k = 0; k < m; ++k) std::swap(U.at(i, k), U.at(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < m; ++k) std::swap(A.at(k, i), A.at(k, j));
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(V.at(k, i), V.at(k, j));
      std::swap(Vi.at(i, k), Vi.at(j, k));
    }
  }
  // row dst += q * row src
  void add_row(std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t k = 0; k < n; ++k)
      if (A.at(src, k) != 0) A.at(dst, k) += q * A.at(src, k);
    for (std::size_t k = 0; k < m; ++k)
      if (U.at(src, k) != 0) U.at(dst, k) += q * U.at(src, k);
  }
  // col dst += q * col src
  void add_col(std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t k = 0; k < m; ++k)
      if (A.at(k, src) != 0) A.at(k, dst) += q * A.at(k, src);
    for (std::size_t k = 0; k < n; ++k) {
      if (V.at(k, src) != 0) V.at(k, dst) += q * V.at(k, src);
      if (Vi.at(dst, k) != 0) Vi.at(src, k) -= q * Vi.at(dst, k);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < n; ++k) A.at(i, k) = -A.at(i, k);
    for (std::size_t k = 0; k < m; ++k) U.at(i, k) = -U.at(i, k);
  }

  // Smallest nonzero |entry| in the trailing block, moved to (t, t).
  bool bring_min_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const BigInt& x = A.at(i, j);
        if (x == 0) continue;
        if (!found || mpz_cmpabs(x.get_mpz_t(), A.at(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  // Smallest nonzero |entry| in row t / column t, moved to (t, t).
  void bring_min_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < m; ++i)
      if (A.at(i, t) != 0 && (A.at(bi, bj) == 0 || mpz_cmpabs(A.at(i, t).get_mpz_t(), A.at(bi, bj).get_mpz_t()) < 0)) {
        bi = i;
        bj = t;
      }
    for (std::size_t j = t; j < n; ++j)
      if (A.at(t, j) != 0 && (A.at(bi, bj) == 0 || mpz_cmpabs(A.at(t, j).get_mpz_t(), A.at(bi, bj).get_mpz_t()) < 0)) {
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  std::size_t run() {
    std::size_t t = 0;
    BigInt q;
    while (t < std::min(m, n) && bring_min_pivot(t)) {
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (A.at(i, t) == 0) continue;
          mpz_tdiv_q(q.get_mpz_t(), A.at(i, t).get_mpz_t(), A.at(t, t).get_mpz_t());
          if (q != 0) add_row(i, t, -q);
          if (A.at(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (A.at(t, j) == 0) continue;
          mpz_tdiv_q(q.get_mpz_t(), A.at(t, j).get_mpz_t(), A.at(t, t).get_mpz_t());
          if (q != 0) add_col(j, t, -q);
          if (A.at(t, j) != 0) clean = false;
        }
        if (!clean) {
          bring_min_cross(t);
          continue;
        }
        std::size_t bad = m;
        for (std::size_t i = t + 1; i < m && bad == m; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(A.at(i, j).get_mpz_t(), A.at(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad == m) break;
        add_row(t, bad, 1);
      }
      if (A.at(t, t) < 0) negate_row(t);
      ++t;
    }
    return t;
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithWorker w(a);
  const std::size_t rank = w.run();
  SmithDecomposition out;
  out.rank = rank;
  for (std::size_t i = 0; i < rank; ++i) out.diagonal.push_back(w.A.at(i, i));
  out.S = std::move(w.A);
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.V_inv = std::move(w.Vi);

  // multiply back
  IntMatrix plain = a;
  plain.row_labels.clear();
  plain.col_labels.clear();
  if (!(out.U * plain * out.V == out.S) || !(out.V * out.V_inv == IntMatrix::identity(a.cols)))
    throw std::logic_error("smith normal form failed to verify");
  for (std::size_t i = 0; i + 1 < rank; ++i)
    if (!mpz_divisible_p(out.diagonal[i + 1].get_mpz_t(), out.diagonal[i].get_mpz_t()))
      throw std::logic_error("smith diagonal is not a divisor chain");
  return out;
}

AbelianGroup cokernel_from_diagonal(std::size_t rows, const Vec& diagonal) {
  AbelianGroup g;
  g.rank = rows - diagonal.size();
  for (const auto& d : diagonal)
    if (d > 1) g.divisors.push_back(d);
  return g;
}

AbelianGroup cokernel_structure(const IntMatrix& a) {
  if (a.rows == 0 || a.cols == 0) return cokernel_from_diagonal(a.rows, {});
  return cokernel_from_diagonal(a.rows, smith_normal_form(a).diagonal);
}

BigInt kernel_mod_size(const SmithDecomposition& snf, std::size_t cols, unsigned long p, unsigned s) {
  const BigInt q = ipow(p, s);
  BigInt total = 1;
  for (const auto& d : snf.diagonal) total *= gcd(d, q);
  for (std::size_t j = snf.rank; j < cols; ++j) total *= q;
  return total;
}

BigInt kernel_mod_size(const IntMatrix& a, unsigned long p, unsigned s) {
  return kernel_mod_size(smith_normal_form(a), a.cols, p, s);
}

std::vector<Vec> kernel_mod(const IntMatrix& a, unsigned long p, unsigned s) {
  const BigInt q = ipow(p, s);
  const auto snf = smith_normal_form(a);
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < a.cols; ++j) {
    BigInt factor = 1;
    if (j < snf.rank) {
      const BigInt g = gcd(snf.diagonal[j], q);
      if (g == 1) continue;
      factor = q / g;
    }
    Vec v = snf.V.column(j);
    bool nonzero = false;
    for (auto& x : v) {
      x = mod_floor(x * factor, q);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) gens.push_back(std::move(v));
  }
  return gens;
}

std::optional<Vec> solve_mod(const IntMatrix& a, const Vec& b, unsigned long p, unsigned s) {
  if (b.size() != a.rows) throw std::invalid_argument("right-hand side has wrong length");
  const BigInt q = ipow(p, s);
  if (a.cols == 0) {
    for (const auto& x : b)
      if (mod_floor(x, q) != 0) return std::nullopt;
    return Vec{};
  }
  const auto snf = smith_normal_form(a);
  const Vec c = snf.U * b;
  Vec y(a.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const BigInt ci = mod_floor(c[i], q);
    if (i >= snf.rank) {
      if (ci != 0) return std::nullopt;
      continue;
    }
    const BigInt g = gcd(snf.diagonal[i], q);
    if (!mpz_divisible_p(ci.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
    const BigInt qg = q / g;
    BigInt inv = 0;
    if (qg > 1) {
      BigInt dg = mod_floor(snf.diagonal[i] / g, qg);
      mpz_invert(inv.get_mpz_t(), dg.get_mpz_t(), qg.get_mpz_t());
    }
    y[i] = mod_floor((ci / g) * inv, qg);
  }
  Vec x = snf.V * y;
  for (auto& v : x) v = mod_floor(v, q);
  return x;
}

std::vector<Vec> integer_kernel(const IntMatrix& a) {
  std::vector<Vec> out;
  if (a.rows == 0) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      Vec v(a.cols);
      v[j] = 1;
      out.push_back(std::move(v));
    }
    return out;
  }
  const auto snf = smith_normal_form(a);
  for (std::size_t j = snf.rank; j < a.cols; ++j) out.push_back(snf.V.column(j));
  return out;
}

BigInt span_order_mod(const std::vector<Vec>& gens, std::size_t n, const BigInt& q) {
  if (n == 0) return 1;
  IntMatrix m(n, gens.size() + n);
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = gens[j].at(i);
  for (std::size_t i = 0; i < n; ++i) m.at(i, gens.size() + i) = q;
  BigInt index = 1;
  for (const auto& d : smith_normal_form(m).diagonal) index *= d;
  BigInt full;
  mpz_pow_ui(full.get_mpz_t(), q.get_mpz_t(), n);
  return full / index;
}

}  // namespace gcoh
