#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcoh/graph.hpp"

namespace gcoh {

using Vec = std::vector<BigInt>;

// Dense integer matrix with optional basis labels.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> data;
  std::vector<std::string> row_labels, col_labels;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  BigInt& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  Vec column(std::size_t j) const;
  Vec row(std::size_t i) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.data == y.data;
  }
};

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
Vec operator*(const IntMatrix& x, const Vec& v);

// U * A * V = S with U, V unimodular; V_inv is the inverse of V.
struct SmithDecomposition {
  IntMatrix U, S, V, V_inv;
  std::size_t rank = 0;
  Vec diagonal;  // the nonzero diagonal, d1 | d2 | ...
};

// Finitely generated abelian group: Z^rank + sum of Z/d.
struct AbelianGroup {
  std::size_t rank = 0;
  Vec divisors;  // each > 1, each dividing the next

  BigInt torsion_order() const;
  std::string to_string() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Z^rows / image(A).
AbelianGroup cokernel_structure(const IntMatrix& a);
AbelianGroup cokernel_from_diagonal(std::size_t rows, const Vec& diagonal);

// Generators of {x : A x = 0 mod p^s}, entries reduced into [0, p^s).
std::vector<Vec> kernel_mod(const IntMatrix& a, unsigned long p, unsigned s);
// Number of solutions of A x = 0 mod p^s.
BigInt kernel_mod_size(const IntMatrix& a, unsigned long p, unsigned s);
BigInt kernel_mod_size(const SmithDecomposition& snf, std::size_t cols, unsigned long p, unsigned s);

// Some x with A x = b mod p^s.
std::optional<Vec> solve_mod(const IntMatrix& a, const Vec& b, unsigned long p, unsigned s);

// Z-basis of the integer kernel, as columns of V.
std::vector<Vec> integer_kernel(const IntMatrix& a);

// Order of the subgroup of (Z/q)^n generated by the given vectors.
BigInt span_order_mod(const std::vector<Vec>& gens, std::size_t n, const BigInt& q);

BigInt mod_floor(const BigInt& x, const BigInt& q);

}  // namespace gcoh
