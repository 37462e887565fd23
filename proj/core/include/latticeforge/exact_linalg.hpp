#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace latticeforge::linalg {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Largest row or column count accepted by IntMatrix.
inline constexpr std::size_t kMaxMatrixDim = 16;

/// Dense integer matrix, row-major. Both dimensions are in [1, kMaxMatrixDim].
class IntMatrix {
 public:
  /// Zero matrix; throws DimensionError outside the size cap.
  IntMatrix(std::size_t rows, std::size_t cols);
  /// Row-major nested initializer; every row must have the same length.
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Builds the matrix whose j-th column is `columns[j]`.
  static IntMatrix from_columns(std::span<const IntVector> columns);
  static IntMatrix from_rows(std::span<const IntVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  IntMatrix transposed() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, std::span<const Integer> x);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> entries_;
};

/// Vector of exact rationals. mpq_class keeps every entry canonical.
struct RatVector {
  std::vector<Rational> entries;

  std::size_t size() const { return entries.size(); }
  const Rational& operator[](std::size_t i) const { return entries[i]; }
  Rational& operator[](std::size_t i) { return entries[i]; }
  bool all_integral() const;
  /// Integer entries; only meaningful when all_integral().
  IntVector numerators() const;

  friend bool operator==(const RatVector&, const RatVector&) = default;
};

RatVector to_rational(std::span<const Integer> v);

/// Exact determinant by Bareiss fraction-free elimination.
Integer determinant(const IntMatrix& m);

/// Exact solution of m·x = b. Throws SingularMatrixError when det(m) = 0.
RatVector solve_rational(const IntMatrix& m, std::span<const Integer> b);
RatVector solve_rational(const IntMatrix& m, std::span<const Rational> b);

struct HermiteDecomposition {
  IntMatrix h;  // column Hermite form
  IntMatrix u;  // unimodular, h = m·u
  std::size_t rank = 0;
};

/// Column-style Hermite normal form: h = m·u with u unimodular, so the
/// integer column span is preserved. h is lower-triangular in echelon form
/// (rank pivot columns followed by zero columns), each pivot is positive and
/// the entries left of a pivot in its row lie in [0, pivot).
HermiteDecomposition hermite_normal_form(const IntMatrix& m);

/// The integer w with m·w = b if one exists. Solved through the Hermite form
/// (forward substitution on h, then w = u·y), independent of solve_rational.
/// Throws SingularMatrixError when det(m) = 0.
std::optional<IntVector> integral_solution(const IntMatrix& m,
                                           std::span<const Integer> b);

/// Rank over the rationals; works for any shape.
std::size_t rank(const IntMatrix& m);

/// Integer basis of {x : m·x = 0}, each vector primitive (gcd 1).
std::vector<IntVector> integer_kernel(const IntMatrix& m);

}  // namespace latticeforge::linalg
