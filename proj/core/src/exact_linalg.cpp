#include "latticeforge/exact_linalg.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "latticeforge/errors.hpp"

namespace latticeforge::linalg {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || rows > kMaxMatrixDim || cols > kMaxMatrixDim) {
    throw DimensionError("matrix dimensions " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " outside [1, " +
                         std::to_string(kMaxMatrixDim) + "]");
  }
}

void require_square(const IntMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw DimensionError(std::string(op) + " needs a square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

// Rational row echelon form in place; returns rank.
std::size_t rational_echelon(std::vector<std::vector<Rational>>& a,
                             std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    auto pivot = std::find_if(a.begin() + static_cast<std::ptrdiff_t>(r),
                              a.end(), [c](const auto& row) { return sgn(row[c]) != 0; });
    if (pivot == a.end()) continue;
    std::iter_swap(a.begin() + static_cast<std::ptrdiff_t>(r), pivot);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Column operation pair: (ck, cj) <- (s*ck + t*cj, -(b/g)*ck + (a/g)*cj).
void combine_columns(IntMatrix& m, std::size_t k, std::size_t j,
                     const Integer& s, const Integer& t, const Integer& p,
                     const Integer& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer ck = m(r, k);
    Integer cj = m(r, j);
    m(r, k) = s * ck + t * cj;
    m(r, j) = p * ck + q * cj;
  }
}

void axpy_column(IntMatrix& m, std::size_t dst, std::size_t src,
                 const Integer& factor) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= factor * m(r, src);
}

void negate_column(IntMatrix& m, std::size_t c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  entries_.assign(rows * cols, Integer(0));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  check_dims(rows_, cols_);
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
    for (long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVector> columns) {
  if (columns.empty()) throw DimensionError("matrix needs at least one column");
  IntMatrix m(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != m.rows())
      throw DimensionError("columns of unequal length");
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows) {
  if (rows.empty()) throw DimensionError("matrix needs at least one row");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw DimensionError("rows of unequal length");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  IntMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

IntVector operator*(const IntMatrix& a, std::span<const Integer> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
  IntVector y(a.rows(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
  return y;
}

bool RatVector::all_integral() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Rational& q) { return q.get_den() == 1; });
}

IntVector RatVector::numerators() const {
  IntVector out;
  out.reserve(entries.size());
  for (const auto& q : entries) out.push_back(q.get_num());
  return out;
}

RatVector to_rational(std::span<const Integer> v) {
  RatVector out;
  out.entries.reserve(v.size());
  for (const auto& x : v) out.entries.emplace_back(x);
  return out;
}

Integer determinant(const IntMatrix& m) {
  require_square(m, "determinant");
  const std::size_t n = m.rows();
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact by Sylvester's identity.
        a(i, j) = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RatVector solve_rational(const IntMatrix& m, std::span<const Integer> b) {
  RatVector rb = to_rational(b);
  return solve_rational(m, std::span<const Rational>(rb.entries));
}

RatVector solve_rational(const IntMatrix& m, std::span<const Rational> b) {
  require_square(m, "solve_rational");
  const std::size_t n = m.rows();
  if (b.size() != n) throw DimensionError("right-hand side length mismatch");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) throw SingularMatrixError("solve_rational: matrix is singular");
    std::swap(a[c], a[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  RatVector x;
  x.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i) x.entries[i] = a[i][n] / a[i][i];
  return x;
}

HermiteDecomposition hermite_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows && k < cols; ++i) {
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (sgn(h(i, j)) == 0) continue;
      Integer a = h(i, k);
      Integer b = h(i, j);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      Integer p = -b / g;
      Integer q = a / g;
      combine_columns(h, k, j, s, t, p, q);
      combine_columns(u, k, j, s, t, p, q);
    }
    if (sgn(h(i, k)) == 0) continue;
    if (sgn(h(i, k)) < 0) {
      negate_column(h, k);
      negate_column(u, k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Integer f;
      mpz_fdiv_q(f.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
      if (sgn(f) == 0) continue;
      axpy_column(h, j, k, f);
      axpy_column(u, j, k, f);
    }
    ++k;
  }
  return {std::move(h), std::move(u), k};
}

std::optional<IntVector> integral_solution(const IntMatrix& m,
                                           std::span<const Integer> b) {
  require_square(m, "integral_solution");
  const std::size_t n = m.rows();
  if (b.size() != n) throw DimensionError("right-hand side length mismatch");
  HermiteDecomposition hnf = hermite_normal_form(m);
  if (hnf.rank < n) throw SingularMatrixError("integral_solution: matrix is singular");
  IntVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer rest = b[i];
    for (std::size_t j = 0; j < i; ++j) rest -= hnf.h(i, j) * y[j];
    if (!mpz_divisible_p(rest.get_mpz_t(), hnf.h(i, i).get_mpz_t()))
      return std::nullopt;
    mpz_divexact(y[i].get_mpz_t(), rest.get_mpz_t(), hnf.h(i, i).get_mpz_t());
  }
  return hnf.u * std::span<const Integer>(y);
}

std::size_t rank(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return rational_echelon(a, m.cols());
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  HermiteDecomposition hnf = hermite_normal_form(m);
  std::vector<IntVector> basis;
  for (std::size_t c = hnf.rank; c < m.cols(); ++c) {
    IntVector v = hnf.u.column(c);
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace latticeforge::linalg
