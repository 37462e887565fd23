#include "latticeforge/lp.hpp"

#include <cstddef>
#include <optional>

#include "latticeforge/errors.hpp"

namespace latticeforge::lp {

namespace {

class Tableau {
 public:
  // Columns [0, vars) are structural, [vars, vars + rows) artificial.
  Tableau(const RatMatrix& a, const std::vector<Rational>& b)
      : rows_(a.size()),
        vars_(a.empty() ? 0 : a.front().size()),
        width_(vars_ + rows_) {
    if (b.size() != rows_) throw DimensionError("lp: rhs length mismatch");
    cells_.assign(rows_, std::vector<Rational>(width_ + 1));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (a[i].size() != vars_) throw DimensionError("lp: ragged constraint matrix");
      const bool flip = sgn(b[i]) < 0;
      for (std::size_t j = 0; j < vars_; ++j) cells_[i][j] = flip ? -a[i][j] : a[i][j];
      cells_[i][vars_ + i] = 1;
      rhs(i) = flip ? -b[i] : b[i];
      basis_[i] = vars_ + i;
    }
  }

  // Phase one; returns false when infeasible. On success no artificial
  // column remains basic and redundant rows are dropped.
  bool phase_one() {
    std::vector<Rational> cost(width(), Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) cost[vars_ + i] = -1;
    set_objective(cost);
    run(width());
    if (sgn(objective_value()) < 0) return false;
    drive_out_artificials();
    return true;
  }

  // Phase two over structural columns only.
  Status phase_two(const std::vector<Rational>& c) {
    std::vector<Rational> cost(width(), Rational(0));
    for (std::size_t j = 0; j < vars_; ++j) cost[j] = c[j];
    set_objective(cost);
    return run(vars_) ? Status::kOptimal : Status::kUnbounded;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(vars_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < vars_) x[basis_[i]] = rhs(i);
    return x;
  }

  Rational objective_value() const { return obj_.back(); }

 private:
  std::size_t width() const { return width_; }
  Rational& rhs(std::size_t i) { return cells_[i].back(); }
  const Rational& rhs(std::size_t i) const { return cells_[i].back(); }

  // obj_[j] holds the reduced cost -c_j + c_B·B^-1·A_j; obj_.back() the value.
  void set_objective(const std::vector<Rational>& cost) {
    obj_.assign(width() + 1, Rational(0));
    for (std::size_t j = 0; j < width(); ++j) obj_[j] = -cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= width(); ++j) obj_[j] += cb * cells_[i][j];
    }
  }

  // Bland's rule iterations restricted to columns [0, limit). Returns false
  // if unbounded.
  bool run(std::size_t limit) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sgn(obj_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rational& aij = cells_[i][*enter];
        if (sgn(aij) <= 0) continue;
        Rational ratio = rhs(i) / aij;
        if (!leave || ratio < best ||
            (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = cells_[r][c];
    for (auto& v : cells_[r]) v /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(cells_[i][c]) == 0) continue;
      const Rational f = cells_[i][c];
      for (std::size_t j = 0; j <= width(); ++j) cells_[i][j] -= f * cells_[r][j];
    }
    if (sgn(obj_[c]) != 0) {
      const Rational f = obj_[c];
      for (std::size_t j = 0; j <= width(); ++j) obj_[j] -= f * cells_[r][j];
    }
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_;) {
      if (basis_[i] < vars_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < vars_; ++j) {
        if (sgn(cells_[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        // Redundant equality.
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        --rows_;
      }
    }
  }

  std::size_t rows_;
  std::size_t vars_;
  std::size_t width_;
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> obj_;
};

}  // namespace

Solution maximize(const RatMatrix& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c) {
  Tableau t(a, b);
  if (!a.empty() && c.size() != a.front().size())
    throw DimensionError("lp: objective length mismatch");
  if (!t.phase_one()) return {Status::kInfeasible, {}, Rational(0)};
  if (t.phase_two(c) == Status::kUnbounded) return {Status::kUnbounded, {}, Rational(0)};
  return {Status::kOptimal, t.primal(), t.objective_value()};
}

bool feasible(const RatMatrix& a, const std::vector<Rational>& b) {
  Tableau t(a, b);
  return t.phase_one();
}

}  // namespace latticeforge::lp
