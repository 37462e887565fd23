#pragma once

#include <vector>

#include "latticeforge/exact_linalg.hpp"

// Exact linear programming over the rationals, used for hull membership and
// interior-disjointness tests. Dense two-phase simplex with Bland's rule, so
// it always terminates; sizes here are tiny (a few dozen variables).
namespace latticeforge::lp {

using linalg::Rational;
using RatMatrix = std::vector<std::vector<Rational>>;

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<Rational> x;  // primal point; empty unless kOptimal
  Rational objective;
};

/// maximize c·x  subject to  a·x = b, x >= 0.
Solution maximize(const RatMatrix& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c);

/// Whether {x >= 0 : a·x = b} is nonempty. Runs phase one only.
bool feasible(const RatMatrix& a, const std::vector<Rational>& b);

}  // namespace latticeforge::lp
