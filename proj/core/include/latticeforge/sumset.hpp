#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "latticeforge/geometry.hpp"

// Assumption-free sumsets of finite lattice sets and the brute-force check
// of h(P ∩ Z^n) = (hP) ∩ Z^n. Nothing here relies on triangulations, so it
// serves as the independent oracle for everything in unimodular.hpp.
namespace latticeforge::sumset {

using geometry::Coord;
using geometry::LatticePoint;
using geometry::LatticePolytope;
using geometry::Limits;

/// Sorted, duplicate-free set of lattice points of one dimension.
class PointSet {
 public:
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  /// Sorts and deduplicates; throws DimensionError on mixed dimensions.
  PointSet(std::size_t dim, std::vector<LatticePoint> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(const LatticePoint& p) const;
  bool is_subset_of(const PointSet& other) const;
  /// Elements of *this that are not in `other`.
  PointSet minus(const PointSet& other) const;
  PointSet translated(const LatticePoint& v) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_;
  std::vector<LatticePoint> points_;
};

/// {s + t}. Throws ResourceError once the distinct sums exceed
/// limits.max_set_size.
PointSet sumset(const PointSet& s, const PointSet& t, const Limits& limits = {});

/// s + s + ... + s (h summands), by repeated doubling.
PointSet hfold_sumset(const PointSet& s, Coord h, const Limits& limits = {});

/// Some h elements of s (with repetition, sorted) summing to p, if any.
std::optional<std::vector<LatticePoint>> find_summands(const PointSet& s,
                                                       const LatticePoint& p, Coord h,
                                                       const Limits& limits = {});

struct IdpReport {
  Coord h = 1;
  bool holds = true;
  /// (hP) ∩ Z^n minus h(P ∩ Z^n); every element is a counterexample.
  PointSet witnesses{0};
  std::size_t sumset_size = 0;  // |h(P ∩ Z^n)|
  std::size_t dilate_size = 0;  // |(hP) ∩ Z^n|
};

/// Compares h(P ∩ Z^n) against (hP) ∩ Z^n. A point of the sumset outside the
/// dilate is an implementation bug and raises std::logic_error.
IdpReport idp_check(const LatticePolytope& p, Coord h, const Limits& limits = {});

/// idp_check for h = 1..h_max. Resource errors are rethrown carrying h.
std::vector<IdpReport> idp_scan(const LatticePolytope& p, Coord h_max,
                                const Limits& limits = {});

}  // namespace latticeforge::sumset
