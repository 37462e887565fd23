#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "latticeforge/exact_linalg.hpp"

namespace latticeforge::geometry {

using linalg::Integer;
using linalg::IntVector;
using linalg::Rational;
using linalg::RatVector;

using Coord = std::int64_t;

/// Ambient dimension cap for polytopes and simplices.
inline constexpr std::size_t kMaxDimension = 8;

/// A point of Z^n. Arithmetic is overflow-checked and throws ResourceError
/// rather than wrapping.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<Coord> coords) : coords_(coords) {}

  static LatticePoint zero(std::size_t n) { return LatticePoint(std::vector<Coord>(n, 0)); }
  static LatticePoint unit(std::size_t n, std::size_t i);

  std::size_t dim() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Coord>& coords() const { return coords_; }

  LatticePoint scaled(Coord factor) const;
  IntVector to_integers() const;

  friend LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
  friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;

 private:
  std::vector<Coord> coords_;
};

/// A rational point, e.g. p/h for a lattice point p of a dilate.
class RatPoint {
 public:
  RatPoint() = default;
  explicit RatPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  explicit RatPoint(const LatticePoint& p);
  /// The point p / denominator.
  static RatPoint divided(const LatticePoint& p, Coord denominator);

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_integral() const;
  /// Requires is_integral(); throws NonLatticeError otherwise.
  LatticePoint to_lattice() const;

  friend bool operator==(const RatPoint&, const RatPoint&) = default;

 private:
  std::vector<Rational> coords_;
};

/// n+1 affinely independent lattice points in Z^n, kept in the given order
/// (vertex 0 is the base vertex a0).
class LatticeSimplex {
 public:
  /// Throws DimensionError for a wrong point count or mixed dimensions and
  /// DegenerateError when the points are affinely dependent.
  explicit LatticeSimplex(std::vector<LatticePoint> vertices);

  std::size_t dim() const { return vertices_.size() - 1; }
  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  const LatticePoint& vertex(std::size_t i) const { return vertices_[i]; }

  /// Columns are a_i - a_0 for i = 1..n.
  linalg::IntMatrix difference_matrix() const;
  /// |det(difference_matrix())|, the normalized volume.
  Integer normalized_volume() const;

  friend bool operator==(const LatticeSimplex&, const LatticeSimplex&) = default;

 private:
  std::vector<LatticePoint> vertices_;
};

/// Convex hull of finitely many lattice points. The vertex list is the
/// lexicographically sorted set of extreme generators, computed once.
class LatticePolytope {
 public:
  /// Throws DimensionError on an empty list, mixed dimensions or a dimension
  /// outside [1, kMaxDimension].
  explicit LatticePolytope(std::vector<LatticePoint> generators);

  /// Hull of a simplex; its vertices are known to be extreme.
  static LatticePolytope hull(const LatticeSimplex& s);
  /// Trusts that `vertices` are exactly the extreme points.
  static LatticePolytope from_vertices(std::vector<LatticePoint> vertices);

  std::size_t dim() const { return dim_; }
  /// Dimension of the affine hull, in [0, dim()].
  std::size_t affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == dim_; }
  const std::vector<LatticePoint>& generators() const { return generators_; }
  const std::vector<LatticePoint>& vertices() const { return vertices_; }

 private:
  LatticePolytope() = default;

  std::size_t dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<LatticePoint> generators_;
  std::vector<LatticePoint> vertices_;
};

/// Caps on box-scan enumeration and sumsets. `threads` bounds the workers of
/// the box scan; results do not depend on it.
struct Limits {
  std::uint64_t max_box_points = 10'000'000;
  std::size_t max_set_size = 1'000'000;
  unsigned threads = 1;
};

/// Inequality normal·x <= offset, normal primitive.
struct Halfspace {
  IntVector normal;
  Integer offset;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Facets of a full-dimensional polytope, with the indices (into vertices())
/// of the vertices lying on each facet.
struct FacetDescription {
  std::vector<Halfspace> halfspaces;
  std::vector<std::vector<std::size_t>> incidences;
};

/// Dimension of the affine hull of the points (-1 is not representable, so
/// an empty list is rejected).
std::size_t affine_dim(std::span<const LatticePoint> points);

/// True iff the differences from the first point are linearly independent.
bool is_affinely_independent(std::span<const LatticePoint> points);

/// Barycentric coordinates (t_0..t_n) of q: sum t_i = 1, sum t_i a_i = q.
RatVector barycentric(const LatticeSimplex& s, const RatPoint& q);
bool in_simplex(const LatticeSimplex& s, const RatPoint& q);

/// Exact hull membership via rational LP feasibility.
bool contains(const LatticePolytope& p, const RatPoint& q);
bool contains(const LatticePolytope& p, const LatticePoint& q);
/// Whether q is a convex combination of `points`.
bool in_convex_hull(std::span<const LatticePoint> points, const RatPoint& q);

/// Every vertex multiplied by h; throws InvalidArgument for h < 1.
LatticePolytope dilate(const LatticePolytope& p, Coord h);
LatticePolytope translate(const LatticePolytope& p, const LatticePoint& v);

/// Facets by exhaustive vertex n-subsets. Throws DegenerateError when the
/// polytope is not full-dimensional and ResourceError when the number of
/// subsets is unreasonable.
FacetDescription facets(const LatticePolytope& p);

/// n! times the Euclidean volume, from a pulling triangulation of the face
/// lattice. Zero for lower-dimensional polytopes.
Integer normalized_volume(const LatticePolytope& p);

/// The lattice points of p in lexicographic order, by scanning the integer
/// bounding box. Throws ResourceError when the box exceeds the cap.
std::vector<LatticePoint> lattice_points(const LatticePolytope& p,
                                         const Limits& limits = {});

}  // namespace latticeforge::geometry
