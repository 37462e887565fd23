#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latticeforge/geometry.hpp"
#include "latticeforge/sumset.hpp"

namespace latticeforge::unimodular {

using geometry::Coord;
using geometry::Integer;
using geometry::LatticePoint;
using geometry::LatticePolytope;
using geometry::LatticeSimplex;
using geometry::Limits;
using geometry::RatPoint;

/// Index of the subgroup generated by the edge vectors a_i - a_0 inside Z^n,
/// i.e. |det| of the difference matrix. Empty when the points are
/// affinely dependent.
struct LatticeIndex {
  std::optional<Integer> value;

  bool degenerate() const { return !value.has_value(); }
  bool unimodular() const { return value && *value == 1; }
};

LatticeIndex lattice_index(const LatticeSimplex& s);
/// Same for a raw list of n+1 points in Z^n; throws DimensionError when the
/// count does not match the dimension.
LatticeIndex lattice_index(std::span<const LatticePoint> points);

bool is_unimodular(const LatticeSimplex& s);

struct WeightedVertex {
  LatticePoint vertex;
  Coord weight = 0;

  friend bool operator==(const WeightedVertex&, const WeightedVertex&) = default;
};

/// p written as a sum of h vertices of one simplex.
struct Decomposition {
  LatticePoint point;
  Coord h = 1;
  LatticeSimplex cell;
  /// One entry per vertex of `cell`, in cell order; weights sum to h.
  std::vector<WeightedVertex> weights;
  /// The h summands, sorted lexicographically.
  std::vector<LatticePoint> parts;

  /// Vertices with positive weight.
  std::vector<LatticePoint> support() const;
};

/// Writes p ∈ h·Δ(A) ∩ Z^n as a sum of h vertices of a unimodular simplex:
/// solves p - h·a0 = Σ w_i (a_i - a0) over the integers and sets
/// w0 = h - Σ w_i. Throws NotUnimodularError, PointOutsideError when some
/// barycentric coordinate of p/h is negative, InvalidArgument for h < 1.
Decomposition decompose_in_simplex(const LatticeSimplex& s, const LatticePoint& p, Coord h);
/// As above for a rational input; throws NonLatticeError unless p ∈ Z^n.
Decomposition decompose_in_simplex(const LatticeSimplex& s, const RatPoint& p, Coord h);

enum class CoverKind { kTriangulation, kGeneralCover };
enum class CertStatus { kUncertified, kVerticesOnly, kCertified };

const char* to_string(CoverKind kind);
const char* to_string(CertStatus status);

struct SimplicialCover {
  LatticePolytope target;
  std::vector<LatticeSimplex> cells;
  CoverKind kind = CoverKind::kTriangulation;
  CertStatus status = CertStatus::kUncertified;

  bool all_unimodular() const;
};

/// Outcome of verifying a cover, with each check reported separately.
struct CoverCheck {
  CertStatus status = CertStatus::kUncertified;
  bool cells_inside = false;
  bool all_unimodular = false;
  /// Triangulations only.
  bool volume_matches = false;
  bool interiors_disjoint = false;
  Integer cell_volume;    // Σ normalized volumes of the cells
  Integer target_volume;  // normalized volume of the target
  std::string reason;     // first failed check, empty when certified

  /// Geometry of a triangulation (inside, volume, disjointness) regardless
  /// of unimodularity.
  bool geometry_ok() const { return cells_inside && volume_matches && interiors_disjoint; }
};

CoverCheck check_cover(const SimplicialCover& c);
CertStatus verify_cover(const SimplicialCover& c);

/// Whether the interiors of two full-dimensional simplices meet (exact LP).
bool interiors_intersect(const LatticeSimplex& a, const LatticeSimplex& b);

/// Incremental placing triangulation using every lattice point of p, inserted
/// in `order` (a permutation of lattice_points(p)). Points inside the current
/// hull are placed by stellar subdivision of the cells containing them.
/// Throws DegenerateError unless p is full-dimensional, InvalidArgument when
/// `order` is not a permutation of the lattice points.
SimplicialCover placing_triangulation(const LatticePolytope& p,
                                      std::span<const LatticePoint> order,
                                      const Limits& limits = {});
/// Lexicographic insertion order.
SimplicialCover placing_triangulation(const LatticePolytope& p, const Limits& limits = {});

/// Insertion order used by attempt k of the search: k = 0 is lexicographic,
/// later attempts are Fisher-Yates shuffles seeded by (seed, k).
std::vector<LatticePoint> attempt_order(std::span<const LatticePoint> lex_points,
                                        std::uint64_t seed, std::size_t attempt);

struct TriangulationSearch {
  std::optional<SimplicialCover> cover;  // certified, all cells unimodular
  /// Set only when no unimodular triangulation can exist because the
  /// lattice points admit exactly one triangulation and it fails.
  bool proven_none = false;
  std::size_t attempts_tried = 0;
  std::optional<std::size_t> winning_attempt;
};

TriangulationSearch find_unimodular_triangulation(const LatticePolytope& p,
                                                  std::size_t attempts,
                                                  std::uint64_t seed = 0,
                                                  const Limits& limits = {});

/// Decomposition of p ∈ (hP) ∩ Z^n into h lattice points of
/// P, through the first cell of the certified cover containing p/h.
Decomposition decompose(const LatticePolytope& p, const SimplicialCover& cover,
                        const LatticePoint& point, Coord h);

struct EllRow {
  Coord ell = 1;
  bool certified = false;
  bool proven_none = false;
  std::size_t attempts_tried = 0;
  std::size_t cells = 0;  // cells of the certified triangulation
  std::vector<sumset::IdpReport> idp;

  bool idp_all_hold() const;
  /// A certified row must have every oracle verdict holding.
  bool agrees() const { return !certified || idp_all_hold(); }
};

struct EllReport {
  std::optional<Coord> ell;  // smallest certified ℓ
  std::vector<EllRow> per_ell;

  bool consistent() const;
};

/// For ℓ = 1..ell_max, searches a unimodular triangulation of ℓP and runs
/// the sumset oracle for h = 1..h_max on ℓP.
EllReport find_ell(const LatticePolytope& p, Coord ell_max, Coord h_max,
                   std::size_t attempts, std::uint64_t seed = 0,
                   const Limits& limits = {});

}  // namespace latticeforge::unimodular
