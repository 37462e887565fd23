#include "latticeforge/unimodular.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "latticeforge/errors.hpp"
#include "latticeforge/lp.hpp"

namespace latticeforge::unimodular {

using linalg::Rational;

namespace {

std::string describe(const LatticePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

// Exact bounding boxes whose interiors are disjoint certify disjointness.
bool boxes_separate(const LatticeSimplex& a, const LatticeSimplex& b) {
  for (std::size_t k = 0; k < a.dim(); ++k) {
    Coord amin = a.vertex(0)[k], amax = amin, bmin = b.vertex(0)[k], bmax = bmin;
    for (const auto& v : a.vertices()) {
      amin = std::min(amin, v[k]);
      amax = std::max(amax, v[k]);
    }
    for (const auto& v : b.vertices()) {
      bmin = std::min(bmin, v[k]);
      bmax = std::max(bmax, v[k]);
    }
    if (amax <= bmin || bmax <= amin) return true;
  }
  return false;
}

}  // namespace

LatticeIndex lattice_index(const LatticeSimplex& s) {
  return {s.normalized_volume()};
}

LatticeIndex lattice_index(std::span<const LatticePoint> points) {
  if (points.size() < 2) throw DimensionError("a simplex needs n+1 >= 2 points");
  const std::size_t n = points.size() - 1;
  for (const auto& p : points)
    if (p.dim() != n)
      throw DimensionError(std::to_string(points.size()) + " points do not form a simplex in Z^" +
                           std::to_string(p.dim()));
  if (!geometry::is_affinely_independent(points)) return {};
  return lattice_index(LatticeSimplex({points.begin(), points.end()}));
}

bool is_unimodular(const LatticeSimplex& s) { return lattice_index(s).unimodular(); }

std::vector<LatticePoint> Decomposition::support() const {
  std::vector<LatticePoint> out;
  for (const auto& w : weights)
    if (w.weight > 0) out.push_back(w.vertex);
  return out;
}

Decomposition decompose_in_simplex(const LatticeSimplex& s, const LatticePoint& p, Coord h) {
  if (h < 1) throw InvalidArgument("h must be a positive integer, got " + std::to_string(h));
  if (p.dim() != s.dim()) throw DimensionError("point and simplex dimensions differ");
  if (!is_unimodular(s)) throw NotUnimodularError("simplex is not unimodular");

  const linalg::RatVector t = geometry::barycentric(s, RatPoint::divided(p, h));
  if (std::any_of(t.entries.begin(), t.entries.end(),
                  [](const Rational& x) { return sgn(x) < 0; }))
    throw PointOutsideError("point " + describe(p) + " is not in " + std::to_string(h) +
                            " times the simplex");

  // p - h·a0 = Σ w_i (a_i - a0) over Z; the edge vectors are a Z-basis.
  const LatticePoint rhs = p - s.vertex(0).scaled(h);
  const linalg::IntVector b = rhs.to_integers();
  auto w = linalg::integral_solution(s.difference_matrix(), b);
  if (!w) throw std::logic_error("unimodular simplex without integral coordinates");

  Decomposition d{p, h, s, {}, {}};
  Integer w0 = h;
  for (const auto& wi : *w) w0 -= wi;
  d.weights.reserve(s.vertices().size());
  for (std::size_t i = 0; i < s.vertices().size(); ++i) {
    const Integer& wi = (i == 0) ? w0 : (*w)[i - 1];
    // The integral route must agree with the rational one: w_i = h·t_i.
    if (Rational(wi) != Rational(h) * t[i])
      throw std::logic_error("integral and barycentric coordinates disagree");
    d.weights.push_back({s.vertex(i), wi.get_si()});
    for (Coord k = 0; k < d.weights.back().weight; ++k) d.parts.push_back(s.vertex(i));
  }
  std::sort(d.parts.begin(), d.parts.end());
  return d;
}

Decomposition decompose_in_simplex(const LatticeSimplex& s, const RatPoint& p, Coord h) {
  return decompose_in_simplex(s, p.to_lattice(), h);
}

const char* to_string(CoverKind kind) {
  return kind == CoverKind::kTriangulation ? "triangulation" : "general-cover";
}

const char* to_string(CertStatus status) {
  switch (status) {
    case CertStatus::kCertified:
      return "certified";
    case CertStatus::kVerticesOnly:
      return "vertices-only";
    case CertStatus::kUncertified:
      break;
  }
  return "uncertified";
}

bool SimplicialCover::all_unimodular() const {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return is_unimodular(c); });
}

bool interiors_intersect(const LatticeSimplex& a, const LatticeSimplex& b) {
  if (a.dim() != b.dim()) throw DimensionError("simplices of different dimensions");
  if (boxes_separate(a, b)) return false;
  // Variables: λ'_i, μ'_j >= 0 and t >= 0 with λ_i = λ'_i + t, μ_j = μ'_j + t.
  // maximize t  s.t.  Σλ_i a_i = Σμ_j b_j, Σλ = Σμ = 1.
  const std::size_t n = a.dim();
  const std::size_t m = n + 1;
  const std::size_t vars = 2 * m + 1;
  lp::RatMatrix rows(n + 2, std::vector<Rational>(vars));
  std::vector<Rational> rhs(n + 2);
  for (std::size_t k = 0; k < n; ++k) {
    Rational tcoef = 0;
    for (std::size_t i = 0; i < m; ++i) {
      rows[k][i] = static_cast<long>(a.vertex(i)[k]);
      rows[k][m + i] = -static_cast<long>(b.vertex(i)[k]);
      tcoef += static_cast<long>(a.vertex(i)[k]) - static_cast<long>(b.vertex(i)[k]);
    }
    rows[k][2 * m] = tcoef;
  }
  for (std::size_t i = 0; i < m; ++i) {
    rows[n][i] = 1;
    rows[n + 1][m + i] = 1;
  }
  rows[n][2 * m] = static_cast<long>(m);
  rows[n + 1][2 * m] = static_cast<long>(m);
  rhs[n] = 1;
  rhs[n + 1] = 1;
  std::vector<Rational> objective(vars);
  objective[2 * m] = 1;
  const lp::Solution sol = lp::maximize(rows, rhs, objective);
  return sol.status == lp::Status::kOptimal && sgn(sol.objective) > 0;
}

CoverCheck check_cover(const SimplicialCover& c) {
  CoverCheck r;
  const auto& target = c.target;
  r.cells_inside = std::all_of(c.cells.begin(), c.cells.end(), [&](const LatticeSimplex& s) {
    return s.dim() == target.dim() &&
           std::all_of(s.vertices().begin(), s.vertices().end(),
                       [&](const LatticePoint& v) { return geometry::contains(target, v); });
  });
  r.all_unimodular = !c.cells.empty() && c.all_unimodular();
  r.cell_volume = 0;
  for (const auto& s : c.cells) r.cell_volume += s.normalized_volume();
  r.target_volume = geometry::normalized_volume(target);

  if (c.cells.empty()) {
    r.reason = "cover has no cells";
  } else if (!r.cells_inside) {
    r.reason = "a cell leaves the target";
  } else if (!r.all_unimodular) {
    r.reason = "a cell is not unimodular";
  }

  if (c.kind == CoverKind::kGeneralCover) {
    r.status = r.reason.empty() ? CertStatus::kVerticesOnly : CertStatus::kUncertified;
    return r;
  }

  r.volume_matches = r.cells_inside && r.cell_volume == r.target_volume;
  r.interiors_disjoint = true;
  for (std::size_t i = 0; i < c.cells.size() && r.interiors_disjoint; ++i)
    for (std::size_t j = i + 1; j < c.cells.size(); ++j)
      if (interiors_intersect(c.cells[i], c.cells[j])) {
        r.interiors_disjoint = false;
        break;
      }
  if (r.reason.empty() && !r.volume_matches) {
    r.reason = "cell volumes sum to " + r.cell_volume.get_str() + ", target has " +
               r.target_volume.get_str();
  } else if (r.reason.empty() && !r.interiors_disjoint) {
    r.reason = "two cells have overlapping interiors";
  }
  r.status = r.reason.empty() ? CertStatus::kCertified : CertStatus::kUncertified;
  return r;
}

CertStatus verify_cover(const SimplicialCover& c) { return check_cover(c).status; }

Decomposition decompose(const LatticePolytope& p, const SimplicialCover& cover,
                        const LatticePoint& point, Coord h) {
  if (h < 1) throw InvalidArgument("h must be a positive integer, got " + std::to_string(h));
  if (cover.status != CertStatus::kCertified || !cover.all_unimodular())
    throw InvalidArgument("decompose needs a certified cover of unimodular cells");
  const RatPoint q = RatPoint::divided(point, h);
  if (!geometry::contains(p, q))
    throw PointOutsideError("point " + describe(point) + " is not in " + std::to_string(h) +
                            "P");
  for (const auto& cell : cover.cells)
    if (geometry::in_simplex(cell, q)) return decompose_in_simplex(cell, point, h);
  throw NoCellError("no cell of the cover contains " + describe(point) + "/" +
                    std::to_string(h) + "; the cover does not cover its target");
}

bool EllRow::idp_all_hold() const {
  return std::all_of(idp.begin(), idp.end(), [](const auto& r) { return r.holds; });
}

bool EllReport::consistent() const {
  return std::all_of(per_ell.begin(), per_ell.end(), [](const EllRow& r) { return r.agrees(); });
}

EllReport find_ell(const LatticePolytope& p, Coord ell_max, Coord h_max, std::size_t attempts,
                   std::uint64_t seed, const Limits& limits) {
  if (ell_max < 1 || h_max < 1 || attempts < 1)
    throw InvalidArgument("ell_max, h_max and attempts must be positive");
  EllReport report;
  for (Coord ell = 1; ell <= ell_max; ++ell) {
    EllRow row;
    row.ell = ell;
    try {
      const LatticePolytope dilated = geometry::dilate(p, ell);
      TriangulationSearch search = find_unimodular_triangulation(dilated, attempts, seed, limits);
      row.certified = search.cover.has_value();
      row.proven_none = search.proven_none;
      row.attempts_tried = search.attempts_tried;
      if (search.cover) row.cells = search.cover->cells.size();
      row.idp = sumset::idp_scan(dilated, h_max, limits);
    } catch (const ResourceError& e) {
      throw ResourceError(std::string(e.what()) + " (at ell=" + std::to_string(ell) + ")",
                          e.h());
    }
    if (row.certified && !report.ell) report.ell = ell;
    report.per_ell.push_back(std::move(row));
  }
  return report;
}

}  // namespace latticeforge::unimodular
