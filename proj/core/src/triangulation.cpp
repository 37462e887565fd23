#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "latticeforge/errors.hpp"
#include "latticeforge/unimodular.hpp"

namespace latticeforge::unimodular {

namespace {

using Cell = std::vector<std::size_t>;  // sorted indices into the point list

struct BoundaryFacet {
  Cell facet;
  std::size_t opposite;  // the cell vertex not on the facet
};

// Sign of det[f1 - f0, ..., f_{n-1} - f0, x - f0]: which side of the facet's
// hyperplane x lies on.
int side(const std::vector<LatticePoint>& pts, const Cell& facet, const LatticePoint& x) {
  const std::size_t n = x.dim();
  std::vector<linalg::IntVector> cols;
  cols.reserve(n);
  for (std::size_t k = 1; k < facet.size(); ++k)
    cols.push_back((pts[facet[k]] - pts[facet[0]]).to_integers());
  cols.push_back((x - pts[facet[0]]).to_integers());
  return sgn(linalg::determinant(linalg::IntMatrix::from_columns(cols)));
}

LatticeSimplex make_simplex(const std::vector<LatticePoint>& pts, const Cell& cell) {
  std::vector<LatticePoint> v;
  v.reserve(cell.size());
  for (std::size_t i : cell) v.push_back(pts[i]);
  std::sort(v.begin(), v.end());
  return LatticeSimplex(std::move(v));
}

std::vector<BoundaryFacet> boundary_facets(const std::vector<Cell>& cells) {
  std::map<Cell, std::pair<int, std::size_t>> seen;  // facet -> (count, opposite)
  for (const auto& cell : cells) {
    for (std::size_t drop = 0; drop < cell.size(); ++drop) {
      Cell f;
      f.reserve(cell.size() - 1);
      for (std::size_t k = 0; k < cell.size(); ++k)
        if (k != drop) f.push_back(cell[k]);
      auto [it, inserted] = seen.try_emplace(std::move(f), 0, cell[drop]);
      ++it->second.first;
    }
  }
  std::vector<BoundaryFacet> out;
  for (auto& [f, info] : seen)
    if (info.first == 1) out.push_back({f, info.second});
  return out;
}

Cell with_replaced(Cell cell, std::size_t pos, std::size_t index) {
  cell[pos] = index;
  std::sort(cell.begin(), cell.end());
  return cell;
}

}  // namespace

SimplicialCover placing_triangulation(const LatticePolytope& p,
                                      std::span<const LatticePoint> order,
                                      const Limits& limits) {
  if (!p.full_dimensional())
    throw DegenerateError("placing triangulation needs a full-dimensional polytope");
  const std::size_t n = p.dim();
  std::vector<LatticePoint> pts(order.begin(), order.end());
  {
    std::vector<LatticePoint> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != geometry::lattice_points(p, limits))
      throw InvalidArgument("insertion order is not a permutation of the lattice points");
  }

  // Initial simplex: the first points, in order, that raise the affine rank.
  Cell initial;
  std::vector<LatticePoint> chosen;
  for (std::size_t i = 0; i < pts.size() && initial.size() < n + 1; ++i) {
    chosen.push_back(pts[i]);
    if (geometry::affine_dim(chosen) + 1 == chosen.size()) {
      initial.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  std::vector<Cell> cells{initial};

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::binary_search(initial.begin(), initial.end(), i)) continue;
    const LatticePoint& x = pts[i];
    const RatPoint q(x);

    std::vector<Cell> next;
    bool inside = false;
    for (const auto& cell : cells) {
      const linalg::RatVector t = geometry::barycentric(make_simplex(pts, cell), q);
      // make_simplex sorts vertices lexicographically; map back to indices.
      std::vector<std::size_t> by_point(cell);
      std::sort(by_point.begin(), by_point.end(),
                [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
      if (std::any_of(t.entries.begin(), t.entries.end(),
                      [](const linalg::Rational& v) { return sgn(v) < 0; })) {
        next.push_back(cell);
        continue;
      }
      inside = true;
      // Stellar subdivision: replace each vertex with positive weight by x.
      for (std::size_t k = 0; k < by_point.size(); ++k) {
        if (sgn(t[k]) <= 0) continue;
        const std::size_t pos = static_cast<std::size_t>(
            std::find(cell.begin(), cell.end(), by_point[k]) - cell.begin());
        next.push_back(with_replaced(cell, pos, i));
      }
    }
    if (!inside) {
      for (const auto& bf : boundary_facets(cells)) {
        const int sx = side(pts, bf.facet, x);
        const int so = side(pts, bf.facet, pts[bf.opposite]);
        if (sx != 0 && sx == -so) {
          Cell c = bf.facet;
          c.push_back(i);
          std::sort(c.begin(), c.end());
          next.push_back(std::move(c));
        }
      }
    }
    cells = std::move(next);
  }

  SimplicialCover cover{p, {}, CoverKind::kTriangulation, CertStatus::kUncertified};
  cover.cells.reserve(cells.size());
  for (const auto& cell : cells) cover.cells.push_back(make_simplex(pts, cell));
  return cover;
}

SimplicialCover placing_triangulation(const LatticePolytope& p, const Limits& limits) {
  const std::vector<LatticePoint> lex = geometry::lattice_points(p, limits);
  return placing_triangulation(p, lex, limits);
}

std::vector<LatticePoint> attempt_order(std::span<const LatticePoint> lex_points,
                                        std::uint64_t seed, std::size_t attempt) {
  std::vector<LatticePoint> order(lex_points.begin(), lex_points.end());
  if (attempt == 0) return order;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(attempt) >> 32)};
  std::mt19937_64 rng(seq);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

TriangulationSearch find_unimodular_triangulation(const LatticePolytope& p,
                                                  std::size_t attempts, std::uint64_t seed,
                                                  const Limits& limits) {
  if (attempts < 1) throw InvalidArgument("attempts must be positive");
  if (!p.full_dimensional())
    throw DegenerateError("triangulation search needs a full-dimensional polytope");
  const std::vector<LatticePoint> lex = geometry::lattice_points(p, limits);
  TriangulationSearch result;
  // n+1 lattice points admit one triangulation; other orders repeat it.
  const bool unique = lex.size() == p.dim() + 1;
  const std::size_t budget = unique ? 1 : attempts;
  for (std::size_t k = 0; k < budget; ++k) {
    ++result.attempts_tried;
    SimplicialCover cover = placing_triangulation(p, attempt_order(lex, seed, k), limits);
    if (!cover.all_unimodular()) continue;
    cover.status = verify_cover(cover);
    if (cover.status != CertStatus::kCertified) continue;
    result.cover = std::move(cover);
    result.winning_attempt = k;
    return result;
  }
  result.proven_none = unique;
  return result;
}

}  // namespace latticeforge::unimodular
