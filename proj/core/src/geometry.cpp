#include "latticeforge/geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <thread>

#include "latticeforge/errors.hpp"
#include "latticeforge/lp.hpp"

namespace latticeforge::geometry {

namespace {

__extension__ using Wide = __int128;
__extension__ using UWide = unsigned __int128;

Coord checked_add(Coord a, Coord b) {
  Coord r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("lattice coordinate overflow");
  return r;
}

Coord checked_sub(Coord a, Coord b) {
  Coord r;
  if (__builtin_sub_overflow(a, b, &r)) throw ResourceError("lattice coordinate overflow");
  return r;
}

Coord checked_mul(Coord a, Coord b) {
  Coord r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("lattice coordinate overflow");
  return r;
}

void require_same_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(expected) + ", got " + std::to_string(got));
  }
}

// Rank of a list of integer rows of equal length, with no size cap.
std::size_t row_rank(const std::vector<IntVector>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<Rational>> a;
  a.reserve(rows.size());
  for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[rank], a[p]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<IntVector> differences(std::span<const LatticePoint> points,
                                   std::span<const std::size_t> indices) {
  std::vector<IntVector> rows;
  for (std::size_t k = 1; k < indices.size(); ++k)
    rows.push_back((points[indices[k]] - points[indices[0]]).to_integers());
  return rows;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  UWide r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

constexpr std::uint64_t kMaxFacetSubsets = 5'000'000;

// Calls f on every increasing k-subset of {0..n-1}.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Integer dot(const IntVector& a, const LatticePoint& p) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * p[i];
  return s;
}

// Generalized cross product of n-1 vectors in Z^n.
IntVector orthogonal_normal(const std::vector<IntVector>& rows, std::size_t n) {
  IntVector normal(n);
  if (n == 1) {
    normal[0] = 1;
    return normal;
  }
  for (std::size_t k = 0; k < n; ++k) {
    linalg::IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 0; r + 1 < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == k) continue;
        minor(r, cc++) = rows[r][c];
      }
    Integer d = linalg::determinant(minor);
    normal[k] = (k % 2 == 0) ? d : Integer(-d);
  }
  return normal;
}

// Pulling triangulation of the face spanned by `face` (sorted vertex
// indices) of affine dimension `d`; returns simplices as index lists.
void pull(const std::vector<LatticePoint>& vertices, const FacetDescription& fd,
          const std::vector<std::size_t>& face, std::size_t d,
          std::vector<std::size_t>& prefix,
          std::vector<std::vector<std::size_t>>& out) {
  if (d == 0) {
    prefix.push_back(face.front());
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  const std::size_t apex = face.front();
  std::vector<std::vector<std::size_t>> subfaces;
  for (const auto& inc : fd.incidences) {
    std::vector<std::size_t> t;
    std::set_intersection(face.begin(), face.end(), inc.begin(), inc.end(),
                          std::back_inserter(t));
    if (t.size() < d || t.size() == face.size()) continue;
    if (std::binary_search(t.begin(), t.end(), apex)) continue;
    if (row_rank(differences(vertices, t)) != d - 1) continue;
    if (std::find(subfaces.begin(), subfaces.end(), t) == subfaces.end())
      subfaces.push_back(std::move(t));
  }
  prefix.push_back(apex);
  for (const auto& t : subfaces) pull(vertices, fd, t, d - 1, prefix, out);
  prefix.pop_back();
}

struct BoxScanner {
  std::vector<Coord> lo;
  std::vector<Coord> hi;

  // Scans the slab lo[0] in [first, last] in lexicographic order.
  template <typename Pred>
  void scan(Coord first, Coord last, Pred&& accept, std::vector<LatticePoint>& out) const {
    const std::size_t n = lo.size();
    std::vector<Coord> x = lo;
    x[0] = first;
    if (first > last) return;
    for (;;) {
      LatticePoint p(x);
      if (accept(p)) out.push_back(std::move(p));
      std::size_t i = n;
      while (i > 0) {
        --i;
        const Coord top = (i == 0) ? last : hi[i];
        if (x[i] < top) {
          ++x[i];
          break;
        }
        x[i] = lo[i];
        if (i == 0) return;
      }
    }
  }
};

// Halfspaces in machine integers, when they fit.
struct NarrowHalfspaces {
  std::vector<std::vector<Coord>> normals;
  std::vector<Coord> offsets;

  static std::optional<NarrowHalfspaces> from(const FacetDescription& fd) {
    NarrowHalfspaces nh;
    for (const auto& h : fd.halfspaces) {
      std::vector<Coord> row;
      for (const auto& a : h.normal) {
        if (!a.fits_slong_p()) return std::nullopt;
        row.push_back(a.get_si());
      }
      if (!h.offset.fits_slong_p()) return std::nullopt;
      nh.normals.push_back(std::move(row));
      nh.offsets.push_back(h.offset.get_si());
    }
    return nh;
  }

  bool contains(const LatticePoint& p) const {
    for (std::size_t f = 0; f < normals.size(); ++f) {
      Wide s = 0;
      for (std::size_t i = 0; i < p.dim(); ++i)
        s += static_cast<Wide>(normals[f][i]) * p[i];
      if (s > offsets[f]) return false;
    }
    return true;
  }
};

}  // namespace

LatticePoint LatticePoint::unit(std::size_t n, std::size_t i) {
  LatticePoint p = zero(n);
  p.coords_.at(i) = 1;
  return p;
}

LatticePoint LatticePoint::scaled(Coord factor) const {
  std::vector<Coord> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_mul(coords_[i], factor);
  return LatticePoint(std::move(c));
}

IntVector LatticePoint::to_integers() const {
  IntVector v;
  v.reserve(coords_.size());
  for (Coord c : coords_) v.emplace_back(static_cast<long>(c));
  return v;
}

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
  require_same_dim(a.dim(), b.dim(), "point addition");
  std::vector<Coord> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_add(a[i], b[i]);
  return LatticePoint(std::move(c));
}

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  require_same_dim(a.dim(), b.dim(), "point subtraction");
  std::vector<Coord> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_sub(a[i], b[i]);
  return LatticePoint(std::move(c));
}

RatPoint::RatPoint(const LatticePoint& p) {
  coords_.reserve(p.dim());
  for (Coord c : p.coords()) coords_.emplace_back(static_cast<long>(c));
}

RatPoint RatPoint::divided(const LatticePoint& p, Coord denominator) {
  if (denominator == 0) throw InvalidArgument("division of a point by zero");
  std::vector<Rational> c;
  c.reserve(p.dim());
  for (Coord x : p.coords()) {
    Rational q(static_cast<long>(x), static_cast<long>(denominator));
    q.canonicalize();
    c.push_back(std::move(q));
  }
  return RatPoint(std::move(c));
}

bool RatPoint::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Rational& q) { return q.get_den() == 1; });
}

LatticePoint RatPoint::to_lattice() const {
  if (!is_integral()) throw NonLatticeError("point has non-integral coordinates");
  std::vector<Coord> c;
  c.reserve(coords_.size());
  for (const auto& q : coords_) {
    if (!q.get_num().fits_slong_p()) throw ResourceError("lattice coordinate overflow");
    c.push_back(q.get_num().get_si());
  }
  return LatticePoint(std::move(c));
}

LatticeSimplex::LatticeSimplex(std::vector<LatticePoint> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2)
    throw DimensionError("a simplex needs n+1 >= 2 vertices");
  const std::size_t n = vertices_.size() - 1;
  if (n > kMaxDimension)
    throw DimensionError("simplex dimension " + std::to_string(n) + " exceeds cap " +
                         std::to_string(kMaxDimension));
  for (const auto& v : vertices_) require_same_dim(n, v.dim(), "simplex vertex");
  if (sgn(linalg::determinant(difference_matrix())) == 0)
    throw DegenerateError("simplex vertices are affinely dependent");
}

linalg::IntMatrix LatticeSimplex::difference_matrix() const {
  std::vector<IntVector> cols;
  cols.reserve(dim());
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    cols.push_back((vertices_[i] - vertices_[0]).to_integers());
  return linalg::IntMatrix::from_columns(cols);
}

Integer LatticeSimplex::normalized_volume() const {
  return abs(linalg::determinant(difference_matrix()));
}

LatticePolytope::LatticePolytope(std::vector<LatticePoint> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw DimensionError("polytope needs at least one point");
  dim_ = generators_.front().dim();
  if (dim_ == 0 || dim_ > kMaxDimension)
    throw DimensionError("polytope dimension " + std::to_string(dim_) +
                         " outside [1, " + std::to_string(kMaxDimension) + "]");
  for (const auto& g : generators_) require_same_dim(dim_, g.dim(), "polytope generator");

  std::vector<LatticePoint> candidates = generators_;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::vector<LatticePoint> others;
    others.reserve(candidates.size() - 1);
    for (std::size_t j = 0; j < candidates.size(); ++j)
      if (j != i) others.push_back(candidates[j]);
    if (others.empty() || !in_convex_hull(others, RatPoint(candidates[i])))
      vertices_.push_back(candidates[i]);
  }
  affine_dim_ = geometry::affine_dim(vertices_);
}

LatticePolytope LatticePolytope::hull(const LatticeSimplex& s) {
  LatticePolytope p;
  p.dim_ = s.dim();
  p.affine_dim_ = s.dim();
  p.generators_ = s.vertices();
  p.vertices_ = s.vertices();
  std::sort(p.vertices_.begin(), p.vertices_.end());
  return p;
}

LatticePolytope LatticePolytope::from_vertices(std::vector<LatticePoint> vertices) {
  if (vertices.empty()) throw DimensionError("polytope needs at least one point");
  LatticePolytope p;
  p.dim_ = vertices.front().dim();
  if (p.dim_ == 0 || p.dim_ > kMaxDimension)
    throw DimensionError("polytope dimension outside [1, " +
                         std::to_string(kMaxDimension) + "]");
  for (const auto& v : vertices) require_same_dim(p.dim_, v.dim(), "polytope vertex");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  p.generators_ = vertices;
  p.vertices_ = std::move(vertices);
  p.affine_dim_ = geometry::affine_dim(p.vertices_);
  return p;
}

std::size_t affine_dim(std::span<const LatticePoint> points) {
  if (points.empty()) throw DimensionError("affine_dim of an empty point list");
  std::vector<IntVector> rows;
  rows.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    require_same_dim(points[0].dim(), points[i].dim(), "affine_dim");
    rows.push_back((points[i] - points[0]).to_integers());
  }
  return row_rank(rows);
}

bool is_affinely_independent(std::span<const LatticePoint> points) {
  return affine_dim(points) + 1 == points.size();
}

RatVector barycentric(const LatticeSimplex& s, const RatPoint& q) {
  const std::size_t n = s.dim();
  require_same_dim(n, q.dim(), "barycentric query");
  std::vector<Rational> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = q[i] - Rational(static_cast<long>(s.vertex(0)[i]));
  RatVector t = linalg::solve_rational(s.difference_matrix(), rhs);
  Rational t0 = 1;
  for (const auto& ti : t.entries) t0 -= ti;
  t.entries.insert(t.entries.begin(), t0);
  return t;
}

bool in_simplex(const LatticeSimplex& s, const RatPoint& q) {
  RatVector t = barycentric(s, q);
  return std::all_of(t.entries.begin(), t.entries.end(),
                     [](const Rational& x) { return sgn(x) >= 0; });
}

bool in_convex_hull(std::span<const LatticePoint> points, const RatPoint& q) {
  if (points.empty()) return false;
  const std::size_t n = q.dim();
  lp::RatMatrix a(n + 1, std::vector<Rational>(points.size()));
  std::vector<Rational> b(n + 1);
  for (std::size_t j = 0; j < points.size(); ++j) {
    require_same_dim(n, points[j].dim(), "hull membership");
    for (std::size_t i = 0; i < n; ++i) a[i][j] = static_cast<long>(points[j][i]);
    a[n][j] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) b[i] = q[i];
  b[n] = 1;
  return lp::feasible(a, b);
}

bool contains(const LatticePolytope& p, const RatPoint& q) {
  require_same_dim(p.dim(), q.dim(), "contains");
  return in_convex_hull(p.vertices(), q);
}

bool contains(const LatticePolytope& p, const LatticePoint& q) {
  return contains(p, RatPoint(q));
}

LatticePolytope dilate(const LatticePolytope& p, Coord h) {
  if (h < 1) throw InvalidArgument("dilation factor must be positive, got " + std::to_string(h));
  std::vector<LatticePoint> v;
  v.reserve(p.vertices().size());
  for (const auto& x : p.vertices()) v.push_back(x.scaled(h));
  return LatticePolytope::from_vertices(std::move(v));
}

LatticePolytope translate(const LatticePolytope& p, const LatticePoint& t) {
  std::vector<LatticePoint> v;
  v.reserve(p.vertices().size());
  for (const auto& x : p.vertices()) v.push_back(x + t);
  return LatticePolytope::from_vertices(std::move(v));
}

FacetDescription facets(const LatticePolytope& p) {
  if (!p.full_dimensional())
    throw DegenerateError("facets need a full-dimensional polytope");
  const auto& verts = p.vertices();
  const std::size_t n = p.dim();
  if (binomial_capped(verts.size(), n, kMaxFacetSubsets) > kMaxFacetSubsets)
    throw ResourceError("facet enumeration: too many vertex subsets");

  std::map<std::pair<IntVector, Integer>, std::vector<std::size_t>> found;
  for_each_subset(verts.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVector> rows = differences(verts, idx);
    IntVector normal = orthogonal_normal(rows, n);
    if (std::all_of(normal.begin(), normal.end(), [](const Integer& x) { return sgn(x) == 0; }))
      return;
    Integer g = 0;
    for (const auto& x : normal) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (auto& x : normal) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    Integer offset = dot(normal, verts[idx[0]]);
    bool below = false;
    bool above = false;
    std::vector<std::size_t> on;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      int s = sgn(Integer(dot(normal, verts[k]) - offset));
      if (s < 0) below = true;
      if (s > 0) above = true;
      if (s == 0) on.push_back(k);
    }
    if (below && above) return;
    if (above) {
      for (auto& x : normal) x = -x;
      offset = -offset;
    }
    found.emplace(std::make_pair(std::move(normal), std::move(offset)), std::move(on));
  });

  FacetDescription fd;
  for (auto& [key, on] : found) {
    fd.halfspaces.push_back({key.first, key.second});
    fd.incidences.push_back(std::move(on));
  }
  return fd;
}

Integer normalized_volume(const LatticePolytope& p) {
  if (!p.full_dimensional()) return 0;
  const auto& verts = p.vertices();
  const std::size_t n = p.dim();
  if (verts.size() == n + 1) return LatticeSimplex(verts).normalized_volume();
  FacetDescription fd = facets(p);
  std::vector<std::size_t> all(verts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::size_t> prefix;
  std::vector<std::vector<std::size_t>> cells;
  pull(verts, fd, all, n, prefix, cells);
  Integer total = 0;
  for (const auto& cell : cells) {
    std::vector<LatticePoint> pts;
    for (std::size_t i : cell) pts.push_back(verts[i]);
    total += LatticeSimplex(std::move(pts)).normalized_volume();
  }
  return total;
}

std::vector<LatticePoint> lattice_points(const LatticePolytope& p, const Limits& limits) {
  const std::size_t n = p.dim();
  BoxScanner box{p.vertices().front().coords(), p.vertices().front().coords()};
  for (const auto& v : p.vertices())
    for (std::size_t i = 0; i < n; ++i) {
      box.lo[i] = std::min(box.lo[i], v[i]);
      box.hi[i] = std::max(box.hi[i], v[i]);
    }
  UWide count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count *= static_cast<UWide>(static_cast<Wide>(box.hi[i]) - box.lo[i] + 1);
    if (count > limits.max_box_points)
      throw ResourceError("bounding box exceeds " + std::to_string(limits.max_box_points) +
                          " points");
  }

  std::function<bool(const LatticePoint&)> accept;
  std::optional<NarrowHalfspaces> narrow;
  std::vector<IntVector> equations;
  if (p.full_dimensional()) {
    try {
      narrow = NarrowHalfspaces::from(facets(p));
    } catch (const ResourceError&) {
      narrow.reset();
    }
  } else if (p.affine_dim() > 0) {
    // Integer equations c·(x - v0) = 0 of the affine hull.
    std::vector<IntVector> basis;
    const auto& verts = p.vertices();
    for (std::size_t i = 1; i < verts.size() && basis.size() < p.affine_dim(); ++i) {
      basis.push_back((verts[i] - verts[0]).to_integers());
      if (row_rank(basis) < basis.size()) basis.pop_back();
    }
    equations = linalg::integer_kernel(linalg::IntMatrix::from_rows(basis));
  }
  if (narrow) {
    accept = [&](const LatticePoint& x) { return narrow->contains(x); };
  } else if (p.affine_dim() == 0) {
    accept = [&](const LatticePoint& x) { return x == p.vertices().front(); };
  } else {
    const LatticePoint& base = p.vertices().front();
    accept = [&](const LatticePoint& x) {
      for (const auto& c : equations)
        if (sgn(dot(c, x) - dot(c, base)) != 0) return false;
      return contains(p, x);
    };
  }

  const Coord first = box.lo[0];
  const Coord last = box.hi[0];
  const std::uint64_t span = static_cast<std::uint64_t>(last - first) + 1;
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(limits.threads, 1, span));
  if (workers == 1) {
    std::vector<LatticePoint> out;
    box.scan(first, last, accept, out);
    return out;
  }
  std::vector<std::vector<LatticePoint>> parts(workers);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (span + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const Coord a = first + static_cast<Coord>(w * chunk);
      const Coord b = std::min<Coord>(last, a + static_cast<Coord>(chunk) - 1);
      pool.emplace_back([&, a, b, w] { box.scan(a, b, accept, parts[w]); });
    }
  }
  std::vector<LatticePoint> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace latticeforge::geometry
