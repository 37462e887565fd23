#include "latticeforge/sumset.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

#include "latticeforge/errors.hpp"

namespace latticeforge::sumset {

namespace {

void sort_unique(std::vector<LatticePoint>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

[[noreturn]] void too_large(std::size_t cap) {
  throw ResourceError("sumset exceeds " + std::to_string(cap) + " points");
}

// Sums s[first..last) + t, deduplicating as the buffer grows.
std::vector<LatticePoint> partial_sums(const PointSet& s, std::size_t first,
                                       std::size_t last, const PointSet& t,
                                       std::size_t cap) {
  std::vector<LatticePoint> out;
  std::size_t compact_at = std::max<std::size_t>(4 * cap, 1 << 16);
  for (std::size_t i = first; i < last; ++i) {
    for (const auto& b : t) out.push_back(s.points()[i] + b);
    if (out.size() >= compact_at) {
      sort_unique(out);
      if (out.size() > cap) too_large(cap);
      compact_at = out.size() + std::max<std::size_t>(4 * cap, 1 << 16);
    }
  }
  sort_unique(out);
  if (out.size() > cap) too_large(cap);
  return out;
}

void require_positive(Coord h) {
  if (h < 1) throw InvalidArgument("h must be a positive integer, got " + std::to_string(h));
}

}  // namespace

PointSet::PointSet(std::size_t dim, std::vector<LatticePoint> points)
    : dim_(dim), points_(std::move(points)) {
  for (const auto& p : points_)
    if (p.dim() != dim_)
      throw DimensionError("point set of dimension " + std::to_string(dim_) +
                           " given a point of dimension " + std::to_string(p.dim()));
  sort_unique(points_);
}

bool PointSet::contains(const LatticePoint& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return std::includes(other.points_.begin(), other.points_.end(), points_.begin(),
                       points_.end());
}

PointSet PointSet::minus(const PointSet& other) const {
  PointSet out(dim_);
  std::set_difference(points_.begin(), points_.end(), other.points_.begin(),
                      other.points_.end(), std::back_inserter(out.points_));
  return out;
}

PointSet PointSet::translated(const LatticePoint& v) const {
  PointSet out(dim_);
  out.points_.reserve(points_.size());
  for (const auto& p : points_) out.points_.push_back(p + v);
  return out;
}

PointSet sumset(const PointSet& s, const PointSet& t, const Limits& limits) {
  if (s.dim() != t.dim())
    throw DimensionError("sumset of dimensions " + std::to_string(s.dim()) + " and " +
                         std::to_string(t.dim()));
  const std::size_t cap = limits.max_set_size;
  const std::size_t workers =
      std::clamp<std::size_t>(limits.threads, 1, std::max<std::size_t>(s.size(), 1));
  std::vector<LatticePoint> all;
  if (workers == 1) {
    all = partial_sums(s, 0, s.size(), t, cap);
  } else {
    std::vector<std::vector<LatticePoint>> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (s.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t a = std::min(s.size(), w * chunk);
        const std::size_t b = std::min(s.size(), a + chunk);
        pool.emplace_back([&, a, b, w] {
          try {
            parts[w] = partial_sums(s, a, b, t, cap);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
    sort_unique(all);
    if (all.size() > cap) too_large(cap);
  }
  return PointSet(s.dim(), std::move(all));
}

PointSet hfold_sumset(const PointSet& s, Coord h, const Limits& limits) {
  require_positive(h);
  std::optional<PointSet> result;
  PointSet power = s;  // s, 2s, 4s, ...
  for (Coord rest = h;;) {
    if (rest & 1) result = result ? sumset(*result, power, limits) : power;
    rest >>= 1;
    if (rest == 0) break;
    power = sumset(power, power, limits);
  }
  return *result;
}

std::optional<std::vector<LatticePoint>> find_summands(const PointSet& s,
                                                       const LatticePoint& p, Coord h,
                                                       const Limits& limits) {
  require_positive(h);
  // levels[k] = (k+1)·s
  std::vector<PointSet> levels{s};
  for (Coord k = 2; k <= h; ++k) levels.push_back(sumset(levels.back(), s, limits));
  if (!levels.back().contains(p)) return std::nullopt;
  std::vector<LatticePoint> parts;
  LatticePoint rest = p;
  for (Coord k = h; k > 1; --k) {
    const PointSet& below = levels[static_cast<std::size_t>(k - 2)];
    auto it = std::find_if(s.begin(), s.end(),
                           [&](const LatticePoint& a) { return below.contains(rest - a); });
    parts.push_back(*it);
    rest = rest - *it;
  }
  parts.push_back(rest);
  std::sort(parts.begin(), parts.end());
  return parts;
}

IdpReport idp_check(const LatticePolytope& p, Coord h, const Limits& limits) {
  require_positive(h);
  PointSet base(p.dim(), geometry::lattice_points(p, limits));
  PointSet left = hfold_sumset(base, h, limits);
  PointSet right(p.dim(), geometry::lattice_points(geometry::dilate(p, h), limits));
  if (!left.is_subset_of(right))
    throw std::logic_error("h-fold sumset escaped the dilate; inclusion is unconditional");
  IdpReport r;
  r.h = h;
  r.witnesses = right.minus(left);
  r.holds = r.witnesses.empty();
  r.sumset_size = left.size();
  r.dilate_size = right.size();
  return r;
}

std::vector<IdpReport> idp_scan(const LatticePolytope& p, Coord h_max, const Limits& limits) {
  require_positive(h_max);
  std::vector<IdpReport> out;
  for (Coord h = 1; h <= h_max; ++h) {
    try {
      out.push_back(idp_check(p, h, limits));
    } catch (const ResourceError& e) {
      throw ResourceError(std::string(e.what()) + " (at h=" + std::to_string(h) + ")", h);
    }
  }
  return out;
}

}  // namespace latticeforge::sumset
