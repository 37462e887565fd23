#include "latticeforge/fixtures.hpp"

#include <charconv>

namespace latticeforge::fixtures {

namespace {

std::optional<std::size_t> suffix_dim(std::string_view name, std::string_view prefix) {
  if (!name.starts_with(prefix)) return std::nullopt;
  name.remove_prefix(prefix.size());
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), n);
  if (ec != std::errc() || ptr != name.data() + name.size()) return std::nullopt;
  if (n < 1 || n > geometry::kMaxDimension) return std::nullopt;
  return n;
}

}  // namespace

std::vector<LatticePoint> standard_simplex_points(std::size_t n) {
  std::vector<LatticePoint> pts{LatticePoint::zero(n)};
  for (std::size_t i = 0; i < n; ++i) pts.push_back(LatticePoint::unit(n, i));
  return pts;
}

std::vector<LatticePoint> a1_points() { return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 2}}; }

std::vector<LatticePoint> a2_points() { return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}}; }

std::vector<LatticePoint> cube_points(std::size_t n) {
  std::vector<LatticePoint> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<geometry::Coord> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> (n - 1 - i)) & 1;
    pts.emplace_back(std::move(c));
  }
  return pts;
}

std::optional<std::vector<LatticePoint>> named(std::string_view name) {
  if (name == "a1") return a1_points();
  if (name == "a2") return a2_points();
  if (name == "square") return cube_points(2);
  if (auto n = suffix_dim(name, "std-simplex-")) return standard_simplex_points(*n);
  if (auto n = suffix_dim(name, "cube-")) return cube_points(*n);
  return std::nullopt;
}

std::vector<std::string> names() {
  return {"std-simplex-<n>", "cube-<n>", "square", "a1", "a2"};
}

}  // namespace latticeforge::fixtures
