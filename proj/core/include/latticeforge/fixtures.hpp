#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latticeforge/geometry.hpp"

// Canonical small polytopes used by tests, benchmarks and `--example`.
namespace latticeforge::fixtures {

using geometry::LatticePoint;
using geometry::LatticePolytope;

/// {0, e1, ..., en}
std::vector<LatticePoint> standard_simplex_points(std::size_t n);
/// {0, e1, e2, 2e3}: index 2, with the extra lattice point e3.
std::vector<LatticePoint> a1_points();
/// {0, e1, e2, e1+e2+2e3}: index 2, no lattice points besides its vertices.
std::vector<LatticePoint> a2_points();
/// {0,1}^n
std::vector<LatticePoint> cube_points(std::size_t n);

/// Resolves "std-simplex-<n>", "cube-<n>", "square", "a1" or "a2".
std::optional<std::vector<LatticePoint>> named(std::string_view name);
std::vector<std::string> names();

}  // namespace latticeforge::fixtures
