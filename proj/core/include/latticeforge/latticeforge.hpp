#pragma once

#include "latticeforge/errors.hpp"
#include "latticeforge/exact_linalg.hpp"
#include "latticeforge/fixtures.hpp"
#include "latticeforge/geometry.hpp"
#include "latticeforge/lp.hpp"
#include "latticeforge/sumset.hpp"
#include "latticeforge/unimodular.hpp"

namespace latticeforge {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "latticeforge/1";

}  // namespace latticeforge
