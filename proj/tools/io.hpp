#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latticeforge/errors.hpp"
#include "latticeforge/geometry.hpp"
#include "latticeforge/unimodular.hpp"

// File formats of the command-line tool. Everything is JSON with integer
// coordinates only; a float anywhere is a parse error.
namespace latticeforge::cli {

using geometry::LatticePoint;

/// Malformed input file or flag value (exit status 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// {"dim": n, "vertices": [[...], ...], "name": "..."}
struct PolytopeFile {
  std::size_t dim = 0;
  std::vector<LatticePoint> vertices;
  std::optional<std::string> name;

  friend bool operator==(const PolytopeFile&, const PolytopeFile&) = default;
};

PolytopeFile parse_polytope_file(std::string_view text);
/// Canonical compact form; parse_polytope_file(serialize(f)) == f.
std::string serialize(const PolytopeFile& f);

/// A cover as written by `triangulate`: {"dim", "kind", "target", "cells"}.
/// A whole report whose result holds such an object is accepted too.
struct CoverFile {
  std::size_t dim = 0;
  unimodular::CoverKind kind = unimodular::CoverKind::kTriangulation;
  std::vector<LatticePoint> target;
  std::vector<std::vector<LatticePoint>> cells;

  friend bool operator==(const CoverFile&, const CoverFile&) = default;
};

CoverFile parse_cover_file(std::string_view text);
std::string serialize(const CoverFile& f);
CoverFile to_cover_file(const unimodular::SimplicialCover& c);

/// True when the document looks like a cover (has "cells", directly or
/// under result.cover) rather than a polytope.
bool is_cover_document(std::string_view text);

std::string read_file(const std::string& path);

/// "1,-2,3" -> (1,-2,3); the length must equal dim.
LatticePoint parse_point(std::string_view csv, std::size_t dim);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace latticeforge::cli
