#include "io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace latticeforge::cli {
namespace {

using Json = nlohmann::ordered_json;
using geometry::Coord;

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Coord to_coord(const Json& v, const std::string& where) {
  if (v.is_number_integer() && !v.is_number_unsigned()) return v.get<std::int64_t>();
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<Coord>::max()))
      throw InputError(where + ": integer out of the 64-bit range");
    return static_cast<Coord>(u);
  }
  if (v.is_number_float())
    throw InputError(where + ": expected an integer, got a float or an out-of-range number");
  throw InputError(where + ": expected an integer");
}

std::size_t to_dim(const Json& doc) {
  if (!doc.contains("dim")) throw InputError("missing field \"dim\"");
  const Coord d = to_coord(doc["dim"], "dim");
  if (d < 1) throw InputError("dim must be positive");
  return static_cast<std::size_t>(d);
}

LatticePoint to_point(const Json& v, std::size_t dim, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array of integers");
  if (v.size() != dim)
    throw InputError(where + ": expected " + std::to_string(dim) + " coordinates, got " +
                     std::to_string(v.size()));
  std::vector<Coord> c;
  c.reserve(dim);
  for (std::size_t i = 0; i < v.size(); ++i)
    c.push_back(to_coord(v[i], where + "[" + std::to_string(i) + "]"));
  return LatticePoint(std::move(c));
}

std::vector<LatticePoint> to_points(const Json& v, std::size_t dim, const std::string& where) {
  if (!v.is_array() || v.empty()) throw InputError(where + ": expected a non-empty array");
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(to_point(v[i], dim, where + "[" + std::to_string(i) + "]"));
  return out;
}

Json from_points(const std::vector<LatticePoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p.coords());
  return a;
}

const Json* cover_object(const Json& doc) {
  if (!doc.is_object()) return nullptr;
  if (doc.contains("cells")) return &doc;
  if (doc.contains("result") && doc["result"].is_object()) {
    const Json& r = doc["result"];
    if (r.contains("cover") && r["cover"].is_object()) return &r["cover"];
  }
  return nullptr;
}

}  // namespace

PolytopeFile parse_polytope_file(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw InputError("polytope file must be a JSON object");
  PolytopeFile f;
  f.dim = to_dim(doc);
  if (!doc.contains("vertices")) throw InputError("missing field \"vertices\"");
  f.vertices = to_points(doc["vertices"], f.dim, "vertices");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("name must be a string");
    f.name = doc["name"].get<std::string>();
  }
  return f;
}

std::string serialize(const PolytopeFile& f) {
  Json doc;
  doc["dim"] = f.dim;
  doc["vertices"] = from_points(f.vertices);
  if (f.name) doc["name"] = *f.name;
  return doc.dump();
}

bool is_cover_document(std::string_view text) {
  return cover_object(parse_json(text)) != nullptr;
}

CoverFile parse_cover_file(std::string_view text) {
  const Json doc = parse_json(text);
  const Json* c = cover_object(doc);
  if (!c) throw InputError("not a cover: expected a \"cells\" field");
  CoverFile f;
  f.dim = to_dim(*c);
  if (c->contains("kind")) {
    const Json& k = (*c)["kind"];
    if (k == "triangulation") f.kind = unimodular::CoverKind::kTriangulation;
    else if (k == "general-cover") f.kind = unimodular::CoverKind::kGeneralCover;
    else throw InputError("kind must be \"triangulation\" or \"general-cover\"");
  }
  if (!c->contains("target")) throw InputError("missing field \"target\"");
  f.target = to_points((*c)["target"], f.dim, "target");
  const Json& cells = (*c)["cells"];
  if (!cells.is_array() || cells.empty()) throw InputError("cells: expected a non-empty array");
  for (std::size_t i = 0; i < cells.size(); ++i)
    f.cells.push_back(to_points(cells[i], f.dim, "cells[" + std::to_string(i) + "]"));
  return f;
}

std::string serialize(const CoverFile& f) {
  Json doc;
  doc["dim"] = f.dim;
  doc["kind"] = unimodular::to_string(f.kind);
  doc["target"] = from_points(f.target);
  Json cells = Json::array();
  for (const auto& c : f.cells) cells.push_back(from_points(c));
  doc["cells"] = std::move(cells);
  return doc.dump();
}

CoverFile to_cover_file(const unimodular::SimplicialCover& c) {
  CoverFile f;
  f.dim = c.target.dim();
  f.kind = c.kind;
  f.target = c.target.vertices();
  for (const auto& s : c.cells) f.cells.push_back(s.vertices());
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LatticePoint parse_point(std::string_view csv, std::size_t dim) {
  std::vector<Coord> c;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = csv.find(',', start);
    std::string_view tok = csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    Coord v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw InputError("--point: \"" + std::string(tok) + "\" is not a 64-bit integer");
    c.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (c.size() != dim)
    throw InputError("--point has " + std::to_string(c.size()) + " coordinates, expected " +
                     std::to_string(dim));
  return LatticePoint(std::move(c));
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

}  // namespace latticeforge::cli
