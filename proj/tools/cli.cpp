#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "io.hpp"
#include "json.hpp"
#include "latticeforge/latticeforge.hpp"

namespace latticeforge::cli {
namespace {

namespace um = unimodular;
using Json = nlohmann::ordered_json;
using geometry::Coord;
using geometry::Integer;
using geometry::LatticePolytope;
using geometry::LatticeSimplex;
using geometry::Limits;

struct Options {
  std::string file;
  std::string example;
  std::uint64_t max_box_points = Limits{}.max_box_points;
  std::size_t max_set_size = Limits{}.max_set_size;

  std::size_t cell = 0;
  Coord h = 0;
  Coord h_max = 3;
  std::string point;
  std::string cover;
  std::size_t attempts = 64;
  std::uint64_t seed = 0;
  Coord ell_max = 4;

  const CLI::Option* cell_opt = nullptr;
  const CLI::Option* h_opt = nullptr;
  const CLI::Option* h_max_opt = nullptr;
};

struct Input {
  std::string source;
  std::string canonical;  // digest is taken over this
  std::optional<PolytopeFile> polytope;
  std::optional<CoverFile> cover;
};

struct Outcome {
  int code = kSuccess;
  Json result;
  std::string summary;
};

// ---- JSON rendering -------------------------------------------------------

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json points_json(const std::vector<LatticePoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p.coords());
  return a;
}

std::string show(const LatticePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

Json idp_json(const sumset::IdpReport& r) {
  return {{"h", r.h},
          {"holds", r.holds},
          {"sumset_size", r.sumset_size},
          {"dilate_size", r.dilate_size},
          {"witnesses", points_json(r.witnesses.points())}};
}

Json decomposition_json(const um::Decomposition& d) {
  Json weights = Json::array();
  for (const auto& w : d.weights) weights.push_back({{"vertex", w.vertex.coords()}, {"weight", w.weight}});
  const auto support = d.support();
  return {{"point", d.point.coords()},
          {"h", d.h},
          {"cell", points_json(d.cell.vertices())},
          {"weights", std::move(weights)},
          {"parts", points_json(d.parts)},
          {"support", points_json(support)},
          {"support_affinely_independent", geometry::is_affinely_independent(support)}};
}

Json cover_json(const um::SimplicialCover& c) {
  Json j = Json::parse(serialize(to_cover_file(c)));
  j["status"] = um::to_string(c.status);
  return j;
}

Json check_json(const um::CoverCheck& c) {
  return {{"status", um::to_string(c.status)},
          {"cells_inside", c.cells_inside},
          {"all_unimodular", c.all_unimodular},
          {"volume_matches", c.volume_matches},
          {"interiors_disjoint", c.interiors_disjoint},
          {"cell_volume", integer_json(c.cell_volume)},
          {"target_volume", integer_json(c.target_volume)},
          {"reason", c.reason}};
}

Json simplex_json(const LatticeSimplex& s) {
  const um::LatticeIndex index = um::lattice_index(s);
  const auto hnf = linalg::hermite_normal_form(s.difference_matrix());
  Json diag = Json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) diag.push_back(integer_json(hnf.h(i, i)));
  return {{"vertices", points_json(s.vertices())},
          {"lattice_index", integer_json(*index.value)},
          {"unimodular", index.unimodular()},
          {"hnf_diagonal", std::move(diag)}};
}

// ---- input ----------------------------------------------------------------

Input load_input(const Options& o, bool allow_cover) {
  if (o.file.empty() == o.example.empty())
    throw InputError("give exactly one of a polytope file or --example");
  Input in;
  if (!o.example.empty()) {
    auto pts = fixtures::named(o.example);
    if (!pts) {
      std::string known;
      for (const auto& n : fixtures::names()) known += (known.empty() ? "" : ", ") + n;
      throw InputError("unknown example \"" + o.example + "\" (known: " + known + ")");
    }
    const std::size_t dim = pts->front().dim();
    in.polytope = PolytopeFile{dim, std::move(*pts), o.example};
    in.source = "example:" + o.example;
    in.canonical = serialize(*in.polytope);
    return in;
  }
  const std::string text = read_file(o.file);
  in.source = "file:" + o.file;
  if (is_cover_document(text)) {
    if (!allow_cover) throw InputError(o.file + " is a cover; this command expects a polytope file");
    in.cover = parse_cover_file(text);
    in.canonical = serialize(*in.cover);
  } else {
    in.polytope = parse_polytope_file(text);
    in.canonical = serialize(*in.polytope);
  }
  return in;
}

Json input_json(const Input& in) {
  Json j{{"source", in.source}, {"kind", in.cover ? "cover" : "polytope"}};
  if (in.polytope && in.polytope->name) j["name"] = *in.polytope->name;
  j["dim"] = in.cover ? in.cover->dim : in.polytope->dim;
  j["digest"] = "fnv1a64:" + fnv1a_hex(in.canonical);
  return j;
}

unsigned thread_cap() {
  if (const char* env = std::getenv("LATTICEFORGE_THREADS")) {
    const std::string_view s(env);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
      throw InputError("LATTICEFORGE_THREADS must be a positive integer");
    return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Limits make_limits(const Options& o) {
  Limits l;
  l.max_box_points = o.max_box_points;
  l.max_set_size = o.max_set_size;
  l.threads = thread_cap();
  return l;
}

LatticePolytope polytope_of(const Input& in) { return LatticePolytope(in.polytope->vertices); }

// ---- subcommands ----------------------------------------------------------

Outcome cmd_unimodular_test(const Input& in, const Options& o) {
  Outcome r;
  std::vector<LatticeSimplex> simplices;
  std::optional<std::size_t> cell;
  if (in.polytope) {
    if (o.cell_opt->count()) throw InputError("--cell applies to cover files only");
    simplices.emplace_back(in.polytope->vertices);
  } else {
    if (o.cell_opt->count()) {
      if (o.cell >= in.cover->cells.size())
        throw InputError("--cell " + std::to_string(o.cell) + " out of range (cover has " +
                         std::to_string(in.cover->cells.size()) + " cells)");
      cell = o.cell;
      simplices.emplace_back(in.cover->cells[o.cell]);
    } else {
      for (const auto& c : in.cover->cells) simplices.emplace_back(c);
    }
  }

  bool all = true;
  Json rows = Json::array();
  std::ostringstream sum;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    Json s = simplex_json(simplices[i]);
    all = all && s["unimodular"].get<bool>();
    if (simplices.size() > 1) sum << "cell " << i << ": ";
    sum << "lattice index " << s["lattice_index"].dump() << ", "
        << (s["unimodular"].get<bool>() ? "unimodular" : "not unimodular") << ", HNF diagonal (";
    for (std::size_t k = 0; k < s["hnf_diagonal"].size(); ++k)
      sum << (k ? "," : "") << s["hnf_diagonal"][k].dump();
    sum << ")\n";
    rows.push_back(std::move(s));
  }
  if (rows.size() == 1) {
    r.result = Json::object();
    if (cell) r.result["cell"] = *cell;
    r.result["simplex"] = rows[0];
  } else {
    r.result = {{"cells", std::move(rows)}, {"all_unimodular", all}};
  }
  r.result["unimodular"] = all;
  r.code = all ? kSuccess : kNegative;
  r.summary = sum.str();
  return r;
}

Outcome cmd_idp_check(const Input& in, const Options& o, const Limits& limits) {
  if (o.h_opt->count() == o.h_max_opt->count()) throw InputError("give exactly one of --h or --h-max");
  const Coord h = o.h_opt->count() ? o.h : o.h_max;
  if (h < 1) throw InputError("h must be at least 1, got " + std::to_string(h));
  const LatticePolytope p = polytope_of(in);

  std::vector<sumset::IdpReport> reports;
  if (o.h_opt->count()) {
    try {
      reports.push_back(sumset::idp_check(p, h, limits));
    } catch (const ResourceError& e) {
      if (e.h()) throw;
      throw ResourceError(std::string(e.what()) + " (at h=" + std::to_string(h) + ")", h);
    }
  } else {
    reports = sumset::idp_scan(p, h, limits);
  }

  Outcome r;
  bool all = true;
  Json rows = Json::array();
  std::ostringstream sum;
  for (const auto& rep : reports) {
    all = all && rep.holds;
    rows.push_back(idp_json(rep));
    sum << "h=" << rep.h << ": ";
    if (rep.holds) {
      sum << "holds (" << rep.dilate_size << " lattice points)\n";
    } else {
      sum << "fails, " << rep.witnesses.size() << " witness(es), first "
          << show(rep.witnesses.points().front()) << "\n";
    }
  }
  r.result = {{"holds", all}, {"reports", std::move(rows)}};
  r.code = all ? kSuccess : kNegative;
  r.summary = sum.str();
  return r;
}

Outcome cmd_decompose(const Input& in, const Options& o, const Limits& limits) {
  if (o.h < 1) throw InputError("--h must be at least 1, got " + std::to_string(o.h));
  const LatticePolytope p = polytope_of(in);
  const LatticePoint point = parse_point(o.point, p.dim());
  if (!geometry::contains(p, geometry::RatPoint::divided(point, o.h)))
    throw PointOutsideError("point " + show(point) + " is not in " + std::to_string(o.h) + "P");

  Outcome r;
  r.result = Json::object();
  std::optional<um::SimplicialCover> cover;
  std::string reason;
  if (!o.cover.empty()) {
    r.result["cover_source"] = "file";
    const CoverFile cf = parse_cover_file(read_file(o.cover));
    if (cf.dim != p.dim() || LatticePolytope(cf.target).vertices() != p.vertices())
      throw InputError("the cover's target is not the input polytope");
    um::SimplicialCover c{LatticePolytope::from_vertices(p.vertices()), {}, cf.kind};
    for (const auto& cell : cf.cells) c.cells.emplace_back(cell);
    const um::CoverCheck check = um::check_cover(c);
    c.status = check.status;
    r.result["cover_check"] = check_json(check);
    if (check.status == um::CertStatus::kCertified && c.all_unimodular())
      cover = std::move(c);
    else
      reason = "supplied cover is not a certified unimodular triangulation (" +
               std::string(um::to_string(check.status)) +
               (check.reason.empty() ? "" : ": " + check.reason) + ")";
  } else {
    r.result["cover_source"] = "search";
    if (!p.full_dimensional()) {
      reason = "the polytope is not full-dimensional, so it has no triangulation";
    } else {
      auto search = um::find_unimodular_triangulation(p, o.attempts, o.seed, limits);
      if (search.cover)
        cover = std::move(search.cover);
      else if (search.proven_none)
        reason = "no unimodular triangulation exists (the lattice points admit only one)";
      else
        reason = "no unimodular triangulation found in " + std::to_string(search.attempts_tried) +
                 " attempts";
    }
  }

  if (cover) {
    const um::Decomposition d = um::decompose(p, *cover, point, o.h);
    r.result["status"] = "decomposed";
    r.result["decomposition"] = decomposition_json(d);
    std::ostringstream sum;
    sum << show(point) << " =";
    for (std::size_t i = 0; i < d.parts.size(); ++i) sum << (i ? " + " : " ") << show(d.parts[i]);
    r.summary = sum.str() + "\n";
    r.code = kSuccess;
    return r;
  }

  // No certificate: report "unknown" and say what exhaustive search finds.
  const sumset::PointSet lattice(p.dim(), geometry::lattice_points(p, limits));
  const auto parts = sumset::find_summands(lattice, point, o.h, limits);
  Json fallback{{"method", "exhaustive search over h-multisets of the lattice points"},
                {"lattice_points", lattice.size()},
                {"found", parts.has_value()},
                {"parts", parts ? points_json(*parts) : Json(nullptr)},
                {"conclusion", parts ? "a decomposition exists" : "no decomposition exists"}};
  r.result["status"] = "unknown";
  r.result["reason"] = reason;
  r.result["fallback"] = std::move(fallback);
  r.code = kNegative;
  r.summary = "no certified cover: " + reason + "\nexhaustive search: " +
              (parts ? "a decomposition exists" : "no decomposition exists") + "\n";
  return r;
}

Outcome cmd_triangulate(const Input& in, const Options& o, const Limits& limits) {
  if (o.attempts < 1) throw InputError("--attempts must be at least 1");
  const LatticePolytope p = polytope_of(in);
  const um::TriangulationSearch search = um::find_unimodular_triangulation(p, o.attempts, o.seed, limits);
  Outcome r;
  r.result = {{"found", search.cover.has_value()},
              {"proven_none", search.proven_none},
              {"attempts_tried", search.attempts_tried},
              {"winning_attempt",
               search.winning_attempt ? Json(*search.winning_attempt) : Json(nullptr)}};
  if (search.cover) {
    r.result["cover"] = cover_json(*search.cover);
    r.result["check"] = check_json(um::check_cover(*search.cover));
    r.summary = "certified unimodular triangulation with " +
                std::to_string(search.cover->cells.size()) + " cells (attempt " +
                std::to_string(*search.winning_attempt) + ")\n";
    r.code = kSuccess;
  } else {
    // Show the lexicographic attempt so the failure can be inspected.
    um::SimplicialCover lex = um::placing_triangulation(p, limits);
    const um::CoverCheck check = um::check_cover(lex);
    lex.status = check.status;
    r.result["cover"] = nullptr;
    r.result["attempt0"] = {{"cover", cover_json(lex)}, {"check", check_json(check)}};
    r.summary = search.proven_none
                    ? "no unimodular triangulation exists (the lattice points admit only one)\n"
                    : "no unimodular triangulation found in " +
                          std::to_string(search.attempts_tried) + " attempts\n";
    r.code = kNegative;
  }
  return r;
}

Outcome cmd_find_ell(const Input& in, const Options& o, const Limits& limits) {
  if (o.ell_max < 1 || o.h_max < 1 || o.attempts < 1)
    throw InputError("--ell-max, --h-max and --attempts must be at least 1");
  const um::EllReport report =
      um::find_ell(polytope_of(in), o.ell_max, o.h_max, o.attempts, o.seed, limits);
  Json rows = Json::array();
  std::ostringstream sum;
  for (const auto& row : report.per_ell) {
    Json idp = Json::array();
    for (const auto& rep : row.idp) idp.push_back(idp_json(rep));
    rows.push_back({{"ell", row.ell},
                    {"certified", row.certified},
                    {"proven_none", row.proven_none},
                    {"attempts_tried", row.attempts_tried},
                    {"cells", row.cells},
                    {"idp_all_hold", row.idp_all_hold()},
                    {"agrees", row.agrees()},
                    {"idp", std::move(idp)}});
    sum << "ell=" << row.ell << ": "
        << (row.certified ? "certified" : row.proven_none ? "proven none" : "not certified")
        << "; oracle";
    for (const auto& rep : row.idp) sum << " h=" << rep.h << (rep.holds ? ":ok" : ":FAIL");
    sum << "\n";
  }
  Outcome r;
  r.result = {{"ell", report.ell ? Json(*report.ell) : Json(nullptr)},
              {"consistent", report.consistent()},
              {"rows", std::move(rows)}};
  if (!report.consistent()) {
    r.code = kInternalError;
    sum << "certificate and oracle disagree\n";
  } else {
    r.code = report.ell ? kSuccess : kNegative;
    sum << (report.ell ? "smallest certified ell = " + std::to_string(*report.ell)
                       : std::string("no ell certified up to ") + std::to_string(o.ell_max))
        << "\n";
  }
  r.summary = sum.str();
  return r;
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const InputError*>(&e)) return "input";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension";
  if (dynamic_cast<const DegenerateError*>(&e)) return "degenerate";
  if (dynamic_cast<const PointOutsideError*>(&e)) return "point-outside";
  if (dynamic_cast<const NonLatticeError*>(&e)) return "non-lattice";
  if (dynamic_cast<const NotUnimodularError*>(&e)) return "not-unimodular";
  if (dynamic_cast<const NoCellError*>(&e)) return "no-cell";
  if (dynamic_cast<const SingularMatrixError*>(&e)) return "singular";
  return "invalid-argument";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks of the integer decomposition property of lattice polytopes",
               "latticeforge"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  const std::string example_help = [] {
    std::string s = "Built-in polytope instead of a file:";
    for (const auto& n : fixtures::names()) s += " " + n;
    return s;
  }();
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Polytope JSON file");
    sub->add_option("--example", o.example, example_help);
    sub->add_option("--max-box-points", o.max_box_points, "Bounding-box cap for enumeration")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-set-size", o.max_set_size, "Cardinality cap for sumsets")
        ->check(CLI::PositiveNumber);
  };

  auto* unimod = app.add_subcommand("unimodular-test", "Lattice index and unimodularity of a simplex");
  add_input(unimod);
  o.cell_opt = unimod->add_option("--cell", o.cell, "Cell of a cover file to test");

  auto* idp = app.add_subcommand("idp-check", "Brute-force h(P∩Z^n) = (hP)∩Z^n");
  add_input(idp);
  o.h_opt = idp->add_option("--h", o.h, "Single dilation factor");
  o.h_max_opt = idp->add_option("--h-max", o.h_max, "Check every h = 1..h-max");

  auto* dec = app.add_subcommand("decompose", "Write a point of hP as a sum of h lattice points");
  add_input(dec);
  dec->add_option("--point", o.point, "Comma-separated lattice point of hP")->required();
  dec->add_option("--h", o.h, "Dilation factor")->required();
  dec->add_option("--cover", o.cover, "Cover file written by `triangulate`");
  dec->add_option("--attempts", o.attempts, "Triangulation attempts when no cover is given");
  dec->add_option("--seed", o.seed, "Seed for shuffled attempt orders");

  auto* tri = app.add_subcommand("triangulate", "Search for a certified unimodular triangulation");
  add_input(tri);
  tri->add_option("--attempts", o.attempts, "Number of insertion orders to try");
  tri->add_option("--seed", o.seed, "Seed for shuffled attempt orders");

  auto* ell = app.add_subcommand("find-ell", "Smallest l with a unimodular triangulation of lP");
  add_input(ell);
  ell->add_option("--ell-max", o.ell_max, "Largest dilation to try");
  ell->add_option("--h-max", o.h_max, "Oracle depth per dilation");
  ell->add_option("--attempts", o.attempts, "Triangulation attempts per dilation");
  ell->add_option("--seed", o.seed, "Seed for shuffled attempt orders");

  std::vector<const char*> argv{"latticeforge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Json report{{"schema", kSchema},
              {"version", kVersion},
              {"command", {{"subcommand", name}, {"args", args}}},
              {"input", nullptr}};
  const auto start = std::chrono::steady_clock::now();
  int code = kSuccess;
  try {
    const Input in = load_input(o, sub == unimod);
    report["input"] = input_json(in);
    const Limits limits = make_limits(o);
    Outcome r;
    if (sub == unimod) r = cmd_unimodular_test(in, o);
    else if (sub == idp) r = cmd_idp_check(in, o, limits);
    else if (sub == dec) r = cmd_decompose(in, o, limits);
    else if (sub == tri) r = cmd_triangulate(in, o, limits);
    else r = cmd_find_ell(in, o, limits);
    report["result"] = std::move(r.result);
    code = r.code;
    err << r.summary;
  } catch (const ResourceError& e) {
    code = kResourceCap;
    Json je{{"kind", "resource"}, {"message", e.what()}};
    if (e.h()) je["h"] = *e.h();
    report["error"] = std::move(je);
    err << "resource cap exceeded: " << e.what() << "\n";
  } catch (const Error& e) {
    code = kInputError;
    report["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = kInternalError;
    report["error"] = {{"kind", "internal"}, {"message", e.what()}};
    err << "internal error: " << e.what() << "\n";
  }
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  report["exit_code"] = code;
  report["wall_time_ms"] = std::round(elapsed.count() * 1000.0) / 1000.0;
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace latticeforge::cli
