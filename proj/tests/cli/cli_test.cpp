#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "io.hpp"
#include "json.hpp"
#include "latticeforge/latticeforge.hpp"
#include "support/oracles.hpp"

namespace latticeforge::cli {
namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int code;
  Json report;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  Json j = out.str().empty() ? Json() : Json::parse(out.str());
  return {code, std::move(j), err.str()};
}

std::string data(const std::string& name) { return std::string(LATTICEFORGE_DATA_DIR) + "/" + name; }

// A scratch file that is removed on scope exit.
class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("latticeforge_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
    std::ofstream(path_) << contents;
  }
  ~TempFile() { fs::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

Json strip_time(Json j) {
  j.erase("wall_time_ms");
  return j;
}

std::vector<std::vector<long>> pts(const Json& j) { return j.get<std::vector<std::vector<long>>>(); }

TEST(UnimodularTest, A1IsIndexTwo) {
  Result r = invoke({"unimodular-test", data("a1.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report["schema"], "latticeforge/1");
  EXPECT_EQ(r.report["result"]["simplex"]["lattice_index"], 2);
  EXPECT_EQ(r.report["result"]["simplex"]["unimodular"], false);
  EXPECT_EQ(r.report["result"]["simplex"]["hnf_diagonal"], Json::parse("[1,1,2]"));
  EXPECT_NE(r.err.find("not unimodular"), std::string::npos);
}

TEST(UnimodularTest, StandardSimplexIsUnimodular) {
  EXPECT_EQ(invoke({"unimodular-test", data("std-simplex-3.json")}).code, 0);
  EXPECT_EQ(invoke({"unimodular-test", "--example", "std-simplex-3"}).code, 0);
}

TEST(UnimodularTest, InputErrors) {
  Result r = invoke({"unimodular-test", data("collinear.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report["error"]["kind"], "degenerate");
  EXPECT_EQ(invoke({"unimodular-test", data("cube-3.json")}).code, 2);
  EXPECT_EQ(invoke({"unimodular-test", data("missing.json")}).code, 2);
  EXPECT_EQ(invoke({"unimodular-test", "--example", "nope"}).code, 2);
  EXPECT_EQ(invoke({"unimodular-test"}).code, 2);
  EXPECT_EQ(invoke({"unimodular-test", "--example", "a1", "--cell", "0"}).code, 2);
}

TEST(UnimodularTest, CoverCells) {
  Result tri = invoke({"triangulate", data("cube-3.json")});
  ASSERT_EQ(tri.code, 0);
  TempFile cover(tri.report.dump());
  Result one = invoke({"unimodular-test", cover.path(), "--cell", "5"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.report["result"]["cell"], 5);
  Result all = invoke({"unimodular-test", cover.path()});
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(all.report["result"]["cells"].size(), 6u);
  EXPECT_EQ(invoke({"unimodular-test", cover.path(), "--cell", "6"}).code, 2);
}

TEST(IdpCheck, A2FailsAtTwo) {
  Result r = invoke({"idp-check", data("a2.json"), "--h", "2"});
  EXPECT_EQ(r.code, 1);
  const Json& rep = r.report["result"]["reports"][0];
  EXPECT_EQ(rep["holds"], false);
  EXPECT_EQ(pts(rep["witnesses"]), (std::vector<std::vector<long>>{{1, 1, 1}}));
}

TEST(IdpCheck, StandardSimplexHolds) {
  Result r = invoke({"idp-check", "--example", "std-simplex-3", "--h-max", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report["result"]["reports"].size(), 4u);
}

TEST(IdpCheck, UsageErrors) {
  EXPECT_EQ(invoke({"idp-check", data("a2.json"), "--h", "0"}).code, 2);
  EXPECT_EQ(invoke({"idp-check", data("a2.json")}).code, 2);
  EXPECT_EQ(invoke({"idp-check", data("a2.json"), "--h", "2", "--h-max", "3"}).code, 2);
  EXPECT_EQ(invoke({"idp-check", data("a2.json"), "--h", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"idp-check", data("a2.json"), "--bogus"}).code, 2);
  EXPECT_EQ(invoke({"no-such-command"}).code, 2);
}

TEST(IdpCheck, ResourceCapReportsH) {
  // 2P of the unit cube has a 27-point box; 3P has 64.
  Result r = invoke({"idp-check", data("cube-3.json"), "--h-max", "4", "--max-box-points", "30"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.report["error"]["kind"], "resource");
  EXPECT_EQ(r.report["error"]["h"], 3);
  Result single = invoke({"idp-check", data("cube-3.json"), "--h", "3", "--max-box-points", "30"});
  EXPECT_EQ(single.code, 3);
  EXPECT_EQ(single.report["error"]["h"], 3);
}

TEST(Decompose, SquarePoint) {
  Result r = invoke({"decompose", data("square.json"), "--point", "1,1", "--h", "2"});
  ASSERT_EQ(r.code, 0);
  auto parts = pts(r.report["result"]["decomposition"]["parts"]);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0][0] + parts[1][0], 1);
  EXPECT_EQ(parts[0][1] + parts[1][1], 1);
  EXPECT_EQ(r.report["result"]["decomposition"]["support_affinely_independent"], true);
}

TEST(Decompose, VertexMultiple) {
  Result r = invoke({"decompose", "--example", "std-simplex-3", "--point", "0,0,0", "--h", "3"});
  ASSERT_EQ(r.code, 0);
  const Json& w = r.report["result"]["decomposition"]["weights"];
  EXPECT_EQ(w[0]["vertex"], Json::parse("[0,0,0]"));
  EXPECT_EQ(w[0]["weight"], 3);
  EXPECT_EQ(pts(r.report["result"]["decomposition"]["parts"]),
            (std::vector<std::vector<long>>(3, {0, 0, 0})));
}

TEST(Decompose, A2HasNoDecomposition) {
  Result r = invoke({"decompose", data("a2.json"), "--point", "1,1,1", "--h", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.report["result"]["status"], "unknown");
  EXPECT_EQ(r.report["result"]["fallback"]["found"], false);
  EXPECT_EQ(r.report["result"]["fallback"]["conclusion"], "no decomposition exists");
  // The oracle agrees: no 2-multiset of the four lattice points sums to (1,1,1).
  EXPECT_TRUE(testing::multisets_summing_to(fixtures::a2_points(), 2, {1, 1, 1}).empty());

  Result found = invoke({"decompose", data("a2.json"), "--point", "1,1,2", "--h", "2"});
  EXPECT_EQ(found.code, 1);
  EXPECT_EQ(found.report["result"]["fallback"]["found"], true);
}

TEST(Decompose, Errors) {
  EXPECT_EQ(invoke({"decompose", data("square.json"), "--point", "3,0", "--h", "2"}).code, 2);
  EXPECT_EQ(invoke({"decompose", data("square.json"), "--point", "1", "--h", "2"}).code, 2);
  EXPECT_EQ(invoke({"decompose", data("square.json"), "--point", "1,x", "--h", "2"}).code, 2);
  EXPECT_EQ(invoke({"decompose", data("square.json"), "--point", "1,1"}).code, 2);
  EXPECT_EQ(invoke({"decompose", data("square.json"), "--point", "0,0", "--h", "0"}).code, 2);
}

TEST(Decompose, WithCoverFile) {
  Result tri = invoke({"triangulate", data("cube-3.json"), "--seed", "3"});
  ASSERT_EQ(tri.code, 0);
  TempFile cover(tri.report.dump());
  Result r = invoke({"decompose", data("cube-3.json"), "--cover", cover.path(), "--point", "1,1,1",
                     "--h", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.report["result"]["cover_source"], "file");
  EXPECT_EQ(r.report["result"]["decomposition"]["parts"].size(), 3u);

  // A cover of a different polytope is rejected.
  EXPECT_EQ(invoke({"decompose", data("square.json"), "--cover", cover.path(), "--point", "0,0",
                    "--h", "1"})
                .code,
            2);

  // A tampered cover (one cell dropped) is not trusted.
  Json c = tri.report["result"]["cover"];
  c["cells"].erase(c["cells"].size() - 1);
  TempFile partial(c.dump());
  Result u = invoke({"decompose", data("cube-3.json"), "--cover", partial.path(), "--point", "1,1,1",
                     "--h", "3"});
  EXPECT_EQ(u.code, 1);
  EXPECT_EQ(u.report["result"]["status"], "unknown");
  EXPECT_EQ(u.report["result"]["fallback"]["found"], true);
}

TEST(Triangulate, Examples) {
  Result cube = invoke({"triangulate", "--example", "cube-3"});
  ASSERT_EQ(cube.code, 0);
  EXPECT_EQ(cube.report["result"]["cover"]["cells"].size(), 6u);
  EXPECT_EQ(cube.report["result"]["check"]["status"], "certified");
  EXPECT_EQ(cube.report["result"]["check"]["cell_volume"], 6);

  Result a2 = invoke({"triangulate", data("a2.json")});
  EXPECT_EQ(a2.code, 1);
  EXPECT_EQ(a2.report["result"]["proven_none"], true);
  EXPECT_EQ(a2.report["result"]["attempt0"]["check"]["all_unimodular"], false);

  EXPECT_EQ(invoke({"triangulate", data("collinear.json")}).code, 2);
}

TEST(FindEll, Examples) {
  Result s = invoke({"find-ell", data("std-simplex-3.json"), "--ell-max", "2", "--h-max", "2"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.report["result"]["ell"], 1);

  Result cube = invoke({"find-ell", data("cube-3.json"), "--ell-max", "1", "--h-max", "2"});
  EXPECT_EQ(cube.code, 0);
  EXPECT_EQ(cube.report["result"]["ell"], 1);

  Result a2 = invoke({"find-ell", data("a2.json"), "--ell-max", "3", "--h-max", "2"});
  ASSERT_TRUE(a2.code == 0 || a2.code == 1);
  const Json& rows = a2.report["result"]["rows"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["certified"], false);
  EXPECT_EQ(rows[0]["idp"][1]["holds"], false);
  EXPECT_EQ(a2.report["result"]["consistent"], true);
}

TEST(Reports, DeterministicApartFromTiming) {
  const std::vector<std::vector<std::string>> commands{
      {"idp-check", data("a2.json"), "--h-max", "3"},
      {"triangulate", data("cube-3.json"), "--seed", "11", "--attempts", "4"},
      {"decompose", data("square.json"), "--point", "1,1", "--h", "2"},
      {"find-ell", data("a2.json"), "--ell-max", "2", "--h-max", "2"}};
  for (const auto& cmd : commands) {
    Result a = invoke(cmd), b = invoke(cmd);
    ::setenv("LATTICEFORGE_THREADS", "3", 1);
    Result c = invoke(cmd);
    ::unsetenv("LATTICEFORGE_THREADS");
    EXPECT_EQ(strip_time(a.report).dump(), strip_time(b.report).dump());
    EXPECT_EQ(strip_time(a.report).dump(), strip_time(c.report).dump());
    EXPECT_TRUE(a.report.contains("wall_time_ms"));
    EXPECT_EQ(a.report["version"], kVersion);
    EXPECT_EQ(a.report["command"]["subcommand"], cmd[0]);
  }
}

TEST(Reports, DigestIgnoresFormatting) {
  TempFile spaced("{ \"dim\" : 3,\n \"vertices\": [[0,0,0], [1,0,0], [0,1,0], [1,1,2]], \"name\": \"A2\" }");
  Result a = invoke({"idp-check", data("a2.json"), "--h", "1"});
  Result b = invoke({"idp-check", spaced.path(), "--h", "1"});
  EXPECT_EQ(a.report["input"]["digest"], b.report["input"]["digest"]);
}

TEST(Reports, BadThreadVariable) {
  ::setenv("LATTICEFORGE_THREADS", "zero", 1);
  EXPECT_EQ(invoke({"idp-check", data("a2.json"), "--h", "1"}).code, 2);
  ::unsetenv("LATTICEFORGE_THREADS");
}

TEST(PolytopeFile, ParseErrors) {
  EXPECT_THROW(parse_polytope_file("{\"dim\": 2, \"vertices\": [[0, 0.5]]}"), InputError);
  EXPECT_THROW(parse_polytope_file("{\"dim\": 2, \"vertices\": [[0, 1.0]]}"), InputError);
  EXPECT_THROW(parse_polytope_file("{\"dim\": 1, \"vertices\": [[99999999999999999999]]}"), InputError);
  EXPECT_THROW(parse_polytope_file("{\"dim\": 1, \"vertices\": [[9223372036854775808]]}"), InputError);
  EXPECT_THROW(parse_polytope_file("{\"dim\": 2, \"vertices\": [[0, 0, 0]]}"), InputError);
  EXPECT_THROW(parse_polytope_file("{\"dim\": 2, \"vertices\": []}"), InputError);
  EXPECT_THROW(parse_polytope_file("{\"dim\": 0, \"vertices\": [[]]}"), InputError);
  EXPECT_THROW(parse_polytope_file("{\"vertices\": [[0]]}"), InputError);
  EXPECT_THROW(parse_polytope_file("[1, 2]"), InputError);
  EXPECT_THROW(parse_polytope_file("{\"dim\": 1, "), InputError);
  EXPECT_THROW(parse_polytope_file("{\"dim\": 1, \"vertices\": [[1]], \"name\": 7}"), InputError);
  PolytopeFile f = parse_polytope_file("{\"dim\": 1, \"vertices\": [[-9223372036854775808]]}");
  EXPECT_EQ(f.vertices[0][0], std::numeric_limits<std::int64_t>::min());

  TempFile floaty("{\"dim\": 2, \"vertices\": [[0, 0], [1e0, 0], [0, 1]]}");
  EXPECT_EQ(invoke({"unimodular-test", floaty.path()}).code, 2);
}

TEST(PolytopeFile, RoundTripsRandomFiles) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<std::int64_t> any(std::numeric_limits<std::int64_t>::min(),
                                                  std::numeric_limits<std::int64_t>::max());
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    PolytopeFile f;
    f.dim = n;
    f.vertices = testing::random_points(rng, n, 6, 1000);
    if (trial % 3 == 0) f.vertices.front() = geometry::LatticePoint(std::vector<std::int64_t>(n, any(rng)));
    if (trial % 2 == 0) f.name = "p" + std::to_string(trial) + " \"quoted\" ∆";
    const std::string text = serialize(f);
    const PolytopeFile back = parse_polytope_file(text);
    ASSERT_EQ(back, f);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(CoverFile, RoundTrips) {
  auto search = unimodular::find_unimodular_triangulation(
      geometry::LatticePolytope(fixtures::cube_points(3)), 2);
  ASSERT_TRUE(search.cover.has_value());
  CoverFile f = to_cover_file(*search.cover);
  EXPECT_EQ(parse_cover_file(serialize(f)), f);
  EXPECT_TRUE(is_cover_document(serialize(f)));
  EXPECT_FALSE(is_cover_document("{\"dim\": 1, \"vertices\": [[0]]}"));
}

TEST(ParsePoint, Strict) {
  EXPECT_EQ(parse_point("1, -2,+3", 3), (geometry::LatticePoint{1, -2, 3}));
  EXPECT_THROW(parse_point("1,,2", 3), InputError);
  EXPECT_THROW(parse_point("1.5,2", 2), InputError);
  EXPECT_THROW(parse_point("", 1), InputError);
  EXPECT_THROW(parse_point("99999999999999999999", 1), InputError);
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Cli, HelpAndVersion) {
  std::ostringstream out, err;
  EXPECT_EQ(run({"--version"}, out, err), 0);
  EXPECT_NE(out.str().find(kVersion), std::string::npos);
  std::ostringstream out2, err2;
  EXPECT_EQ(run({"--help"}, out2, err2), 0);
  EXPECT_NE(out2.str().find("idp-check"), std::string::npos);
}

}  // namespace
}  // namespace latticeforge::cli
