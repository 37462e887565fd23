// End-to-end acceptance run: one PASS/FAIL line per criterion, with timing
// against its budget. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latticeforge/latticeforge.hpp"
#include "support/oracles.hpp"

namespace {

using namespace latticeforge;
using geometry::Coord;
using geometry::LatticePoint;
using geometry::LatticePolytope;
using geometry::LatticeSimplex;

struct Verdict {
  bool ok = true;
  std::string detail;
};

// Failed checks append a note; the first few are kept for the report.
class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    ++checks_;
    if (cond) return;
    ok_ = false;
    if (++failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  std::size_t checks() const { return checks_; }
  Verdict verdict(const std::string& summary) const {
    return {ok_, ok_ ? summary : summary + "; " + std::to_string(failures_) + " failure(s): " + notes_};
  }

 private:
  bool ok_ = true;
  std::size_t checks_ = 0, failures_ = 0;
  std::string notes_;
};

std::string show(const LatticePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

// Shared tally of every decomposition produced by the runs below.
struct DecompositionTally {
  std::size_t total = 0;
  std::size_t bad = 0;
  std::string first_bad;

  void record(const unimodular::Decomposition& d) {
    ++total;
    Coord sum = 0;
    bool nonneg = true;
    for (const auto& w : d.weights) {
      nonneg = nonneg && w.weight >= 0;
      sum += w.weight;
    }
    const bool ok = nonneg && sum == d.h && geometry::is_affinely_independent(d.support());
    if (!ok && bad++ == 0) first_bad = show(d.point) + " at h=" + std::to_string(d.h);
  }
};

DecompositionTally tally;

bool recombines(const unimodular::Decomposition& d) {
  LatticePoint s = LatticePoint::zero(d.point.dim());
  for (const auto& p : d.parts) s = testing::add_points(s, p);
  LatticePoint w = LatticePoint::zero(d.point.dim());
  for (const auto& v : d.weights) w = testing::add_points(w, v.vertex.scaled(v.weight));
  return d.parts.size() == static_cast<std::size_t>(d.h) && s == d.point && w == d.point;
}

Verdict a1_fixture() {
  Checker c;
  const LatticeSimplex s(fixtures::a1_points());
  const std::vector<LatticePoint> expected{{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 0}, {1, 0, 0}};
  c.expect(geometry::lattice_points(LatticePolytope::hull(s)) == expected, "lattice points");
  const auto index = unimodular::lattice_index(s);
  c.expect(index.value && *index.value == 2, "lattice index");
  const auto h = linalg::hermite_normal_form(s.difference_matrix()).h;
  c.expect(h(0, 0) == 1 && h(1, 1) == 1 && h(2, 2) == 2, "HNF diagonal");
  return c.verdict("lattice points {0,e1,e2,e3,2e3}, index 2, HNF diagonal (1,1,2)");
}

Verdict a2_fixture() {
  Checker c;
  const LatticeSimplex s(fixtures::a2_points());
  auto verts = fixtures::a2_points();
  std::sort(verts.begin(), verts.end());
  c.expect(geometry::lattice_points(LatticePolytope::hull(s)) == verts, "lattice points");
  const auto index = unimodular::lattice_index(s);
  c.expect(index.value && *index.value == 2, "lattice index");
  c.expect(!unimodular::is_unimodular(s), "unimodularity verdict");
  return c.verdict("lattice points are exactly the 4 vertices, index 2, not unimodular");
}

Verdict a2_counterexample() {
  Checker c;
  const LatticePolytope p(fixtures::a2_points());
  const sumset::IdpReport r = sumset::idp_check(p, 2);
  c.expect(!r.holds, "idp_check(A2, 2) holds");
  c.expect(r.witnesses.contains({1, 1, 1}), "(1,1,1) not a witness");
  // Exhaustive over all 2-multisets of the four lattice points.
  const auto lattice = geometry::lattice_points(p);
  std::size_t multisets = 0;
  bool found = false;
  testing::for_each_multiset(lattice.size(), 2, [&](const std::vector<std::size_t>& idx) {
    ++multisets;
    found = found || testing::add_points(lattice[idx[0]], lattice[idx[1]]) == LatticePoint{1, 1, 1};
  });
  c.expect(multisets == 10 && !found, "oracle found a decomposition of (1,1,1)");
  c.expect(geometry::contains(geometry::dilate(p, 2), LatticePoint{1, 1, 1}), "(1,1,1) not in 2P");
  return c.verdict("h=2 fails with witness (1,1,1); none of the 10 2-multisets sums to it");
}

Verdict unimodular_simplices() {
  Checker c;
  std::mt19937_64 rng(2024);
  std::size_t simplices = 0, points = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int k = 0; k < 40; ++k, ++simplices) {
      const auto verts = testing::random_unimodular_simplex(rng, n, 2);
      const LatticeSimplex s(verts);
      c.expect(unimodular::is_unimodular(s), "generator produced a non-unimodular simplex");
      for (Coord h = 1; h <= 4; ++h) {
        const auto sums = testing::multiset_sums(verts, static_cast<std::size_t>(h));
        const auto dilate = geometry::lattice_points(geometry::dilate(LatticePolytope::hull(s), h));
        c.expect(std::vector<LatticePoint>(sums.begin(), sums.end()) == dilate,
                 "hA != (h simplex) lattice points, n=" + std::to_string(n));
        for (const auto& p : dilate) {
          const auto d = unimodular::decompose_in_simplex(s, p, h);
          c.expect(recombines(d), "recombination of " + show(p));
          tally.record(d);
          ++points;
        }
      }
    }
  }
  c.expect(simplices >= 100, "fewer than 100 simplices");
  return c.verdict(std::to_string(simplices) + " simplices (dims 2-4), h<=4, " +
                   std::to_string(points) + " points decomposed exactly");
}

Verdict certificates_agree_with_oracle() {
  Checker c;
  std::vector<std::pair<std::string, LatticePolytope>> cases;
  for (std::size_t n = 1; n <= 4; ++n)
    cases.emplace_back("std-simplex-" + std::to_string(n),
                       LatticePolytope(fixtures::standard_simplex_points(n)));
  cases.emplace_back("square", LatticePolytope(fixtures::cube_points(2)));
  cases.emplace_back("cube", LatticePolytope(fixtures::cube_points(3)));

  std::size_t cube_cells = 0;
  for (const auto& [name, p] : cases) {
    const auto search = unimodular::find_unimodular_triangulation(p, 8);
    c.expect(search.cover.has_value(), name + ": no certified cover");
    if (!search.cover) continue;
    c.expect(unimodular::verify_cover(*search.cover) == unimodular::CertStatus::kCertified,
             name + ": re-verification");
    for (const auto& r : sumset::idp_scan(p, 4))
      c.expect(r.holds, name + ": oracle fails at h=" + std::to_string(r.h));
    for (Coord h = 1; h <= 4; ++h)
      for (const auto& x : geometry::lattice_points(geometry::dilate(p, h))) {
        const auto d = unimodular::decompose(p, *search.cover, x, h);
        c.expect(recombines(d), name + ": recombination of " + show(x));
        tally.record(d);
      }
    if (name == "cube") {
      cube_cells = search.cover->cells.size();
      c.expect(cube_cells == 6, "cube has " + std::to_string(cube_cells) + " cells");
      for (const auto& cell : search.cover->cells)
        c.expect(cell.normalized_volume() == 1, "cube cell of volume != 1");
    }
  }
  return c.verdict("6 polytopes certified, idp_scan(.,4) all hold, cube: " +
                   std::to_string(cube_cells) + " cells of volume 1");
}

Verdict decomposition_support() {
  Checker c;
  c.expect(tally.total > 0, "no decompositions recorded");
  c.expect(tally.bad == 0, "first bad: " + tally.first_bad);
  return c.verdict(std::to_string(tally.total) +
                   " decompositions: affinely independent support, weights >= 0 summing to h");
}

Verdict sumset_inclusion() {
  Checker c;
  std::mt19937_64 rng(7);
  std::size_t polytopes = 0, comparisons = 0;
  while (polytopes < 240) {
    const std::size_t n = 1 + polytopes % 3;
    const LatticePolytope p(testing::random_points(rng, n, 6, 3));
    const auto lattice = geometry::lattice_points(p);
    ++polytopes;
    for (Coord h = 1; h <= 3; ++h) {
      const auto dilate = geometry::dilate(p, h);
      const auto inside = geometry::lattice_points(dilate);
      const sumset::PointSet inside_set(n, inside);
      for (const auto& x : testing::multiset_sums(lattice, static_cast<std::size_t>(h))) {
        ++comparisons;
        c.expect(inside_set.contains(x) && geometry::contains(dilate, x),
                 "sum " + show(x) + " outside the dilate");
      }
      // The library's own check raises on a violation.
      c.expect(sumset::idp_check(p, h).sumset_size <= inside.size(), "library sumset larger than dilate");
    }
  }
  return c.verdict(std::to_string(polytopes) + " random polytopes (dim<=3, coords in [-3,3]), h<=3, " +
                   std::to_string(comparisons) + " sums, 0 outside the dilate");
}

std::string ell_summary;

Verdict ell_probe() {
  Checker c;
  const auto report = unimodular::find_ell(LatticePolytope(fixtures::a2_points()), 4, 3, 64, 0);
  c.expect(report.per_ell.size() == 4, "row count");
  if (!report.per_ell.empty()) {
    const auto& first = report.per_ell.front();
    c.expect(!first.certified, "A2 itself certified");
    c.expect(first.idp.size() == 3 && !first.idp[1].holds && first.idp[1].witnesses.contains({1, 1, 1}),
             "l=1 row does not record the h=2 failure at (1,1,1)");
  }
  for (const auto& row : report.per_ell) {
    c.expect(row.agrees(), "l=" + std::to_string(row.ell) + " certificate and oracle disagree");
    if (row.certified) c.expect(row.idp_all_hold(), "certified l with failing oracle");
  }
  c.expect(report.consistent(), "report inconsistent");
  std::ostringstream s;
  s << "rows:";
  for (const auto& row : report.per_ell)
    s << " l=" << row.ell << (row.certified ? "[cert]" : row.proven_none ? "[none]" : "[-]");
  s << "; smallest certified l = " << (report.ell ? std::to_string(*report.ell) : "none within cap");
  ell_summary = s.str();
  return c.verdict(ell_summary);
}

struct Criterion {
  const char* name;
  double budget_ms;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"A1 fixture", 1'000, a1_fixture},
      {"A2 fixture", 1'000, a2_fixture},
      {"A2 counterexample at h=2", 1'000, a2_counterexample},
      {"unimodular simplices: hA = lattice points of the dilate", 60'000, unimodular_simplices},
      {"certified covers agree with the sumset oracle", 30'000, certificates_agree_with_oracle},
      {"decompositions have affinely independent support", 0, decomposition_support},
      {"sumset inclusion on random polytopes", 120'000, sumset_inclusion},
      {"dilation probe on A2", 300'000, ell_probe},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = cr.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = cr.budget_ms <= 0 || ms <= cr.budget_ms;
    const bool pass = v.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("[%s] %zu. %s: %s (%.1f ms", pass ? "PASS" : "FAIL", i + 1, cr.name, v.detail.c_str(), ms);
    if (cr.budget_ms > 0) std::printf(", budget %.0f ms%s", cr.budget_ms, in_time ? "" : " EXCEEDED");
    std::printf(")\n");
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
