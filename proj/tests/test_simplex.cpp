#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qlp/errors.hpp"
#include "qlp/simplex.hpp"

using namespace qlp;

namespace {

LinRow row(std::vector<std::pair<int, Rational>> terms, Rel rel, Rational rhs,
           std::string tag) {
  LinRow r;
  r.terms = std::move(terms);
  r.rel = rel;
  r.rhs = std::move(rhs);
  r.tag = std::move(tag);
  return r;
}

Rational combined_rhs(const LinearProgram& lp, const FarkasCertificate& c) {
  Rational s = 0;
  for (const auto& [idx, mult] : c.multipliers) s += mult * lp.rows[idx].rhs;
  return s;
}

}  // namespace

TEST_CASE("a one-line program is solved exactly") {
  LinearProgram lp;
  lp.vars = 2;
  lp.rows.push_back(row({{0, 1}, {1, 1}}, Rel::eq, 1, "sum"));

  LpSolver solver(lp);
  REQUIRE(solver.feasible());
  const auto& x = solver.point();
  REQUIRE(x.size() == 2);
  CHECK(x[0] + x[1] == Rational(1));
  CHECK(x[0] >= 0);
  CHECK(x[1] >= 0);

  auto best = solver.maximize({3, 1});
  CHECK(best.value == Rational(3));
  CHECK(best.point == std::vector<Rational>{1, 0});

  auto other = solver.maximize({1, 3});
  CHECK(other.value == Rational(3));
  CHECK(other.point == std::vector<Rational>{0, 1});
}

TEST_CASE("contradictory equalities produce a checkable certificate") {
  LinearProgram lp;
  lp.vars = 2;
  lp.rows.push_back(row({{0, 1}, {1, 1}}, Rel::eq, 1, "first"));
  lp.rows.push_back(row({{0, 1}, {1, 1}}, Rel::eq, 2, "second"));

  LpSolver solver(lp);
  REQUIRE_FALSE(solver.feasible());
  const auto& cert = solver.certificate();
  CHECK_FALSE(cert.multipliers.empty());
  CHECK(verify_farkas(lp, cert));
  CHECK(combined_rhs(lp, cert) > 0);

  CHECK_THROWS_AS(solver.maximize({1, 0}), ModelError);
}

TEST_CASE("interval gaps are certified with sign-correct multipliers") {
  LinearProgram lp;
  lp.vars = 1;
  lp.rows.push_back(row({{0, 1}}, Rel::le, 1, "cap"));
  lp.rows.push_back(row({{0, 1}}, Rel::ge, 2, "floor"));

  LpSolver solver(lp);
  REQUIRE_FALSE(solver.feasible());
  const auto& cert = solver.certificate();
  REQUIRE(verify_farkas(lp, cert));
  for (const auto& [idx, mult] : cert.multipliers) {
    if (lp.rows[idx].rel == Rel::le) CHECK(mult <= 0);
    if (lp.rows[idx].rel == Rel::ge) CHECK(mult >= 0);
    CHECK(mult != 0);
  }
}

TEST_CASE("tampering breaks verification") {
  LinearProgram lp;
  lp.vars = 1;
  lp.rows.push_back(row({{0, 1}}, Rel::le, 1, "cap"));
  lp.rows.push_back(row({{0, 1}}, Rel::ge, 2, "floor"));

  LpSolver solver(lp);
  REQUIRE_FALSE(solver.feasible());

  FarkasCertificate bad = solver.certificate();
  REQUIRE_FALSE(bad.multipliers.empty());
  bad.multipliers[0].second = -bad.multipliers[0].second;
  CHECK_FALSE(verify_farkas(lp, bad));

  FarkasCertificate empty;
  CHECK_FALSE(verify_farkas(lp, empty));

  // A certificate whose combination still has a positive variable
  // coefficient proves nothing.
  FarkasCertificate loose;
  loose.multipliers = {{1, Rational(1)}};
  CHECK_FALSE(verify_farkas(lp, loose));
}

TEST_CASE("unbounded objectives are reported, not looped on") {
  LinearProgram lp;
  lp.vars = 2;
  lp.rows.push_back(row({{0, 1}}, Rel::ge, 1, "floor"));

  LpSolver solver(lp);
  REQUIRE(solver.feasible());
  CHECK_THROWS_AS(solver.maximize({1, 0}), std::logic_error);
  CHECK_THROWS_AS(solver.maximize({0, 1}), std::logic_error);

  // Bounded directions still work on the same warm solver.
  auto down = solver.maximize({-1, -1});
  CHECK(down.value == Rational(-1));
  CHECK(down.point[0] == Rational(1));
  CHECK(down.point[1] == Rational(0));
}

TEST_CASE("many objectives over one region stay consistent") {
  // A pentagon-ish region: x + y <= 4, x <= 3, y <= 3.
  LinearProgram lp;
  lp.vars = 2;
  lp.rows.push_back(row({{0, 1}, {1, 1}}, Rel::le, 4, "diag"));
  lp.rows.push_back(row({{0, 1}}, Rel::le, 3, "x-cap"));
  lp.rows.push_back(row({{1, 1}}, Rel::le, 3, "y-cap"));

  LpSolver solver(lp);
  REQUIRE(solver.feasible());

  struct Probe {
    std::vector<Rational> objective;
    Rational expect;
  };
  const std::vector<Probe> probes = {
      {{1, 0}, 3},  {{0, 1}, 3},   {{1, 1}, 4},
      {{2, 1}, 7},  {{1, 2}, 7},   {{-1, 0}, 0},
      {{0, -1}, 0}, {{-1, -1}, 0}, {{5, 5}, 20},
  };
  for (const auto& p : probes) {
    auto opt = solver.maximize(p.objective);
    CHECK(opt.value == p.expect);
    Rational at = 0;
    for (int v = 0; v < lp.vars; ++v) at += p.objective[v] * opt.point[v];
    CHECK(at == opt.value);
    CHECK(opt.point[0] >= 0);
    CHECK(opt.point[1] >= 0);
    CHECK(opt.point[0] + opt.point[1] <= Rational(4));
  }
}

TEST_CASE("fractional data stays exact") {
  LinearProgram lp;
  lp.vars = 3;
  lp.rows.push_back(row({{0, Rational(1, 3)}, {1, Rational(1, 7)}, {2, 1}},
                        Rel::eq, Rational(22, 21), "mix"));
  lp.rows.push_back(row({{0, 1}, {1, -1}}, Rel::eq, Rational(2, 5), "skew"));

  LpSolver solver(lp);
  REQUIRE(solver.feasible());
  const auto& x = solver.point();
  CHECK(Rational(1, 3) * x[0] + Rational(1, 7) * x[1] + x[2] ==
        Rational(22, 21));
  CHECK(x[0] - x[1] == Rational(2, 5));

  auto best = solver.maximize({0, 0, 1});
  // Push everything into z: smallest x keeps x - y = 2/5 with y = 0.
  CHECK(best.value == Rational(22, 21) - Rational(1, 3) * Rational(2, 5));
}

TEST_CASE("redundant and zero rows do not confuse the solver") {
  LinearProgram lp;
  lp.vars = 2;
  lp.rows.push_back(row({{0, 1}, {1, 1}}, Rel::eq, 1, "sum"));
  lp.rows.push_back(row({{0, 2}, {1, 2}}, Rel::eq, 2, "sum-doubled"));
  lp.rows.push_back(row({}, Rel::eq, 0, "empty"));
  lp.rows.push_back(row({{0, 0}}, Rel::le, 0, "zero-coeff"));

  LpSolver solver(lp);
  REQUIRE(solver.feasible());
  CHECK(solver.point()[0] + solver.point()[1] == Rational(1));

  // An empty row with nonzero rhs is already a contradiction.
  lp.rows.push_back(row({}, Rel::ge, 1, "impossible"));
  LpSolver second(lp);
  REQUIRE_FALSE(second.feasible());
  CHECK(verify_farkas(lp, second.certificate()));
}
