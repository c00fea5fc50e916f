#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qlp/distribution.hpp"
#include "qlp/errors.hpp"
#include "qlp/example31.hpp"
#include "qlp/synth.hpp"

using namespace qlp;

namespace {

SMap example_table() {
  auto c = complete(example31::partial(false));
  REQUIRE(c.status == Completion::Status::complete);
  return *c.table;
}

JointDistribution in_order(const SMap& p, int i, int j, int k) {
  auto xs = example31::observables(p.lattice());
  return JointDistribution(p, {xs[static_cast<std::size_t>(i)],
                               xs[static_cast<std::size_t>(j)],
                               xs[static_cast<std::size_t>(k)]});
}

}  // namespace

TEST_CASE("joint values follow the table through the observables") {
  SMap p = example_table();
  auto L = p.lattice();
  JointDistribution d = in_order(p, 0, 1, 2);

  CHECK(joint(d, {BorelSet::point(1), BorelSet::point(1),
                  BorelSet::point(-1)}) == Rational(1, 10));
  CHECK(joint(d, {BorelSet::point(1), BorelSet::point(-1),
                  BorelSet::point(1)}) == Rational(1, 5));
  CHECK(joint(d, {BorelSet::real_line(), BorelSet::real_line(),
                  BorelSet::real_line()}) == Rational(1));
  CHECK(joint(d, {BorelSet::empty(), BorelSet::real_line(),
                  BorelSet::real_line()}) == Rational(0));
  // A set catching both spectrum points acts like the whole line.
  CHECK(joint(d, {BorelSet::closed(-1, 1), BorelSet::point(1),
                  BorelSet::point(1)}) ==
        p.value(Tuple{L->one(), L->require_label("b"), L->require_label("c")}));
}

TEST_CASE("the distribution function depends on the coordinate order") {
  SMap p = example_table();
  const std::vector<Rational> ones = {1, 1, 1};
  CHECK(F(in_order(p, 0, 1, 2), ones) == Rational(3, 10));
  CHECK(F(in_order(p, 1, 0, 2), ones) == Rational(1, 5));
  CHECK(F(in_order(p, 2, 1, 0), ones) == Rational(29, 100));

  JointDistribution d = in_order(p, 0, 1, 2);
  CHECK(F(d, {2, 2, 2}) == Rational(1));
  CHECK(F(d, {-2, 1, 1}) == Rational(0));
  CHECK(F(d, {1, -2, 2}) == Rational(0));
}

TEST_CASE("marginals ignore the dropped coordinates entirely") {
  SMap p = example_table();
  JointDistribution d = in_order(p, 0, 1, 2);
  auto L = p.lattice();

  CHECK(marginal_F(d, {0, 0, 0}, {0, 1, 2}) == Rational(1));
  CHECK(marginal_F(d, {1000, 1, 1}, {0}) == marginal_F(d, {-1000, 1, 1}, {0}));
  CHECK(marginal_F(d, {0, 1, 1}, {0}) ==
        p.value(Tuple{L->one(), L->require_label("b'"),
                      L->require_label("c'")}));
  // Dropping down to one live coordinate reads off that margin.
  CHECK(marginal_F(d, {1, 0, 0}, {1, 2}) ==
        p.value(Tuple{L->require_label("a'"), L->one(), L->one()}));
}

TEST_CASE("the two-sided marginal over the shared coordinate is symmetric") {
  SMap p = example_table();
  JointDistribution d123 = in_order(p, 0, 1, 2);
  JointDistribution d132 = in_order(p, 0, 2, 1);
  auto xs = example31::observables(p.lattice());

  for (const Rational& r2 : evaluation_grid(xs[1]))
    for (const Rational& r3 : evaluation_grid(xs[2]))
      CHECK(marginal_F(d123, {0, r2, r3}, {0}) ==
            marginal_F(d132, {0, r3, r2}, {0}));
}

TEST_CASE("the distribution-function laws hold on the example") {
  SMap p = example_table();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (i == j || j == k || i == k) continue;
        Report r = check_F_properties(in_order(p, i, j, k));
        CAPTURE(i);
        CAPTURE(j);
        CAPTURE(k);
        CHECK(r.ok());
      }
}

TEST_CASE("the example system is non-commutative with explicit witnesses") {
  SMap p = example_table();
  auto L = p.lattice();
  JointDistribution d = in_order(p, 0, 1, 2);

  auto cr = check_commutativity(d);
  CHECK_FALSE(cr.commutative);
  CHECK(cr.violations.size() == 32);

  const Tuple abc = {L->require_label("a'"), L->require_label("b'"),
                     L->require_label("c'")};
  const Tuple bac = {L->require_label("b'"), L->require_label("a'"),
                     L->require_label("c'")};
  bool found = false;
  for (const auto& v : cr.violations) {
    CHECK(v.value != v.permuted_value);
    if (v.tuple == abc && v.permuted == bac) {
      found = true;
      CHECK(v.value == Rational(3, 10));
      CHECK(v.permuted_value == Rational(1, 5));
    }
  }
  CHECK(found);
}

TEST_CASE("repeating an observable forces commutativity in its slots") {
  SMap p = example_table();
  auto xs = example31::observables(p.lattice());
  Observable y = compose({{-1, -1}, {1, 1}}, xs[0]);

  JointDistribution d(p, {xs[0], y, xs[1]});
  CHECK(check_commutativity(d).commutative);
  CHECK(check_F_properties(d).ok());
}

TEST_CASE("one-dimensional systems are trivially commutative") {
  auto L = example31::mo3();
  SMap p = example_table();
  State nu = derived_state(p);
  SMap p1(L, 1, nu.values());
  REQUIRE(validate(p1).ok());

  JointDistribution d(p1, {example31::observables(L)[0]});
  CHECK(check_commutativity(d).commutative);
  CHECK(check_F_properties(d).ok());
  CHECK(F(d, {1}) == Rational(7, 10));
  CHECK(marginal_F(d, {0}, {0}) == Rational(1));
}

TEST_CASE("boolean systems commute") {
  auto B = make_boolean(2);
  std::mt19937_64 rng(11);
  ConstraintSet cs;
  cs.diagonal = testing::random_atomic_state(B, rng);
  auto r = synthesize(B, 2, cs);
  REQUIRE(r.feasible);

  const auto& atoms = B->atoms();
  JointDistribution d(*r.witness, {testing::two_valued(B, atoms[0]),
                                   testing::two_valued(B, atoms[1])});
  CHECK(check_commutativity(d).commutative);
  CHECK(check_F_properties(d).ok());
}

TEST_CASE("the classical model reproduces the system exactly") {
  SMap p = example_table();
  JointDistribution d = in_order(p, 0, 1, 2);
  ClassicalModel m = classical_model(d);

  REQUIRE(m.outcomes().size() == 8);
  REQUIRE(m.masses().size() == 8);
  CHECK(m.outcomes().front() == std::vector<Rational>{-1, -1, -1});
  CHECK(m.outcomes().back() == std::vector<Rational>{1, 1, 1});
  CHECK(m.masses().front() == Rational(3, 10));

  std::vector<std::size_t> all(8);
  for (std::size_t i = 0; i < 8; ++i) all[i] = i;
  CHECK(m.P(all) == Rational(1));
  CHECK(m.P({0, 0, 0}) == Rational(3, 10));
  CHECK(m.P({}) == Rational(0));

  CHECK(m.coordinate_below(0, 1) == Rational(7, 10));
  CHECK(m.coordinate_below(1, 1) == Rational(3, 5));
  CHECK(m.coordinate_below(2, 1) == Rational(1, 2));
  CHECK(m.coordinate_below(0, -1) == Rational(0));
  CHECK(m.coordinate_below(0, 2) == Rational(1));

  CHECK(m.F({1, 1, 1}) == Rational(3, 10));
  CHECK(m.verification().ok());

  // Full grid agreement with the lattice-side distribution function.
  auto xs = example31::observables(p.lattice());
  for (const Rational& r1 : evaluation_grid(xs[0]))
    for (const Rational& r2 : evaluation_grid(xs[1]))
      for (const Rational& r3 : evaluation_grid(xs[2]))
        CHECK(m.F({r1, r2, r3}) == F(d, {r1, r2, r3}));
}

TEST_CASE("an invalid table cannot be dressed up as a probability space") {
  auto L = example31::mo3();
  std::vector<Rational> bad(static_cast<std::size_t>(L->size()), 1);
  SMap p1(L, 1, bad);

  JointDistribution d(p1, {example31::observables(L)[0]});
  CHECK_THROWS_WITH_AS(classical_model(d),
                       doctest::Contains("total mass"), ModelError);
}
