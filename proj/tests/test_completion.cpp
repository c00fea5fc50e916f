#include <doctest.h>

#include <map>
#include <string>

#include "qlp/example31.hpp"
#include "qlp/smap.hpp"
#include "qlp/state.hpp"

#include "support/helpers.hpp"

using namespace qlp;
using qlp::testing::Eliminator;

namespace {

// Pours linear facts every valid table satisfies into an eliminator: the
// unit cell is 1, any cell whose tuple carries an orthogonal pair at any two
// positions is 0, and every additivity row over every nonzero orthogonal
// pair, at every coordinate in every context.  Assembled without any of the
// closure machinery, so a unique solution here independently pins the table.
bool pour_axiom_rows(Eliminator& el, const Lattice& L, int n) {
  const int m = L.size();

  std::map<int, Rational> unit;
  unit[static_cast<int>(tuple_index(m, Tuple(n, L.one())))] = 1;
  if (!el.add(std::move(unit), 1)) return false;

  for (std::size_t idx = 0; idx < tuple_count(m, n); ++idx) {
    Tuple t = tuple_at(m, n, idx);
    bool orth = false;
    for (int i = 0; i < n && !orth; ++i)
      for (int j = i + 1; j < n && !orth; ++j)
        if (is_orthogonal(L, t[i], t[j])) orth = true;
    if (orth) {
      std::map<int, Rational> row;
      row[static_cast<int>(idx)] = 1;
      if (!el.add(std::move(row), 0)) return false;
    }
  }

  std::vector<std::pair<Element, Element>> pairs;
  for (Element u = 0; u < m; ++u)
    for (Element v = u; v < m; ++v)
      if (u != L.zero() && v != L.zero() && is_orthogonal(L, u, v))
        pairs.emplace_back(u, v);

  for (int i = 0; i < n; ++i)
    for (std::size_t cidx = 0; cidx < tuple_count(m, n - 1); ++cidx) {
      Tuple context = tuple_at(m, n - 1, cidx);
      Tuple t(context.begin(), context.begin() + i);
      t.push_back(L.zero());
      t.insert(t.end(), context.begin() + i, context.end());
      for (const auto& [u, v] : pairs) {
        std::map<int, Rational> row;
        t[i] = L.join(u, v);
        row[static_cast<int>(tuple_index(m, t))] += 1;
        t[i] = u;
        row[static_cast<int>(tuple_index(m, t))] -= 1;
        t[i] = v;
        row[static_cast<int>(tuple_index(m, t))] -= 1;
        if (!row.empty() && !el.add(std::move(row), 0)) return false;
      }
    }
  return true;
}

bool pour_entries(Eliminator& el, const PartialSMap& q) {
  const int m = q.lattice()->size();
  for (const auto& [t, value] : q.entries()) {
    std::map<int, Rational> row;
    row[static_cast<int>(tuple_index(m, t))] = 1;
    if (!el.add(std::move(row), value)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the example closure matches independent gaussian elimination") {
  PartialSMap part = example31::partial(false);
  Completion c = complete(part);
  REQUIRE(c.status == Completion::Status::complete);
  REQUIRE(c.table.has_value());
  CHECK(c.revalidation.ok());
  CHECK(c.free_tuples.empty());
  CHECK(c.conflict.empty());

  Eliminator el;
  REQUIRE(pour_axiom_rows(el, *part.lattice(), 3));
  REQUIRE(pour_entries(el, part));
  auto solution = el.solve(512);
  REQUIRE(solution.has_value());
  CHECK(*solution == c.table->table());
}

TEST_CASE("the raw listing is inconsistent, by closure and by elimination") {
  PartialSMap raw = example31::partial(true);
  Completion c = complete(raw);
  CHECK(c.status == Completion::Status::inconsistent);
  CHECK(!c.table.has_value());
  CHECK(c.conflict.find("p(c,a',c')") != std::string::npos);
  CHECK(c.conflict.find("first derivation") != std::string::npos);
  CHECK(c.conflict.find("second derivation") != std::string::npos);

  Eliminator el;
  bool ok = pour_axiom_rows(el, *raw.lattice(), 3) && pour_entries(el, raw);
  CHECK(!ok);
  CHECK(!el.consistent());
}

TEST_CASE("processing order does not matter") {
  PartialSMap part = example31::partial(false);
  Completion base = complete(part);
  REQUIRE(base.status == Completion::Status::complete);
  for (std::uint64_t seed : {1u, 7u, 42u, 9001u}) {
    Completion shuffled = complete(part, seed);
    REQUIRE(shuffled.status == Completion::Status::complete);
    CHECK(shuffled.table->table() == base.table->table());
  }
}

TEST_CASE("too little data is reported underdetermined") {
  LatticePtr L = make_mo(3);
  PartialSMap q(L, 2);
  q.set({L->require_label("a"), L->require_label("a")}, Rational(1, 2));
  Completion c = complete(q);
  CHECK(c.status == Completion::Status::underdetermined);
  CHECK(!c.free_tuples.empty());
  CHECK(!c.table.has_value());
}

TEST_CASE("seeds conflicting with the axioms are rejected with a chain") {
  LatticePtr L = make_mo(3);

  SUBCASE("orthogonal pair carrying weight") {
    PartialSMap q(L, 2);
    q.set({L->require_label("a"), L->require_label("a'")}, Rational(1, 2));
    Completion c = complete(q);
    CHECK(c.status == Completion::Status::inconsistent);
    CHECK(c.conflict.find("orthogonal") != std::string::npos);
  }

  SUBCASE("unit cell off one") {
    PartialSMap q(L, 2);
    q.set({L->one(), L->one()}, Rational(1, 2));
    Completion c = complete(q);
    CHECK(c.status == Completion::Status::inconsistent);
  }
}

TEST_CASE("boolean diagonals close to the product table") {
  LatticePtr B = make_boolean(2);
  std::mt19937_64 rng(20260815);
  for (int trial = 0; trial < 5; ++trial) {
    State mu = qlp::testing::random_atomic_state(B, rng);
    PartialSMap q(B, 2);
    for (Element e = 0; e < B->size(); ++e) q.set({e, e}, mu.value(e));
    Completion c = complete(q);
    REQUIRE(c.status == Completion::Status::complete);
    for (std::size_t i = 0; i < c.table->cell_count(); ++i) {
      Tuple t = tuple_at(B->size(), 2, i);
      CHECK(c.table->value_at(i) == mu.value(B->meet(t[0], t[1])));
    }
  }
}
