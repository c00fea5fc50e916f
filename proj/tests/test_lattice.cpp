#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "qlp/errors.hpp"
#include "qlp/lattice.hpp"

using namespace qlp;

namespace {

LatticeData o6() {
  // hexagon: 0 < x < y < 1 and 0 < y' < x' < 1, complements swapped
  LatticeData d;
  d.labels = {"0", "x", "y", "y'", "x'", "1"};
  d.zero = 0;
  d.one = 5;
  d.ortho = {5, 4, 3, 2, 1, 0};
  for (Element e = 0; e < 6; ++e) {
    d.leq.emplace_back(e, e);
    if (e != 0) d.leq.emplace_back(0, e);
    if (e != 5) d.leq.emplace_back(e, 5);
  }
  d.leq.emplace_back(1, 2);
  d.leq.emplace_back(3, 4);
  return d;
}

int mask_of(const Lattice& L, Element e, int k) {
  const std::string& l = L.label(e);
  int mask = 0;
  for (int i = 1; i <= k; ++i)
    if (l.find(std::to_string(i)) != std::string::npos) mask |= 1 << (i - 1);
  return mask;
}

}  // namespace

TEST_CASE("mo:3 structure") {
  LatticePtr L = make_mo(3);
  REQUIRE(L->size() == 8);
  CHECK(L->label(L->zero()) == "0");
  CHECK(L->label(L->one()) == "1");
  CHECK(L->atoms().size() == 6);

  Element a = L->require_label("a"), ap = L->require_label("a'");
  Element b = L->require_label("b"), c = L->require_label("c");
  CHECK(L->ortho(a) == ap);
  CHECK(L->ortho(ap) == a);
  CHECK(L->meet(a, b) == L->zero());
  CHECK(L->join(a, b) == L->one());
  CHECK(L->meet(a, ap) == L->zero());
  CHECK(L->join(a, ap) == L->one());
  CHECK(L->leq(a, L->one()));
  CHECK(!L->leq(a, b));
  CHECK(L->is_atom(a));
  CHECK(!L->is_atom(L->one()));

  CHECK(is_orthogonal(*L, a, ap));
  CHECK(!is_orthogonal(*L, a, b));
  CHECK(is_compatible(*L, a, ap));
  CHECK(!is_compatible(*L, a, b));
  CHECK(!compatibility_witness(*L, a, c).has_value());
  auto w = compatibility_witness(*L, a, ap);
  REQUIRE(w.has_value());
  CHECK(L->join((*w)[0], (*w)[2]) == a);
  CHECK(L->join((*w)[1], (*w)[2]) == ap);

  CHECK(!L->element_by_label("zz").has_value());
  CHECK_THROWS_AS((void)L->require_label("zz"), StructuralError);
}

TEST_CASE("boolean lattices agree with the powerset oracle") {
  for (int k = 1; k <= 4; ++k) {
    LatticePtr L = make_boolean(k);
    const int m = 1 << k;
    REQUIRE(L->size() == m);
    for (Element e = 0; e < m; ++e) {
      const int me = mask_of(*L, e, k);
      CHECK(L->ortho(e) == [&] {
        for (Element f = 0; f < m; ++f)
          if (mask_of(*L, f, k) == ((m - 1) ^ me)) return f;
        return Element(-1);
      }());
      for (Element f = 0; f < m; ++f) {
        const int mf = mask_of(*L, f, k);
        CHECK(mask_of(*L, L->meet(e, f), k) == (me & mf));
        CHECK(mask_of(*L, L->join(e, f), k) == (me | mf));
        CHECK(L->leq(e, f) == ((me & mf) == me));
        CHECK(is_compatible(*L, e, f));
      }
    }
    CHECK(L->atoms().size() == static_cast<std::size_t>(k));
  }
}

TEST_CASE("generator argument validation") {
  CHECK_THROWS_AS((void)make_mo(0), std::invalid_argument);
  CHECK_THROWS_AS((void)make_boolean(0), std::invalid_argument);
  CHECK_THROWS_AS((void)make_boolean(11), std::invalid_argument);
}

TEST_CASE("check_oml verdicts") {
  SUBCASE("valid input round-trips") {
    LatticeData d = make_mo(2)->to_data();
    OmlCheck res = check_oml(d);
    CHECK(res.report.ok());
    REQUIRE(res.lattice);
    CHECK(res.lattice->same_structure(*make_mo(2)));
  }

  SUBCASE("non-involutive orthocomplement fails axiom ii") {
    LatticeData d = make_mo(3)->to_data();
    d.ortho[1] = 4;  // a -> b', but b' -> b
    OmlCheck res = check_oml(d);
    CHECK(!res.lattice);
    for (const auto& it : res.report.items)
      if (it.name == "axiom.ii.involution") {
        CHECK(!it.passed);
        CHECK(!it.detail.empty());
      }
  }

  SUBCASE("self-complement fails axiom iii") {
    LatticeData d = make_mo(3)->to_data();
    d.ortho[1] = 1;
    d.ortho[2] = 2;
    OmlCheck res = check_oml(d);
    CHECK(!res.lattice);
    bool iii_failed = false;
    for (const auto& it : res.report.items)
      if (it.name == "axiom.iii.complement-join" && !it.passed)
        iii_failed = true;
    CHECK(iii_failed);
  }

  SUBCASE("the hexagon fails only orthomodularity") {
    OmlCheck res = check_oml(o6());
    CHECK(!res.lattice);
    for (const auto& it : res.report.items) {
      if (it.name == "axiom.v.orthomodular") {
        CHECK(!it.passed);
        CHECK(it.detail.find("x") != std::string::npos);
      } else {
        CHECK(it.passed);
      }
    }
  }

  SUBCASE("malformed shapes throw") {
    LatticeData d = make_mo(2)->to_data();
    d.ortho.pop_back();
    CHECK_THROWS_AS((void)check_oml(d), StructuralError);

    d = make_mo(2)->to_data();
    d.leq.emplace_back(2, 99);
    CHECK_THROWS_AS((void)check_oml(d), StructuralError);

    d = make_mo(2)->to_data();
    d.labels[1] = d.labels[2];
    CHECK_THROWS_AS((void)check_oml(d), StructuralError);

    d = make_mo(2)->to_data();
    d.zero = -1;
    CHECK_THROWS_AS((void)check_oml(d), StructuralError);
  }
}

TEST_CASE("atom decompositions") {
  LatticePtr L = make_mo(3);
  auto top = atom_decompositions(*L, L->one());
  REQUIRE(top.size() == 3);
  for (const auto& dec : top) {
    REQUIRE(dec.size() == 2);
    CHECK(L->ortho(dec[0]) == dec[1]);
  }
  auto at_a = atom_decompositions(*L, L->require_label("a"));
  REQUIRE(at_a.size() == 1);
  CHECK(at_a[0] == std::vector<Element>{L->require_label("a")});
  auto at_zero = atom_decompositions(*L, L->zero());
  REQUIRE(at_zero.size() == 1);
  CHECK(at_zero[0].empty());

  LatticePtr B = make_boolean(3);
  auto btop = atom_decompositions(*B, B->one());
  REQUIRE(btop.size() == 1);
  CHECK(btop[0].size() == 3);
  // {1,2} splits into singletons one way only
  auto pair = atom_decompositions(*B, B->require_label("{1,2}"));
  REQUIRE(pair.size() == 1);
  CHECK(pair[0].size() == 2);
}

TEST_CASE("same_structure distinguishes") {
  CHECK(!make_mo(3)->same_structure(*make_boolean(3)));
  CHECK(!make_mo(2)->same_structure(*make_mo(3)));
  CHECK(make_boolean(2)->same_structure(*make_boolean(2)));
}
