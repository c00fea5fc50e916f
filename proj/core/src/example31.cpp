#include "qlp/example31.hpp"

namespace qlp::example31 {

namespace {

struct Entry {
  const char* t[3];
  const char* v;
};

// Diagonal values and the pair block (third coordinate 1).
constexpr Entry kBase[] = {
    {{"a", "a", "a"}, "3/10"},   {{"b", "b", "b"}, "2/5"},
    {{"c", "c", "c"}, "1/2"},

    {{"a", "b", "1"}, "1/10"},   {{"a", "b'", "1"}, "1/5"},
    {{"a'", "b", "1"}, "3/10"},  {{"a'", "b'", "1"}, "2/5"},
    {{"a", "c", "1"}, "1/5"},    {{"a", "c'", "1"}, "1/10"},
    {{"a'", "c", "1"}, "3/10"},  {{"a'", "c'", "1"}, "2/5"},
    {{"b", "c", "1"}, "1/5"},    {{"b", "c'", "1"}, "1/5"},
    {{"b'", "c", "1"}, "3/10"},  {{"b'", "c'", "1"}, "3/10"},
};

// Triple block. Each entry also holds with its last two coordinates
// swapped, except the flawed raw entry which is kept verbatim.
constexpr Entry kTriples[] = {
    {{"a", "b", "c"}, "0"},       {{"a", "b", "c'"}, "1/10"},
    {{"a", "b'", "c"}, "1/5"},    {{"a", "b'", "c'"}, "0"},
    {{"a'", "b", "c"}, "1/5"},    {{"a'", "b", "c'"}, "1/10"},
    {{"a'", "b'", "c"}, "1/10"},  {{"a'", "b'", "c'"}, "3/10"},

    {{"b", "a", "c"}, "1/10"},    {{"b", "a", "c'"}, "0"},
    {{"b'", "a", "c"}, "1/10"},   {{"b'", "a", "c'"}, "1/10"},
    {{"b", "a'", "c"}, "1/10"},   {{"b", "a'", "c'"}, "1/5"},
    {{"b'", "a'", "c"}, "1/5"},   {{"b'", "a'", "c'"}, "1/5"},

    {{"c", "a", "b"}, "1/100"},   {{"c", "a", "b'"}, "19/100"},
    {{"c", "a'", "b"}, "19/100"}, {{"c'", "a", "b"}, "9/100"},
    {{"c'", "a", "b'"}, "1/100"}, {{"c'", "a'", "b"}, "11/100"},
    {{"c'", "a'", "b'"}, "29/100"},
};

constexpr Entry kCorrected = {{"c", "a'", "b'"}, "11/100"};
constexpr Entry kRawFlawed = {{"c", "a'", "c'"}, "11/100"};

}  // namespace

LatticePtr mo3() { return make_mo(3); }

PartialSMap partial(bool raw) {
  auto L = mo3();
  PartialSMap q(L, 3);
  auto tuple_of = [&](const Entry& e) {
    return Tuple{L->require_label(e.t[0]), L->require_label(e.t[1]),
                 L->require_label(e.t[2])};
  };
  for (const Entry& e : kBase) q.set(tuple_of(e), parse_rational(e.v));
  auto add_with_swap = [&](const Entry& e) {
    Tuple t = tuple_of(e);
    Rational v = parse_rational(e.v);
    q.set(t, v);
    std::swap(t[1], t[2]);
    q.set(t, v);
  };
  for (const Entry& e : kTriples) add_with_swap(e);
  if (raw)
    q.set(tuple_of(kRawFlawed), parse_rational(kRawFlawed.v));
  else
    add_with_swap(kCorrected);
  return q;
}

std::vector<Observable> observables(const LatticePtr& L) {
  auto two_valued = [&](const std::string& base) {
    return Observable(L, {{Rational(-1), L->require_label(base + "'")},
                          {Rational(1), L->require_label(base)}});
  };
  return {two_valued("a"), two_valued("b"), two_valued("c")};
}

}  // namespace qlp::example31
