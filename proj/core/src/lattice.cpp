#include "qlp/lattice.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qlp/errors.hpp"

namespace qlp {

namespace {

using Bits = boost::dynamic_bitset<>;

std::string pair_text(const std::vector<std::string>& labels, Element a,
                      Element b) {
  return "(" + labels[a] + "," + labels[b] + ")";
}

}  // namespace

Element Lattice::check(Element e) const {
  if (e < 0 || e >= size())
    throw std::out_of_range("element index " + std::to_string(e));
  return e;
}

std::optional<Element> Lattice::element_by_label(
    const std::string& label) const {
  for (Element e = 0; e < size(); ++e)
    if (labels_[e] == label) return e;
  return std::nullopt;
}

Element Lattice::require_label(const std::string& label) const {
  if (auto e = element_by_label(label)) return *e;
  throw StructuralError("unknown element label: " + label);
}

LatticeData Lattice::to_data() const {
  LatticeData d;
  d.labels = labels_;
  d.ortho = ortho_;
  d.zero = zero_;
  d.one = one_;
  for (Element a = 0; a < size(); ++a)
    for (Element b = 0; b < size(); ++b)
      if (leq(a, b)) d.leq.emplace_back(a, b);
  return d;
}

bool Lattice::same_structure(const Lattice& other) const {
  return labels_ == other.labels_ && leq_ == other.leq_ &&
         ortho_ == other.ortho_ && zero_ == other.zero_ && one_ == other.one_;
}

struct LatticeBuilder {
  static LatticePtr build(std::vector<std::string> labels,
                          std::vector<bool> leq, std::vector<Element> ortho,
                          std::vector<Element> meet, std::vector<Element> join,
                          Element zero, Element one) {
    auto L = std::make_shared<Lattice>();
    const int m = static_cast<int>(labels.size());
    L->labels_ = std::move(labels);
    L->leq_ = std::move(leq);
    L->ortho_ = std::move(ortho);
    L->meet_ = std::move(meet);
    L->join_ = std::move(join);
    L->zero_ = zero;
    L->one_ = one;
    L->atom_flag_.assign(m, false);
    for (Element e = 0; e < m; ++e) {
      if (e == zero) continue;
      bool atom = true;
      for (Element x = 0; x < m; ++x)
        if (x != e && x != zero &&
            L->leq_[static_cast<std::size_t>(x) * m + e]) {
          atom = false;
          break;
        }
      L->atom_flag_[e] = atom;
    }
    for (Element e = 0; e < m; ++e)
      if (L->atom_flag_[e]) L->atoms_.push_back(e);
    return L;
  }
};

OmlCheck check_oml(const LatticeData& d) {
  OmlCheck out;
  Report& rep = out.report;
  const int m = static_cast<int>(d.labels.size());

  if (m == 0) throw StructuralError("lattice has no elements");
  {
    std::set<std::string> seen;
    for (const auto& l : d.labels)
      if (!seen.insert(l).second)
        throw StructuralError("duplicate element label: " + l);
  }
  if (static_cast<int>(d.ortho.size()) != m)
    throw StructuralError("ortho table size " + std::to_string(d.ortho.size()) +
                          " does not match element count " + std::to_string(m));
  auto in_range = [m](Element e) { return e >= 0 && e < m; };
  if (!in_range(d.zero) || !in_range(d.one))
    throw StructuralError("zero/one index out of range");
  for (Element e : d.ortho)
    if (!in_range(e)) throw StructuralError("ortho index out of range");
  for (auto [a, b] : d.leq)
    if (!in_range(a) || !in_range(b))
      throw StructuralError("leq pair index out of range");

  std::vector<bool> leq(static_cast<std::size_t>(m) * m, false);
  for (auto [a, b] : d.leq) leq[static_cast<std::size_t>(a) * m + b] = true;
  auto le = [&](Element a, Element b) {
    return leq[static_cast<std::size_t>(a) * m + b];
  };

  // down[e] = all x <= e, as a bitset
  std::vector<Bits> down(m, Bits(m));
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b)
      if (le(a, b)) down[b].set(a);

  {
    std::string w;
    for (Element a = 0; a < m && w.empty(); ++a)
      if (!le(a, a)) w = d.labels[a];
    rep.add("order.reflexive", w.empty(), w.empty() ? "" : "missing " + w + " <= " + w,
            CheckKind::structure);
  }
  {
    std::string w;
    for (Element a = 0; a < m && w.empty(); ++a)
      for (Element b = 0; b < m && w.empty(); ++b)
        if (a != b && le(a, b) && le(b, a))
          w = pair_text(d.labels, a, b);
    rep.add("order.antisymmetric", w.empty(), w, CheckKind::structure);
  }
  {
    // a <= b requires down[a] subset of down[b]
    std::string w;
    for (Element a = 0; a < m && w.empty(); ++a)
      for (Element b = 0; b < m && w.empty(); ++b)
        if (le(a, b) && !down[a].is_subset_of(down[b]))
          w = pair_text(d.labels, a, b);
    rep.add("order.transitive", w.empty(), w, CheckKind::structure);
  }
  {
    std::string w;
    for (Element a = 0; a < m && w.empty(); ++a) {
      if (!le(d.zero, a)) w = "0 <= " + d.labels[a] + " missing";
      else if (!le(a, d.one)) w = d.labels[a] + " <= 1 missing";
    }
    rep.add("order.bounded", w.empty(), w, CheckKind::structure);
  }
  if (!rep.ok()) return out;

  // meets and joins: greatest lower / least upper bounds, which must exist
  std::vector<Element> meet(static_cast<std::size_t>(m) * m, -1);
  std::vector<Element> join(static_cast<std::size_t>(m) * m, -1);
  std::vector<Bits> up(m, Bits(m));
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b)
      if (le(a, b)) up[a].set(b);
  {
    std::string w;
    Bits cand(m);
    for (Element a = 0; a < m && w.empty(); ++a)
      for (Element b = a; b < m && w.empty(); ++b) {
        cand = down[a] & down[b];
        Element g = -1;
        for (auto z = cand.find_first(); z != Bits::npos;
             z = cand.find_next(z))
          if (cand.is_subset_of(down[z])) { g = static_cast<Element>(z); break; }
        if (g < 0) { w = "no meet for " + pair_text(d.labels, a, b); break; }
        meet[static_cast<std::size_t>(a) * m + b] = g;
        meet[static_cast<std::size_t>(b) * m + a] = g;

        cand = up[a] & up[b];
        Element s = -1;
        for (auto z = cand.find_first(); z != Bits::npos;
             z = cand.find_next(z))
          if (cand.is_subset_of(up[z])) { s = static_cast<Element>(z); break; }
        if (s < 0) { w = "no join for " + pair_text(d.labels, a, b); break; }
        join[static_cast<std::size_t>(a) * m + b] = s;
        join[static_cast<std::size_t>(b) * m + a] = s;
      }
    rep.add("axiom.i.lattice-operations", w.empty(), w, CheckKind::structure);
    if (!w.empty()) return out;
  }

  auto mt = [&](Element a, Element b) {
    return meet[static_cast<std::size_t>(a) * m + b];
  };
  auto jn = [&](Element a, Element b) {
    return join[static_cast<std::size_t>(a) * m + b];
  };

  {
    std::string w;
    for (Element a = 0; a < m && w.empty(); ++a)
      if (d.ortho[d.ortho[a]] != a)
        w = d.labels[a] + "'' = " + d.labels[d.ortho[d.ortho[a]]];
    rep.add("axiom.ii.involution", w.empty(), w);
  }
  {
    std::string w;
    for (Element a = 0; a < m && w.empty(); ++a)
      if (jn(a, d.ortho[a]) != d.one)
        w = d.labels[a] + " v " + d.labels[d.ortho[a]] + " = " +
            d.labels[jn(a, d.ortho[a])];
    rep.add("axiom.iii.complement-join", w.empty(), w);
  }
  {
    std::string w;
    for (Element a = 0; a < m && w.empty(); ++a)
      for (Element b = 0; b < m && w.empty(); ++b)
        if (le(a, b) && !le(d.ortho[b], d.ortho[a]))
          w = pair_text(d.labels, a, b);
    rep.add("axiom.iv.order-reversing", w.empty(), w);
  }
  {
    std::string w;
    for (Element a = 0; a < m && w.empty(); ++a)
      for (Element b = 0; b < m && w.empty(); ++b)
        if (le(a, b) && jn(a, mt(d.ortho[a], b)) != b)
          w = pair_text(d.labels, a, b);
    rep.add("axiom.v.orthomodular", w.empty(), w);
  }
  if (!rep.ok()) return out;

  auto L = LatticeBuilder::build(d.labels, std::move(leq), d.ortho,
                                 std::move(meet), std::move(join), d.zero,
                                 d.one);
  {
    std::string w;
    for (Element e = 0; e < m && w.empty(); ++e)
      if (atom_decompositions(*L, e).empty()) w = d.labels[e];
    rep.add("atomistic", w.empty(),
            w.empty() ? "" : "no orthogonal atom decomposition for " + w);
    if (!w.empty()) return out;
  }

  out.lattice = L;
  return out;
}

LatticePtr make_mo(int n) {
  if (n < 1) throw std::invalid_argument("make_mo: n must be positive");
  if (n > 500) throw std::invalid_argument("make_mo: n too large");
  const int m = 2 * n + 2;
  LatticeData d;
  d.labels.resize(m);
  d.labels[0] = "0";
  d.labels[m - 1] = "1";
  for (int i = 0; i < n; ++i) {
    std::string base =
        n <= 26 ? std::string(1, static_cast<char>('a' + i))
                : "a" + std::to_string(i + 1);
    d.labels[1 + 2 * i] = base;
    d.labels[2 + 2 * i] = base + "'";
  }
  d.zero = 0;
  d.one = m - 1;
  d.ortho.resize(m);
  d.ortho[0] = m - 1;
  d.ortho[m - 1] = 0;
  for (int i = 0; i < n; ++i) {
    d.ortho[1 + 2 * i] = 2 + 2 * i;
    d.ortho[2 + 2 * i] = 1 + 2 * i;
  }
  for (Element e = 0; e < m; ++e) {
    d.leq.emplace_back(e, e);
    if (e != 0) d.leq.emplace_back(0, e);
    if (e != m - 1) d.leq.emplace_back(e, m - 1);
  }
  auto res = check_oml(d);
  if (!res.lattice)
    throw std::logic_error("make_mo produced an invalid lattice:\n" +
                           res.report.to_text());
  return res.lattice;
}

LatticePtr make_boolean(int k) {
  if (k < 1 || k > 10)
    throw std::invalid_argument("make_boolean: k must be in 1..10");
  const int m = 1 << k;
  LatticeData d;
  d.labels.resize(m);
  for (int mask = 0; mask < m; ++mask) {
    std::string l = "{";
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) {
        if (l.size() > 1) l += ",";
        l += std::to_string(i + 1);
      }
    d.labels[mask] = l + "}";
  }
  d.zero = 0;
  d.one = m - 1;
  d.ortho.resize(m);
  for (int mask = 0; mask < m; ++mask) d.ortho[mask] = (m - 1) ^ mask;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if ((a & b) == a) d.leq.emplace_back(a, b);
  auto res = check_oml(d);
  if (!res.lattice)
    throw std::logic_error("make_boolean produced an invalid lattice:\n" +
                           res.report.to_text());
  return res.lattice;
}

bool is_orthogonal(const Lattice& L, Element a, Element b) {
  return L.leq(a, L.ortho(b));
}

std::optional<std::array<Element, 3>> compatibility_witness(const Lattice& L,
                                                            Element a,
                                                            Element b) {
  const int m = L.size();
  for (Element c = 0; c < m; ++c) {
    if (!L.leq(c, a) || !L.leq(c, b)) continue;
    for (Element a1 = 0; a1 < m; ++a1) {
      if (L.join(a1, c) != a || !is_orthogonal(L, a1, c)) continue;
      for (Element b1 = 0; b1 < m; ++b1) {
        if (L.join(b1, c) != b || !is_orthogonal(L, b1, c)) continue;
        if (is_orthogonal(L, a1, b1))
          return std::array<Element, 3>{a1, b1, c};
      }
    }
  }
  return std::nullopt;
}

bool is_compatible(const Lattice& L, Element a, Element b) {
  bool criterion = L.meet(L.join(a, b), L.join(a, L.ortho(b))) == a;
  if (L.size() <= 16) {
    bool witnessed = compatibility_witness(L, a, b).has_value();
    if (witnessed != criterion)
      throw std::logic_error("compatibility routes disagree for (" +
                             L.label(a) + "," + L.label(b) + ")");
  }
  return criterion;
}

namespace {

void decompose(const Lattice& L, Element e, const std::vector<Element>& below,
               std::size_t start, Element joined, std::vector<Element>& chosen,
               std::vector<std::vector<Element>>& out, bool first_only) {
  if (joined == e) {
    out.push_back(chosen);
    return;
  }
  for (std::size_t i = start; i < below.size(); ++i) {
    Element atom = below[i];
    if (!L.leq(atom, L.ortho(joined))) continue;
    chosen.push_back(atom);
    decompose(L, e, below, i + 1, L.join(joined, atom), chosen, out,
              first_only);
    chosen.pop_back();
    if (first_only && !out.empty()) return;
  }
}

}  // namespace

std::vector<std::vector<Element>> atom_decompositions(const Lattice& L,
                                                      Element e) {
  std::vector<Element> below;
  for (Element atom : L.atoms())
    if (L.leq(atom, e)) below.push_back(atom);
  std::vector<std::vector<Element>> out;
  std::vector<Element> chosen;
  decompose(L, e, below, 0, L.zero(), chosen, out, false);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qlp
