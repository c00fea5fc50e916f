#include "qlp/smap.hpp"

#include <algorithm>

#include "qlp/errors.hpp"

namespace qlp {

std::size_t tuple_count(int lattice_size, int arity) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(lattice_size);
  return n;
}

std::size_t tuple_index(int lattice_size, const Tuple& t) {
  std::size_t idx = 0;
  for (Element e : t) idx = idx * static_cast<std::size_t>(lattice_size) + e;
  return idx;
}

Tuple tuple_at(int lattice_size, int arity, std::size_t index) {
  Tuple t(arity);
  for (int i = arity - 1; i >= 0; --i) {
    t[i] = static_cast<Element>(index % lattice_size);
    index /= lattice_size;
  }
  return t;
}

std::string tuple_label(const Lattice& L, const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += L.label(t[i]);
  }
  return s + ")";
}

SMap::SMap(LatticePtr lattice, int arity, std::vector<Rational> table)
    : lattice_(std::move(lattice)), arity_(arity), table_(std::move(table)) {
  if (!lattice_) throw StructuralError("s-map without a lattice");
  if (arity_ < 1) throw StructuralError("s-map arity must be positive");
  if (table_.size() != tuple_count(lattice_->size(), arity_))
    throw StructuralError("s-map table has " + std::to_string(table_.size()) +
                          " cells, expected " +
                          std::to_string(tuple_count(lattice_->size(), arity_)));
}

const Rational& SMap::value(const Tuple& t) const {
  if (static_cast<int>(t.size()) != arity_)
    throw StructuralError("tuple arity mismatch");
  for (Element e : t)
    if (e < 0 || e >= lattice_->size())
      throw StructuralError("tuple element out of range");
  return table_[tuple_index(lattice_->size(), t)];
}

PartialSMap::PartialSMap(LatticePtr lattice, int arity)
    : lattice_(std::move(lattice)), arity_(arity) {
  if (!lattice_) throw StructuralError("partial s-map without a lattice");
  if (arity_ < 1) throw StructuralError("s-map arity must be positive");
}

void PartialSMap::set(const Tuple& t, const Rational& value) {
  if (static_cast<int>(t.size()) != arity_)
    throw StructuralError("entry " + std::to_string(t.size()) +
                          "-tuple in an arity-" + std::to_string(arity_) +
                          " table");
  for (Element e : t)
    if (e < 0 || e >= lattice_->size())
      throw StructuralError("tuple element out of range");
  if (value < 0 || value > 1)
    throw StructuralError("entry value " + fraction_string(value) +
                          " outside [0,1] at " + tuple_label(*lattice_, t));
  auto [it, inserted] = entries_.emplace(t, value);
  if (!inserted && it->second != value)
    throw StructuralError("conflicting duplicate entry at " +
                          tuple_label(*lattice_, t) + ": " +
                          fraction_string(it->second) + " vs " +
                          fraction_string(value));
}

Report validate(const SMap& p) {
  const Lattice& L = *p.lattice();
  const int m = L.size();
  const int n = p.arity();
  Report rep;
  {
    std::string w;
    for (std::size_t idx = 0; idx < p.cell_count() && w.empty(); ++idx)
      if (p.value_at(idx) < 0 || p.value_at(idx) > 1)
        w = "p" + tuple_label(L, tuple_at(m, n, idx)) + " = " +
            fraction_string(p.value_at(idx));
    rep.add("range", w.empty(), w);
  }
  {
    Tuple ones(n, L.one());
    bool ok = p.value(ones) == 1;
    rep.add("s1.unit", ok,
            ok ? "" : "p" + tuple_label(L, ones) + " = " +
                          fraction_string(p.value(ones)));
  }
  {
    std::string w;
    for (std::size_t idx = 0; idx < p.cell_count() && w.empty(); ++idx) {
      Tuple t = tuple_at(m, n, idx);
      for (int i = 0; i + 1 < n && w.empty(); ++i)
        if (is_orthogonal(L, t[i], t[i + 1]) && p.value_at(idx) != 0)
          w = "p" + tuple_label(L, t) + " = " +
              fraction_string(p.value_at(idx)) + " with " + L.label(t[i]) +
              " _|_ " + L.label(t[i + 1]) + " at coordinates (" +
              std::to_string(i + 1) + "," + std::to_string(i + 2) + ")";
    }
    rep.add("s2.orthogonal-zero", w.empty(), w);
  }
  {
    std::string w;
    for (std::size_t idx = 0; idx < p.cell_count() && w.empty(); ++idx) {
      Tuple t = tuple_at(m, n, idx);
      for (int i = 0; i < n && w.empty(); ++i) {
        Element a = t[i];
        for (Element b = 0; b < m && w.empty(); ++b) {
          if (!is_orthogonal(L, a, b)) continue;
          Tuple tb = t, tj = t;
          tb[i] = b;
          tj[i] = L.join(a, b);
          if (p.value(tj) != p.value_at(idx) + p.value(tb))
            w = "coordinate " + std::to_string(i + 1) + ", " + L.label(a) +
                " _|_ " + L.label(b) + ": p" + tuple_label(L, tj) + " = " +
                fraction_string(p.value(tj)) + " but p" + tuple_label(L, t) +
                " + p" + tuple_label(L, tb) + " = " +
                fraction_string(p.value_at(idx) + p.value(tb));
        }
      }
    }
    rep.add("s3.additive", w.empty(), w);
  }
  return rep;
}

State derived_state(const SMap& p) {
  const Lattice& L = *p.lattice();
  std::vector<Rational> values;
  values.reserve(L.size());
  for (Element e = 0; e < L.size(); ++e)
    values.push_back(p.value(Tuple(p.arity(), e)));
  return State(p.lattice(), std::move(values));
}

std::vector<Tuple> tuple_permutations(const Tuple& t) {
  Tuple s = t;
  std::sort(s.begin(), s.end());
  std::vector<Tuple> out;
  do {
    out.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

Tuple tuple_replace(const Tuple& t, int i, int k) {
  if (i < 0 || k < 0 || i >= static_cast<int>(t.size()) ||
      k >= static_cast<int>(t.size()))
    throw std::invalid_argument("tuple_replace index out of range");
  Tuple u = t;
  u[i] = t[k];
  return u;
}

std::vector<Tuple> corollary_class(const Tuple& t, int i) {
  std::vector<Tuple> out;
  for (int k = 0; k < static_cast<int>(t.size()); ++k)
    for (const Tuple& u : tuple_permutations(tuple_replace(t, i, k)))
      out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::string count_suffix(std::size_t shown, std::size_t total) {
  if (total <= shown) return "";
  return " (+" + std::to_string(total - shown) + " more)";
}

}  // namespace

Report check_propositions(const SMap& p) {
  const Lattice& L = *p.lattice();
  const int m = L.size();
  const int n = p.arity();
  Report rep;
  {
    std::string w;
    std::size_t total = 0;
    for (std::size_t idx = 0; idx < p.cell_count(); ++idx) {
      Tuple t = tuple_at(m, n, idx);
      bool orth = false;
      for (int i = 0; i < n && !orth; ++i)
        for (int j = i + 1; j < n && !orth; ++j)
          if (is_orthogonal(L, t[i], t[j])) orth = true;
      if (orth && p.value_at(idx) != 0) {
        ++total;
        if (w.empty())
          w = "p" + tuple_label(L, t) + " = " +
              fraction_string(p.value_at(idx));
      }
    }
    rep.add("prop.1.orthogonal-zero", total == 0, w + count_suffix(1, total));
  }
  State nu = derived_state(p);
  {
    Report sub = check_state(nu);
    std::string w;
    for (const auto& it : sub.items)
      if (!it.passed) w = it.name + ": " + it.detail;
    rep.add("prop.2.derived-state", sub.ok(), w);
  }
  {
    std::string w;
    std::size_t total = 0;
    for (std::size_t idx = 0; idx < p.cell_count(); ++idx) {
      Tuple t = tuple_at(m, n, idx);
      for (int i = 0; i < n; ++i)
        if (p.value_at(idx) > nu.value(t[i])) {
          ++total;
          if (w.empty())
            w = "p" + tuple_label(L, t) + " = " +
                fraction_string(p.value_at(idx)) + " > nu(" + L.label(t[i]) +
                ") = " + fraction_string(nu.value(t[i]));
        }
    }
    rep.add("prop.3.state-bound", total == 0, w + count_suffix(1, total));
  }
  {
    std::string w;
    std::size_t total = 0;
    for (std::size_t idx = 0; idx < p.cell_count(); ++idx) {
      Tuple t = tuple_at(m, n, idx);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (!is_compatible(L, t[i], t[j])) continue;
          Tuple u = t;
          u[i] = u[j] = L.meet(t[i], t[j]);
          if (p.value(u) != p.value_at(idx)) {
            ++total;
            if (w.empty())
              w = "p" + tuple_label(L, t) + " = " +
                  fraction_string(p.value_at(idx)) + " but p" +
                  tuple_label(L, u) + " = " + fraction_string(p.value(u));
          }
        }
    }
    rep.add("prop.4.meet-collapse", total == 0, w + count_suffix(1, total));
  }
  {
    std::string w;
    std::size_t total = 0;
    for (std::size_t idx = 0; idx < p.cell_count(); ++idx) {
      Tuple t = tuple_at(m, n, idx);
      // Full permutation invariance once the tuple carries 1, a repeated
      // element, or a compatible pair.
      bool invariant = false;
      for (int i = 0; i < n && !invariant; ++i) {
        if (t[i] == L.one()) invariant = true;
        for (int j = i + 1; j < n && !invariant; ++j)
          if (t[i] == t[j] || is_compatible(L, t[i], t[j])) invariant = true;
      }
      if (invariant)
        for (const Tuple& u : tuple_permutations(t))
          if (p.value(u) != p.value_at(idx)) {
            ++total;
            if (w.empty())
              w = "p" + tuple_label(L, t) + " = " +
                  fraction_string(p.value_at(idx)) + " but p" +
                  tuple_label(L, u) + " = " + fraction_string(p.value(u));
          }
      // Replacement classes are sound only for a coordinate holding 1 or a
      // value duplicated elsewhere; a merely compatible coordinate may not
      // be replaced (p(0,a,a) = 0 while p(a,a,a) = nu(a)).
      for (int i = 0; i < n; ++i) {
        bool replaceable = t[i] == L.one();
        for (int j = 0; j < n && !replaceable; ++j)
          if (j != i && t[j] == t[i]) replaceable = true;
        if (!replaceable) continue;
        for (const Tuple& u : corollary_class(t, i))
          if (p.value(u) != p.value_at(idx)) {
            ++total;
            if (w.empty())
              w = "p" + tuple_label(L, t) + " = " +
                  fraction_string(p.value_at(idx)) + " but p" +
                  tuple_label(L, u) + " = " + fraction_string(p.value(u)) +
                  " (class of coordinate " + std::to_string(i + 1) + ")";
          }
      }
    }
    rep.add("prop.5.permutation-class", total == 0, w + count_suffix(1, total));
  }
  return rep;
}

MarginalConsistency marginal_consistency(const SMap& pn, const SMap& pm) {
  if (pm.arity() != pn.arity() + 1)
    throw std::invalid_argument("marginal_consistency needs arities n, n+1");
  if (pn.lattice() != pm.lattice() &&
      !pn.lattice()->same_structure(*pm.lattice()))
    throw std::invalid_argument("s-maps live on different lattices");
  const Lattice& L = *pn.lattice();
  const int m = L.size();
  const int n = pn.arity();

  MarginalConsistency out;
  std::vector<Rational> slice;
  slice.reserve(pn.cell_count());
  for (std::size_t idx = 0; idx < pn.cell_count(); ++idx) {
    Tuple t = tuple_at(m, n, idx);
    t.push_back(L.one());
    slice.push_back(pm.value(t));
    t.pop_back();
    if (slice.back() != pn.value_at(idx)) out.violations.push_back(t);
  }
  out.consistent = out.violations.empty();
  out.slice_validation = validate(SMap(pn.lattice(), n, std::move(slice)));
  return out;
}

}  // namespace qlp
