#include "qlp/observable.hpp"

#include <algorithm>
#include <stdexcept>

namespace qlp {

namespace {

using Interval = BorelSet::Interval;

bool lo_before(const Interval& x, const Interval& y) {
  if (!x.lo) return y.lo.has_value();
  if (!y.lo) return false;
  if (*x.lo != *y.lo) return *x.lo < *y.lo;
  return x.lo_closed && !y.lo_closed;
}

}  // namespace

BorelSet::BorelSet(std::vector<Interval> parts) {
  std::vector<Interval> kept;
  for (Interval iv : parts) {
    if (!iv.lo) iv.lo_closed = false;
    if (!iv.hi) iv.hi_closed = false;
    if (iv.lo && iv.hi) {
      if (*iv.lo > *iv.hi)
        throw std::invalid_argument("interval with lo > hi");
      if (*iv.lo == *iv.hi && !(iv.lo_closed && iv.hi_closed)) continue;
    }
    kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(), lo_before);
  for (const Interval& cur : kept) {
    if (parts_.empty()) {
      parts_.push_back(cur);
      continue;
    }
    Interval& last = parts_.back();
    bool overlap;
    if (!last.hi || !cur.lo)
      overlap = true;
    else if (*cur.lo < *last.hi)
      overlap = true;
    else
      overlap = *cur.lo == *last.hi && (last.hi_closed || cur.lo_closed);
    if (!overlap) {
      parts_.push_back(cur);
      continue;
    }
    if (!last.hi) continue;
    if (!cur.hi) {
      last.hi = std::nullopt;
      last.hi_closed = false;
    } else if (*cur.hi > *last.hi ||
               (*cur.hi == *last.hi && cur.hi_closed)) {
      last.hi = cur.hi;
      last.hi_closed = cur.hi_closed;
    }
  }
}

BorelSet BorelSet::empty() { return BorelSet(); }

BorelSet BorelSet::real_line() {
  return BorelSet({Interval{std::nullopt, std::nullopt, false, false}});
}

BorelSet BorelSet::below(const Rational& r) {
  return BorelSet({Interval{std::nullopt, r, false, false}});
}

BorelSet BorelSet::point(const Rational& t) {
  return BorelSet({Interval{t, t, true, true}});
}

BorelSet BorelSet::points(const std::vector<Rational>& ts) {
  std::vector<Interval> parts;
  for (const Rational& t : ts) parts.push_back({t, t, true, true});
  return BorelSet(std::move(parts));
}

BorelSet BorelSet::closed(const Rational& lo, const Rational& hi) {
  return BorelSet({Interval{lo, hi, true, true}});
}

bool BorelSet::contains(const Rational& t) const {
  for (const Interval& iv : parts_) {
    bool above = !iv.lo || *iv.lo < t || (*iv.lo == t && iv.lo_closed);
    bool below_hi = !iv.hi || t < *iv.hi || (t == *iv.hi && iv.hi_closed);
    if (above && below_hi) return true;
  }
  return false;
}

BorelSet BorelSet::unite(const BorelSet& other) const {
  std::vector<Interval> parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  return BorelSet(std::move(parts));
}

bool BorelSet::operator==(const BorelSet& other) const {
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Interval &x = parts_[i], &y = other.parts_[i];
    if (x.lo != y.lo || x.hi != y.hi || x.lo_closed != y.lo_closed ||
        x.hi_closed != y.hi_closed)
      return false;
  }
  return true;
}

Observable::Observable(LatticePtr lattice,
                       std::vector<std::pair<Rational, Element>> points)
    : lattice_(std::move(lattice)) {
  if (!lattice_) throw std::invalid_argument("observable without a lattice");
  if (points.empty())
    throw std::invalid_argument("observable with empty spectrum");
  std::sort(points.begin(), points.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  const Lattice& L = *lattice_;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].first == points[i - 1].first)
      throw std::invalid_argument("duplicate spectrum point " +
                                  fraction_string(points[i].first));
    if (points[i].second == L.zero())
      throw std::invalid_argument("spectrum point " +
                                  fraction_string(points[i].first) +
                                  " mapped to the zero element");
    spectrum_.push_back(points[i].first);
    elements_.push_back(points[i].second);
  }
  Element total = L.zero();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = i + 1; j < elements_.size(); ++j)
      if (!is_orthogonal(L, elements_[i], elements_[j]))
        throw std::invalid_argument("observable elements " +
                                    L.label(elements_[i]) + " and " +
                                    L.label(elements_[j]) +
                                    " are not orthogonal");
    total = L.join(total, elements_[i]);
  }
  if (total != L.one())
    throw std::invalid_argument("observable elements join to " +
                                L.label(total) + ", not 1");
}

Element Observable::apply(const BorelSet& E) const {
  const Lattice& L = *lattice_;
  Element out = L.zero();
  for (std::size_t i = 0; i < spectrum_.size(); ++i)
    if (E.contains(spectrum_[i])) out = L.join(out, elements_[i]);
  return out;
}

std::vector<Element> Observable::range() const {
  const Lattice& L = *lattice_;
  std::vector<Element> out;
  const std::size_t s = elements_.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
    Element e = L.zero();
    for (std::size_t i = 0; i < s; ++i)
      if (mask & (std::size_t{1} << i)) e = L.join(e, elements_[i]);
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Observable compose(const std::vector<std::pair<Rational, Rational>>& g,
                   const Observable& x) {
  const Lattice& L = *x.lattice();
  std::vector<std::pair<Rational, Element>> grouped;
  for (std::size_t i = 0; i < x.spectrum().size(); ++i) {
    const Rational& t = x.spectrum()[i];
    const Rational* image = nullptr;
    for (const auto& [from, to] : g)
      if (from == t) {
        image = &to;
        break;
      }
    if (!image)
      throw std::invalid_argument("function undefined at spectrum point " +
                                  fraction_string(t));
    bool merged = false;
    for (auto& [value, element] : grouped)
      if (value == *image) {
        element = L.join(element, x.element_at(i));
        merged = true;
        break;
      }
    if (!merged) grouped.emplace_back(*image, x.element_at(i));
  }
  return Observable(x.lattice(), std::move(grouped));
}

bool observables_compatible(const Observable& x, const Observable& y) {
  if (x.lattice() != y.lattice() &&
      !x.lattice()->same_structure(*y.lattice()))
    throw std::invalid_argument("observables live on different lattices");
  for (Element a : x.range())
    for (Element b : y.range())
      if (!is_compatible(*x.lattice(), a, b)) return false;
  return true;
}

}  // namespace qlp
