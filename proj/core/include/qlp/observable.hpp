#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qlp/lattice.hpp"
#include "qlp/rational.hpp"

namespace qlp {

// Finite union of rational intervals, kept normalized: parts sorted, pairwise
// disjoint and non-adjacent.  Unbounded ends are open by construction.
class BorelSet {
 public:
  struct Interval {
    std::optional<Rational> lo, hi;  // nullopt = unbounded
    bool lo_closed = false, hi_closed = false;
  };

  BorelSet() = default;  // empty set
  explicit BorelSet(std::vector<Interval> parts);

  static BorelSet empty();
  static BorelSet real_line();
  static BorelSet below(const Rational& r);  // (-inf, r)
  static BorelSet point(const Rational& t);
  static BorelSet points(const std::vector<Rational>& ts);
  static BorelSet closed(const Rational& lo, const Rational& hi);

  bool contains(const Rational& t) const;
  BorelSet unite(const BorelSet& other) const;
  const std::vector<Interval>& parts() const { return parts_; }
  bool operator==(const BorelSet& other) const;

 private:
  std::vector<Interval> parts_;
};

// A finite-spectrum observable: sorted distinct rational spectrum points, one
// nonzero lattice element per point, pairwise orthogonal, joining to 1.  The
// constructor throws std::invalid_argument when any of that fails.
class Observable {
 public:
  Observable(LatticePtr lattice,
             std::vector<std::pair<Rational, Element>> points);

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Rational>& spectrum() const { return spectrum_; }
  Element element_at(std::size_t spectrum_index) const {
    return elements_.at(spectrum_index);
  }

  // x(E): join of the elements of the spectrum points lying in E.
  Element apply(const BorelSet& E) const;

  // All joins of subsets of the spectrum elements, sorted, deduplicated.
  std::vector<Element> range() const;

 private:
  LatticePtr lattice_;
  std::vector<Rational> spectrum_;
  std::vector<Element> elements_;
};

// g must be defined on every spectrum point of x (std::invalid_argument
// otherwise); the result maps t -> join of x's elements over g's preimage.
Observable compose(const std::vector<std::pair<Rational, Rational>>& g,
                   const Observable& x);

// Every pair drawn from the two ranges is compatible.  Observables living on
// different lattices cannot be compared: std::invalid_argument.
bool observables_compatible(const Observable& x, const Observable& y);

}  // namespace qlp
