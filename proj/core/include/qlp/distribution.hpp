#pragma once

#include <cstddef>
#include <vector>

#include "qlp/observable.hpp"
#include "qlp/report.hpp"
#include "qlp/smap.hpp"

namespace qlp {

// An s-map paired with one observable per coordinate, all on the same
// lattice.  The constructor throws std::invalid_argument on any mismatch.
class JointDistribution {
 public:
  JointDistribution(SMap p, std::vector<Observable> xs);

  const SMap& map() const { return p_; }
  const std::vector<Observable>& observables() const { return xs_; }
  int arity() const { return p_.arity(); }

 private:
  SMap p_;
  std::vector<Observable> xs_;
};

// p(x_1(E_1), ..., x_n(E_n)); one Borel set per coordinate.
Rational joint(const JointDistribution& d, const std::vector<BorelSet>& Es);

// F(r_1,...,r_n) = p(x_1(-inf,r_1), ..., x_n(-inf,r_n)), half-lines open
// at r_i.
Rational F(const JointDistribution& d, const std::vector<Rational>& rs);

// F with every dropped coordinate at its limit: the half-line grows to the
// whole line, so the coordinate element becomes 1.  Exact for finite
// spectra.  rs entries at dropped positions are ignored; indices are
// 0-based.
Rational marginal_F(const JointDistribution& d, const std::vector<Rational>& rs,
                    const std::vector<int>& drop);

// Spectrum points plus one sentinel beyond each end.  F restricted to
// products of these grids takes every value F takes anywhere.
std::vector<Rational> evaluation_grid(const Observable& x);

// Exhaustive grid check of the distribution-function laws: bounds,
// coordinatewise monotonicity, upper limits against the marginal, lower
// limits to zero, and full permutation invariance whenever some pair of
// observables is compatible (vacuously passed otherwise).
Report check_F_properties(const JointDistribution& d);

struct PermutationViolation {
  Tuple tuple;     // spectrum-element tuple, lexicographically first
  Tuple permuted;  // reordering carrying a different p-value
  Rational value, permuted_value;
};

// Invariance of p under all permutations of all spectrum-element tuples.
// This decides invariance of every joint value: arbitrary Borel sets split
// into spectrum singletons and p adds up over the split.
struct CommutativityReport {
  bool commutative = true;
  std::vector<PermutationViolation> violations;  // deduplicated, sorted
};

CommutativityReport check_commutativity(const JointDistribution& d);

// Probability space over the product of the spectra; point masses are
// p-values on spectrum singletons; coordinate variables are projections.
class ClassicalModel {
 public:
  // Outcome tuples in lexicographic spectrum order, masses aligned.
  const std::vector<std::vector<Rational>>& outcomes() const {
    return outcomes_;
  }
  const std::vector<Rational>& masses() const { return masses_; }

  // Sum of masses over the listed outcomes (duplicates counted once).
  Rational P(const std::vector<std::size_t>& outcome_indices) const;
  // P(xi_i < r)
  Rational coordinate_below(int i, const Rational& r) const;
  // P(xi_1 < r_1, ..., xi_n < r_n)
  Rational F(const std::vector<Rational>& rs) const;

  // The identity checks performed at construction time.
  const Report& verification() const { return checks_; }

 private:
  friend ClassicalModel classical_model(const JointDistribution& d);
  std::vector<std::vector<Rational>> outcomes_;
  std::vector<Rational> masses_;
  Report checks_;
};

// Builds the model, then verifies: every mass nonnegative and total mass 1
// (violations throw ModelError naming the failing identity, which indicates
// an invalid s-map), the coordinate law P(xi_i < r) = nu(x_i(-inf,r)) at
// every spectrum threshold and both sentinels, and equality of the model's
// distribution function with F on the full evaluation grid.
ClassicalModel classical_model(const JointDistribution& d);

}  // namespace qlp
