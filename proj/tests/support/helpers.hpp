#pragma once

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "qlp/lattice.hpp"
#include "qlp/observable.hpp"
#include "qlp/rational.hpp"
#include "qlp/state.hpp"
#include "qlp/synth.hpp"

namespace qlp::testing {

inline Rational random_unit_rational(std::mt19937_64& rng, int max_den = 20) {
  std::uniform_int_distribution<int> dens(1, max_den);
  const int den = dens(rng);
  std::uniform_int_distribution<int> nums(0, den);
  return Rational(nums(rng), den);
}

// Random masses on the atoms, normalized; element values add the masses of
// the atoms below.  On a Boolean lattice this is the generic state.
inline State random_atomic_state(const LatticePtr& L, std::mt19937_64& rng) {
  const auto& atoms = L->atoms();
  std::uniform_int_distribution<int> nums(0, 12);
  std::vector<Rational> mass(atoms.size());
  Rational total = 0;
  while (total == 0) {
    for (auto& m : mass) {
      m = nums(rng);
      total += m;
    }
  }
  std::vector<Rational> values(static_cast<std::size_t>(L->size()), 0);
  for (Element e = 0; e < L->size(); ++e)
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if (L->leq(atoms[k], e)) values[static_cast<std::size_t>(e)] += mass[k];
  for (auto& v : values) v /= total;
  return State(L, std::move(values));
}

// A two-valued observable sending -1 to the complement and +1 to e.
inline Observable two_valued(const LatticePtr& L, Element e) {
  return Observable(L, {{Rational(-1), L->ortho(e)}, {Rational(1), e}});
}

// Random cell-value constraint sets for synthesize(); tuples are drawn over
// the whole lattice, values over small rationals.
inline ConstraintSet random_constraints(const LatticePtr& L, int arity,
                                        std::mt19937_64& rng) {
  ConstraintSet cs;
  std::uniform_int_distribution<int> counts(1, 3);
  std::uniform_int_distribution<int> elems(0, L->size() - 1);
  std::uniform_int_distribution<int> rels(0, 2);
  const int k = counts(rng);
  for (int c = 0; c < k; ++c) {
    Tuple t(static_cast<std::size_t>(arity));
    for (auto& e : t) e = elems(rng);
    const Rational v = random_unit_rational(rng);
    switch (rels(rng)) {
      case 0:
        cs.fixed.emplace_back(std::move(t), v);
        break;
      case 1: {
        LinearConstraint lc;
        lc.terms.emplace_back(std::move(t), Rational(1));
        lc.rel = Rel::le;
        lc.rhs = v;
        cs.linear.push_back(std::move(lc));
        break;
      }
      default: {
        LinearConstraint lc;
        lc.terms.emplace_back(std::move(t), Rational(1));
        lc.rel = Rel::ge;
        lc.rhs = v;
        cs.linear.push_back(std::move(lc));
        break;
      }
    }
  }
  return cs;
}

// Sparse exact Gaussian elimination keeping leading-column pivots.  Used as
// an oracle independent of both the completion closure and the LP solver.
class Eliminator {
 public:
  // false when the row reduces to 0 = nonzero
  bool add(std::map<int, Rational> coeffs, Rational rhs) {
    while (!coeffs.empty()) {
      const int col = coeffs.begin()->first;
      auto pivot = pivots_.find(col);
      if (pivot == pivots_.end()) {
        const Rational lead = coeffs.begin()->second;
        coeffs.erase(coeffs.begin());
        for (auto& [c, v] : coeffs) v /= lead;
        pivots_.emplace(col, Row{std::move(coeffs), rhs / lead});
        return true;
      }
      const Rational f = coeffs.begin()->second;
      coeffs.erase(coeffs.begin());
      for (const auto& [c, v] : pivot->second.coeffs) {
        auto [it, fresh] = coeffs.emplace(c, 0);
        it->second -= f * v;
        if (it->second == 0) coeffs.erase(it);
      }
      rhs -= f * pivot->second.rhs;
    }
    if (rhs != 0) {
      consistent_ = false;
      return false;
    }
    return true;
  }

  bool consistent() const { return consistent_; }
  std::size_t pivot_count() const { return pivots_.size(); }

  // The unique solution when every variable has a pivot.
  std::optional<std::vector<Rational>> solve(int vars) const {
    if (!consistent_ || pivot_count() != static_cast<std::size_t>(vars))
      return std::nullopt;
    std::vector<Rational> x(static_cast<std::size_t>(vars));
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      Rational v = it->second.rhs;
      for (const auto& [c, coeff] : it->second.coeffs)
        v -= coeff * x[static_cast<std::size_t>(c)];
      x[static_cast<std::size_t>(it->first)] = v;
    }
    return x;
  }

 private:
  struct Row {
    std::map<int, Rational> coeffs;  // excludes the pivot column (coeff 1)
    Rational rhs;
  };
  std::map<int, Row> pivots_;
  bool consistent_ = true;
};

}  // namespace qlp::testing
