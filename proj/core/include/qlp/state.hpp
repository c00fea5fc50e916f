#pragma once

#include <vector>

#include "qlp/lattice.hpp"
#include "qlp/rational.hpp"
#include "qlp/report.hpp"

namespace qlp {

// A total assignment of rationals to lattice elements.  Whether it is an
// additive probability state is decided by check_state, not the constructor.
class State {
 public:
  State(LatticePtr lattice, std::vector<Rational> values);

  const Rational& value(Element e) const { return values_.at(e); }
  const std::vector<Rational>& values() const { return values_; }
  const LatticePtr& lattice() const { return lattice_; }

 private:
  LatticePtr lattice_;
  std::vector<Rational> values_;
};

// (i) m(0) = 0, m(1) = 1, all values in [0,1]
// (ii) a orthogonal to b implies m(a v b) = m(a) + m(b)
Report check_state(const State& s);

}  // namespace qlp
