#include "qlp/state.hpp"

#include "qlp/errors.hpp"

namespace qlp {

State::State(LatticePtr lattice, std::vector<Rational> values)
    : lattice_(std::move(lattice)), values_(std::move(values)) {
  if (!lattice_) throw StructuralError("state without a lattice");
  if (static_cast<int>(values_.size()) != lattice_->size())
    throw StructuralError("state has " + std::to_string(values_.size()) +
                          " values for " + std::to_string(lattice_->size()) +
                          " elements");
}

Report check_state(const State& s) {
  const Lattice& L = *s.lattice();
  Report rep;
  {
    std::string w;
    if (s.value(L.zero()) != 0)
      w = "m(0) = " + fraction_string(s.value(L.zero()));
    else if (s.value(L.one()) != 1)
      w = "m(1) = " + fraction_string(s.value(L.one()));
    else
      for (Element e = 0; e < L.size() && w.empty(); ++e)
        if (s.value(e) < 0 || s.value(e) > 1)
          w = "m(" + L.label(e) + ") = " + fraction_string(s.value(e));
    rep.add("state.i.normalized", w.empty(), w);
  }
  {
    std::string w;
    for (Element a = 0; a < L.size() && w.empty(); ++a)
      for (Element b = 0; b < L.size() && w.empty(); ++b)
        if (is_orthogonal(L, a, b) &&
            s.value(L.join(a, b)) != s.value(a) + s.value(b))
          w = "(" + L.label(a) + "," + L.label(b) + "): m(" +
              L.label(L.join(a, b)) + ") = " +
              fraction_string(s.value(L.join(a, b))) + " but m(" + L.label(a) +
              ") + m(" + L.label(b) + ") = " +
              fraction_string(s.value(a) + s.value(b));
    rep.add("state.ii.additive", w.empty(), w);
  }
  return rep;
}

}  // namespace qlp
