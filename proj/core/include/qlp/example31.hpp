#pragma once

#include <vector>

#include "qlp/lattice.hpp"
#include "qlp/observable.hpp"
#include "qlp/smap.hpp"

// The worked example shipped with the tool: a partial s_3-map on MO3 plus
// three two-valued observables.

namespace qlp::example31 {

LatticePtr mo3();

// The partial table. Two typo-level fixes are always applied: three entries
// written with a stray fourth argument "1" lose it, and the one pair entry
// missing its third argument gets the implied 1. With raw=true the flawed
// triple p(c,a',c') = 11/100 is kept as listed; otherwise that entry is read
// as p(c,a',b') = 11/100. The raw form is inconsistent by design.
PartialSMap partial(bool raw = false);

// x1, x2, x3 with spectrum {-1, 1}: x1({1}) = a, x2({1}) = b, x3({1}) = c.
std::vector<Observable> observables(const LatticePtr& L);

}  // namespace qlp::example31
