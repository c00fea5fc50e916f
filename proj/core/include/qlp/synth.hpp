#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlp/simplex.hpp"
#include "qlp/smap.hpp"
#include "qlp/state.hpp"

namespace qlp {

// One affine condition over table cells.  Tuples may mention any lattice
// elements; they are expanded into sums of atom-tuple variables before the
// program is assembled.
struct LinearConstraint {
  std::vector<std::pair<Tuple, Rational>> terms;
  Rel rel = Rel::eq;
  Rational rhs = 0;
  std::string name;  // shown in certificates; empty gets a numbered tag
};

enum class SymmetryMode {
  free,    // no requirement
  require, // p must be invariant under all coordinate permutations
  forbid   // p must differ on some permutation pair
};

struct ConstraintSet {
  std::vector<std::pair<Tuple, Rational>> fixed;  // p(t) = value, value in [0,1]
  std::optional<State> diagonal;                  // p(e,...,e) = state(e) for all e
  SymmetryMode symmetry = SymmetryMode::free;
  std::vector<LinearConstraint> linear;
};

// A self-contained refutation: the listed rows (structural identities plus
// named user constraints, over nonnegative atom-tuple variables) are jointly
// unsatisfiable, and the multipliers exhibit the contradiction.
struct InfeasibilityCertificate {
  LinearProgram subset;
  FarkasCertificate farkas;
};

// Rechecks the certificate by plain rational arithmetic, independently of
// the solver that produced it.
bool verify_certificate(const InfeasibilityCertificate& c);
std::string certificate_text(const InfeasibilityCertificate& c);

struct FeasibilityResult {
  bool feasible = false;
  std::optional<SMap> witness;                         // when feasible
  std::optional<InfeasibilityCertificate> certificate; // when a linear refutation exists
  std::string note;  // set when infeasibility has no linear certificate
};

// Searches for an s-map of the given arity satisfying c.  The feasible
// region is cut out by nonnegativity, the consistency identities induced by
// every pair of atom decompositions of every element in every coordinate,
// normalization, zero on orthogonal-adjacent atom tuples, and c itself.  A
// witness is extended from its atom entries to a full table and re-validated
// before being returned.  symmetry == forbid adds a strict requirement that
// has no linear certificate; when it cannot be met the result carries an
// explanatory note instead.
FeasibilityResult synthesize(const LatticePtr& L, int arity,
                             const ConstraintSet& c);

struct NoncommutativityWitness {
  SMap map;
  Tuple tuple;     // pairwise distinct, pairwise incompatible atoms
  Tuple permuted;  // reordering with map.value(tuple) != map.value(permuted)
  Rational gap;    // map.value(tuple) - map.value(permuted), positive
};

// Maximizes p(t) - p(t') over the feasibility polytope for systematically
// enumerated pairs (t, t'), where t runs over atom tuples with no repeated
// entry and no compatible pair and t' over its reorderings.  Returns the
// first witness with a positive gap, or nullopt when every maximum is zero
// (as on Boolean lattices, where all pairs are compatible).
std::optional<NoncommutativityWitness> find_noncommutative(const LatticePtr& L,
                                                           int arity);

struct MarginalViolation {
  SMap pn;       // arity n
  SMap pm;       // arity n + 1, same derived state as pn
  Tuple tuple;   // pn.value(tuple) != pm.value(tuple + unit)
  Rational gap;  // absolute difference, positive
};

// Jointly synthesizes an n-map and an (n+1)-map over independent variable
// blocks, linked by equal derived states, and maximizes both signs of
// p_n(t) - p_{n+1}(t, 1) over enumerated atom tuples t.  Returns the first
// pair with a positive gap, or nullopt when none exists.
std::optional<MarginalViolation> find_marginal_violation(const LatticePtr& L,
                                                         int arity);

struct ConverseProbe {
  bool asymmetric_feasible = false;
  std::optional<SMap> pn, pm;  // populated only when asymmetry is feasible
  Tuple tuple, permuted;       // the asymmetry site when found
  Rational gap = 0;
  std::string summary;         // always set
};

// Converse direction of the marginal question: pin p_{n+1}(t, 1) = p_n(t)
// for every tuple and then search for a permutation asymmetry in p_n.  The
// outcome is reported either way.
ConverseProbe probe_marginal_converse(const LatticePtr& L, int arity);

}  // namespace qlp
