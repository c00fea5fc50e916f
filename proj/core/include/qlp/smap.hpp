#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlp/lattice.hpp"
#include "qlp/rational.hpp"
#include "qlp/report.hpp"
#include "qlp/state.hpp"

namespace qlp {

using Tuple = std::vector<Element>;

std::size_t tuple_count(int lattice_size, int arity);
std::size_t tuple_index(int lattice_size, const Tuple& t);
Tuple tuple_at(int lattice_size, int arity, std::size_t index);
std::string tuple_label(const Lattice& L, const Tuple& t);  // "(a,b',1)"

// Dense total table over L^n.  Values are stored as given; validity is
// decided by validate().
class SMap {
 public:
  SMap(LatticePtr lattice, int arity, std::vector<Rational> table);

  int arity() const { return arity_; }
  const LatticePtr& lattice() const { return lattice_; }
  std::size_t cell_count() const { return table_.size(); }
  const Rational& value(const Tuple& t) const;
  const Rational& value_at(std::size_t flat) const { return table_.at(flat); }
  const std::vector<Rational>& table() const { return table_; }

 private:
  LatticePtr lattice_;
  int arity_;
  std::vector<Rational> table_;
};

// Sparse assignment of cells; set() rejects duplicate tuples carrying
// conflicting values and values outside [0,1].
class PartialSMap {
 public:
  PartialSMap(LatticePtr lattice, int arity);

  void set(const Tuple& t, const Rational& value);
  const std::map<Tuple, Rational>& entries() const { return entries_; }
  int arity() const { return arity_; }
  const LatticePtr& lattice() const { return lattice_; }

 private:
  LatticePtr lattice_;
  int arity_;
  std::map<Tuple, Rational> entries_;
};

// (s1) p(1,...,1) = 1
// (s2) p = 0 whenever two adjacent coordinates are orthogonal
// (s3) additivity in every coordinate over every orthogonal pair
// plus the range check 0 <= p <= 1.
Report validate(const SMap& p);

// nu(a) = p(a,...,a)
State derived_state(const SMap& p);

// P1 zero on any-position orthogonal pairs; P2 derived state is a state;
// P3 p bounded by the derived state at every coordinate; P4 compatible
// pairs collapse to their meet; P5 permutation classes carry equal values.
Report check_propositions(const SMap& p);

// All distinct permutations of t, sorted.
std::vector<Tuple> tuple_permutations(const Tuple& t);

// Replaces coordinate i by the value of coordinate k (0-based).
Tuple tuple_replace(const Tuple& t, int i, int k);

// Union over k of the permutations of tuple_replace(t, i, k), sorted.  A
// valid s-map is constant on this set when coordinate i holds 1 or a value
// that also appears at another coordinate.
std::vector<Tuple> corollary_class(const Tuple& t, int i);

struct MarginalConsistency {
  bool consistent = false;
  std::vector<Tuple> violations;  // tuples with pn(t) != pm(t,1)
  Report slice_validation;        // is t -> pm(t,1) a valid n-map?
};

// pm must have arity pn.arity() + 1 and structurally the same lattice.
MarginalConsistency marginal_consistency(const SMap& pn, const SMap& pm);

struct Completion {
  enum class Status { complete, inconsistent, underdetermined };
  Status status = Status::inconsistent;
  std::optional<SMap> table;
  std::vector<Tuple> free_tuples;  // representatives, underdetermined only
  std::string conflict;            // rendered derivation chains
  Report revalidation;
};

// Least-fixpoint closure: seeds the given entries and p(1,...,1) = 1, then
// propagates unit-replacement and repeated-coordinate permutation classes,
// zero on any-position orthogonal pairs, and additivity over every atom
// decomposition of every coordinate, finally re-validating the axioms.
Completion complete(const PartialSMap& q);

// Test hook: processes the propagation queue in a seed-shuffled order.  Any
// order must land on the same total table.
Completion complete(const PartialSMap& q, std::uint64_t shuffle_seed);

}  // namespace qlp
