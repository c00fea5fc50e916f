#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlp/report.hpp"

namespace qlp {

using Element = int;

// Raw description of a candidate bounded ortholattice.  The order relation is
// taken literally: reflexive pairs must be listed, nothing is completed.
struct LatticeData {
  std::vector<std::string> labels;
  std::vector<std::pair<Element, Element>> leq;  // (a, b) meaning a <= b
  std::vector<Element> ortho;                    // ortho[a] = a'
  Element zero = -1;
  Element one = -1;
};

class Lattice {
 public:
  int size() const { return static_cast<int>(labels_.size()); }
  Element zero() const { return zero_; }
  Element one() const { return one_; }

  bool leq(Element a, Element b) const { return leq_[idx(a, b)]; }
  Element ortho(Element a) const { return ortho_[check(a)]; }
  Element meet(Element a, Element b) const { return meet_[idx(a, b)]; }
  Element join(Element a, Element b) const { return join_[idx(a, b)]; }

  const std::vector<Element>& atoms() const { return atoms_; }
  bool is_atom(Element e) const { return atom_flag_[check(e)]; }

  const std::string& label(Element e) const { return labels_[check(e)]; }
  std::optional<Element> element_by_label(const std::string& label) const;
  // Throws StructuralError naming the label when it is unknown.
  Element require_label(const std::string& label) const;

  LatticeData to_data() const;
  bool same_structure(const Lattice& other) const;

 private:
  friend struct LatticeBuilder;
  std::size_t idx(Element a, Element b) const {
    return static_cast<std::size_t>(check(a)) * labels_.size() + check(b);
  }
  Element check(Element e) const;

  std::vector<std::string> labels_;
  std::vector<bool> leq_;
  std::vector<Element> ortho_, meet_, join_, atoms_;
  std::vector<bool> atom_flag_;
  Element zero_ = 0, one_ = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

struct OmlCheck {
  Report report;
  LatticePtr lattice;  // populated only when every check passed
};

// Validates the five orthomodular-lattice axioms plus order sanity,
// existence of meets/joins, and orthogonal atomisticity.  Malformed shapes
// (size mismatches, out-of-range indices, duplicate labels) throw
// StructuralError; everything else lands in the report.
OmlCheck check_oml(const LatticeData& candidate);

// 0 < n: the horizontal-sum lattice with n complementary atom pairs
// (0, a, a', b, b', ..., 1).  n = 1 gives the four-element Boolean lattice.
LatticePtr make_mo(int n);

// 1 <= k <= 10: the powerset lattice of {1..k} ordered by inclusion.
LatticePtr make_boolean(int k);

// a <= b'
bool is_orthogonal(const Lattice& L, Element a, Element b);

// a = (a v b) ^ (a v b').  For small lattices the witness-search route is
// cross-checked; disagreement would be an internal error.
bool is_compatible(const Lattice& L, Element a, Element b);

// Mutually orthogonal (a1, b1, c) with a = a1 v c and b = b1 v c, if any.
std::optional<std::array<Element, 3>> compatibility_witness(const Lattice& L,
                                                            Element a,
                                                            Element b);

// Every set of mutually orthogonal atoms whose join is e, sorted; {} for the
// bottom element.  Each decomposition is an ascending list of atom indices.
std::vector<std::vector<Element>> atom_decompositions(const Lattice& L,
                                                      Element e);

}  // namespace qlp
