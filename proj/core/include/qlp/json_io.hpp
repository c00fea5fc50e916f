#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlp/distribution.hpp"
#include "qlp/lattice.hpp"
#include "qlp/observable.hpp"
#include "qlp/smap.hpp"
#include "qlp/state.hpp"
#include "qlp/synth.hpp"

namespace qlp {

// Parsers accept the documented JSON schemas and throw StructuralError on
// anything malformed.  Writers emit two-space-indented JSON with a trailing
// newline, byte-for-byte deterministic for equal inputs.

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// "mo:<n>" or "boolean:<k>"; nullopt when the text is not a shorthand.
std::optional<LatticePtr> lattice_shorthand(const std::string& text);

// {"elements":[labels], "leq":[[i,j]...], "ortho":[j per i],
//  "zero":i, "one":i}
LatticeData parse_lattice_data(const std::string& json_text);

// Shorthand or document; documents must pass the axiom checks.
LatticePtr parse_lattice(const std::string& text);

std::string lattice_json(const Lattice& L);

// {"<element-label>": "p/q", ...}, every element exactly once.
State parse_state(const std::string& json_text, const LatticePtr& L);
std::string state_json(const State& s);

// {"spectrum":["p/q", ...], "assign":{"<spectrum-string>":"<label>", ...}}
Observable parse_observable(const std::string& json_text, const LatticePtr& L);

// {"<name>": <observable-document>, ...}; document order is kept.
std::vector<std::pair<std::string, Observable>> parse_observables(
    const std::string& json_text, const LatticePtr& L);
std::string observables_json(
    const std::vector<std::pair<std::string, Observable>>& xs);

// {"lattice": <shorthand-or-document>, "arity": n,
//  "entries": [{"tuple":[labels], "value":"p/q"}, ...]}
PartialSMap parse_partial_smap(const std::string& json_text);

// Same schema with a total table: one entry per cell.
SMap parse_smap(const std::string& json_text);

std::string smap_json(const SMap& p);
std::string partial_smap_json(const PartialSMap& q);

// Either a bare list of {"tuple":[labels], "rel":"=|<=|>=", "value":"p/q"}
// or an object {"constraints":[...], "symmetric":bool}.  "rel" defaults to
// "=".  Equality entries become fixed values; inequalities become linear
// rows.  "symmetric": true requires permutation invariance, false forbids
// it, absent leaves it free.
ConstraintSet parse_constraints(const std::string& json_text,
                                const LatticePtr& L, int arity);

std::string report_json(const Report& r);
std::string completion_json(const Completion& c, const Lattice& L);
std::string feasibility_json(const FeasibilityResult& r);
std::string commutativity_json(const CommutativityReport& r, const Lattice& L);
std::string classical_model_json(const ClassicalModel& m);

}  // namespace qlp
