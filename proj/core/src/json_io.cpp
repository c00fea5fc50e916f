#include "qlp/json_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "qlp/errors.hpp"

namespace qlp {

namespace {

using njson = nlohmann::ordered_json;

constexpr std::size_t kMaxCells = 1u << 20;

std::string dumped(const njson& j) { return j.dump(2) + "\n"; }

njson parse_json(const std::string& text) {
  try {
    return njson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError(std::string("invalid JSON: ") + e.what());
  }
}

const njson& need(const njson& j, const char* key) {
  if (!j.is_object())
    throw StructuralError(std::string("expected an object carrying \"") + key +
                          "\"");
  auto it = j.find(key);
  if (it == j.end())
    throw StructuralError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string need_string(const njson& j, const char* what) {
  if (!j.is_string())
    throw StructuralError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int need_int(const njson& j, const char* what) {
  if (!j.is_number_integer())
    throw StructuralError(std::string(what) + " must be an integer");
  return j.get<int>();
}

const njson& need_array(const njson& j, const char* what) {
  if (!j.is_array())
    throw StructuralError(std::string(what) + " must be an array");
  return j;
}

njson labels_array(const Lattice& L, const Tuple& t) {
  njson a = njson::array();
  for (Element e : t) a.push_back(L.label(e));
  return a;
}

Tuple tuple_from(const njson& j, const Lattice& L) {
  Tuple t;
  for (const auto& x : need_array(j, "\"tuple\""))
    t.push_back(L.require_label(need_string(x, "tuple entry")));
  return t;
}

njson lattice_doc(const Lattice& L) {
  LatticeData d = L.to_data();
  njson j;
  j["elements"] = d.labels;
  njson leq = njson::array();
  for (const auto& [a, b] : d.leq) leq.push_back(njson::array({a, b}));
  j["leq"] = std::move(leq);
  j["ortho"] = d.ortho;
  j["zero"] = d.zero;
  j["one"] = d.one;
  return j;
}

LatticeData lattice_data_from(const njson& j) {
  LatticeData d;
  for (const auto& x : need_array(need(j, "elements"), "\"elements\""))
    d.labels.push_back(need_string(x, "element label"));
  for (const auto& pr : need_array(need(j, "leq"), "\"leq\"")) {
    if (!pr.is_array() || pr.size() != 2)
      throw StructuralError("each \"leq\" entry must be a pair [i,j]");
    d.leq.emplace_back(need_int(pr[0], "leq index"),
                       need_int(pr[1], "leq index"));
  }
  for (const auto& x : need_array(need(j, "ortho"), "\"ortho\""))
    d.ortho.push_back(need_int(x, "ortho index"));
  d.zero = need_int(need(j, "zero"), "\"zero\"");
  d.one = need_int(need(j, "one"), "\"one\"");
  return d;
}

LatticePtr lattice_from(const njson& j) {
  if (j.is_string()) {
    const std::string text = j.get<std::string>();
    if (auto sh = lattice_shorthand(text)) return *sh;
    throw StructuralError("lattice \"" + text +
                          "\" is neither \"mo:<n>\" nor \"boolean:<k>\"");
  }
  if (!j.is_object())
    throw StructuralError(
        "\"lattice\" must be a shorthand string or a lattice document");
  OmlCheck check = check_oml(lattice_data_from(j));
  if (!check.lattice)
    throw ModelError("embedded lattice fails the axioms:\n" +
                     check.report.to_text());
  return check.lattice;
}

Observable observable_from(const njson& j, const LatticePtr& L) {
  const njson& spectrum = need_array(need(j, "spectrum"), "\"spectrum\"");
  const njson& assign = need(j, "assign");
  if (!assign.is_object())
    throw StructuralError("\"assign\" must map spectrum points to labels");
  if (assign.size() != spectrum.size())
    throw StructuralError("\"assign\" has " + std::to_string(assign.size()) +
                          " entries for " + std::to_string(spectrum.size()) +
                          " spectrum points");
  std::vector<std::pair<Rational, Element>> points;
  for (const auto& x : spectrum) {
    const std::string key = need_string(x, "spectrum point");
    auto it = assign.find(key);
    if (it == assign.end())
      throw StructuralError("spectrum point \"" + key +
                            "\" has no \"assign\" entry");
    points.emplace_back(parse_rational(key),
                        L->require_label(need_string(*it, "assigned label")));
  }
  try {
    return Observable(L, std::move(points));
  } catch (const std::invalid_argument& e) {
    throw StructuralError(e.what());
  }
}

njson observable_doc(const Observable& x) {
  njson j;
  njson spectrum = njson::array();
  njson assign = njson::object();
  for (std::size_t i = 0; i < x.spectrum().size(); ++i) {
    const std::string key = fraction_string(x.spectrum()[i]);
    spectrum.push_back(key);
    assign[key] = x.lattice()->label(x.element_at(i));
  }
  j["spectrum"] = std::move(spectrum);
  j["assign"] = std::move(assign);
  return j;
}

std::size_t checked_cells(const Lattice& L, int arity) {
  if (arity < 1) throw StructuralError("\"arity\" must be positive");
  std::size_t cells = 1;
  for (int i = 0; i < arity; ++i) {
    cells *= static_cast<std::size_t>(L.size());
    if (cells > kMaxCells)
      throw StructuralError("a table over " + std::to_string(L.size()) +
                            " elements at arity " + std::to_string(arity) +
                            " exceeds the supported size");
  }
  return cells;
}

njson report_doc(const Report& r) {
  njson j;
  j["ok"] = r.ok();
  njson items = njson::array();
  for (const auto& it : r.items) {
    njson x;
    x["name"] = it.name;
    x["passed"] = it.passed;
    x["detail"] = it.detail;
    x["kind"] = it.kind == CheckKind::structure ? "structure" : "axiom";
    items.push_back(std::move(x));
  }
  j["items"] = std::move(items);
  return j;
}

njson smap_doc(const SMap& p) {
  const Lattice& L = *p.lattice();
  njson j;
  j["lattice"] = lattice_doc(L);
  j["arity"] = p.arity();
  njson entries = njson::array();
  for (std::size_t i = 0; i < p.cell_count(); ++i) {
    njson e;
    e["tuple"] = labels_array(L, tuple_at(L.size(), p.arity(), i));
    e["value"] = fraction_string(p.value_at(i));
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw StructuralError("cannot read " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StructuralError("cannot write " + path);
  out << text;
  if (!out) throw StructuralError("cannot write " + path);
}

std::optional<LatticePtr> lattice_shorthand(const std::string& text) {
  auto number_after = [&](const std::string& prefix) -> std::optional<int> {
    if (text.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      throw StructuralError("bad lattice shorthand \"" + text + "\"");
    if (digits.size() > 4)
      throw StructuralError("bad lattice shorthand \"" + text + "\"");
    return std::stoi(digits);
  };
  if (auto n = number_after("mo:")) return make_mo(*n);
  if (auto k = number_after("boolean:")) return make_boolean(*k);
  return std::nullopt;
}

LatticeData parse_lattice_data(const std::string& json_text) {
  return lattice_data_from(parse_json(json_text));
}

LatticePtr parse_lattice(const std::string& text) {
  if (auto sh = lattice_shorthand(text)) return *sh;
  return lattice_from(parse_json(text));
}

std::string lattice_json(const Lattice& L) { return dumped(lattice_doc(L)); }

State parse_state(const std::string& json_text, const LatticePtr& L) {
  njson j = parse_json(json_text);
  if (!j.is_object())
    throw StructuralError("a state document must map labels to rationals");
  if (j.size() != static_cast<std::size_t>(L->size()))
    throw StructuralError("state has " + std::to_string(j.size()) +
                          " entries for " + std::to_string(L->size()) +
                          " elements");
  std::vector<Rational> values(static_cast<std::size_t>(L->size()));
  for (Element e = 0; e < L->size(); ++e) {
    auto it = j.find(L->label(e));
    if (it == j.end())
      throw StructuralError("state is missing element \"" + L->label(e) +
                            "\"");
    values[static_cast<std::size_t>(e)] =
        parse_rational(need_string(*it, "state value"));
  }
  return State(L, std::move(values));
}

std::string state_json(const State& s) {
  const Lattice& L = *s.lattice();
  njson j;
  for (Element e = 0; e < L.size(); ++e)
    j[L.label(e)] = fraction_string(s.value(e));
  return dumped(j);
}

Observable parse_observable(const std::string& json_text,
                            const LatticePtr& L) {
  return observable_from(parse_json(json_text), L);
}

std::vector<std::pair<std::string, Observable>> parse_observables(
    const std::string& json_text, const LatticePtr& L) {
  njson j = parse_json(json_text);
  if (!j.is_object() || j.empty())
    throw StructuralError(
        "an observables document must map names to observables");
  std::vector<std::pair<std::string, Observable>> out;
  for (const auto& [name, doc] : j.items())
    out.emplace_back(name, observable_from(doc, L));
  return out;
}

std::string observables_json(
    const std::vector<std::pair<std::string, Observable>>& xs) {
  njson j;
  for (const auto& [name, x] : xs) j[name] = observable_doc(x);
  return dumped(j);
}

PartialSMap parse_partial_smap(const std::string& json_text) {
  njson j = parse_json(json_text);
  LatticePtr L = lattice_from(need(j, "lattice"));
  const int arity = need_int(need(j, "arity"), "\"arity\"");
  checked_cells(*L, arity);
  PartialSMap q(L, arity);
  for (const auto& e : need_array(need(j, "entries"), "\"entries\"")) {
    Tuple t = tuple_from(need(e, "tuple"), *L);
    q.set(t, parse_rational(need_string(need(e, "value"), "entry value")));
  }
  return q;
}

SMap parse_smap(const std::string& json_text) {
  PartialSMap q = parse_partial_smap(json_text);
  const Lattice& L = *q.lattice();
  const std::size_t cells = checked_cells(L, q.arity());
  if (q.entries().size() != cells) {
    for (std::size_t i = 0; i < cells; ++i) {
      Tuple t = tuple_at(L.size(), q.arity(), i);
      if (!q.entries().count(t))
        throw StructuralError(
            "table is missing " + std::to_string(cells - q.entries().size()) +
            " of " + std::to_string(cells) + " cells, first at " +
            tuple_label(L, t));
    }
  }
  std::vector<Rational> table(cells);
  for (const auto& [t, v] : q.entries())
    table[tuple_index(L.size(), t)] = v;
  return SMap(q.lattice(), q.arity(), std::move(table));
}

std::string smap_json(const SMap& p) { return dumped(smap_doc(p)); }

std::string partial_smap_json(const PartialSMap& q) {
  const Lattice& L = *q.lattice();
  njson j;
  j["lattice"] = lattice_doc(L);
  j["arity"] = q.arity();
  njson entries = njson::array();
  for (const auto& [t, v] : q.entries()) {
    njson e;
    e["tuple"] = labels_array(L, t);
    e["value"] = fraction_string(v);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return dumped(j);
}

ConstraintSet parse_constraints(const std::string& json_text,
                                const LatticePtr& L, int arity) {
  njson j = parse_json(json_text);
  ConstraintSet out;
  const njson* list = nullptr;
  if (j.is_array()) {
    list = &j;
  } else if (j.is_object()) {
    if (auto it = j.find("symmetric"); it != j.end()) {
      if (!it->is_boolean())
        throw StructuralError("\"symmetric\" must be a boolean");
      out.symmetry = it->get<bool>() ? SymmetryMode::require
                                     : SymmetryMode::forbid;
    }
    if (auto it = j.find("constraints"); it != j.end())
      list = &need_array(*it, "\"constraints\"");
  } else {
    throw StructuralError(
        "a constraints document must be a list or an object");
  }
  if (list) {
    for (const auto& e : *list) {
      Tuple t = tuple_from(need(e, "tuple"), *L);
      if (static_cast<int>(t.size()) != arity)
        throw StructuralError("constraint tuple " + tuple_label(*L, t) +
                              " does not have arity " + std::to_string(arity));
      const Rational v =
          parse_rational(need_string(need(e, "value"), "constraint value"));
      std::string rel = "=";
      if (auto it = e.find("rel"); it != e.end())
        rel = need_string(*it, "\"rel\"");
      if (rel == "=") {
        out.fixed.emplace_back(std::move(t), v);
      } else if (rel == "<=" || rel == ">=") {
        LinearConstraint lc;
        lc.terms.emplace_back(std::move(t), Rational(1));
        lc.rel = rel == "<=" ? Rel::le : Rel::ge;
        lc.rhs = v;
        out.linear.push_back(std::move(lc));
      } else {
        throw StructuralError("\"rel\" must be one of =, <=, >=");
      }
    }
  }
  return out;
}

std::string report_json(const Report& r) { return dumped(report_doc(r)); }

std::string completion_json(const Completion& c, const Lattice& L) {
  njson j;
  switch (c.status) {
    case Completion::Status::complete:
      j["status"] = "complete";
      break;
    case Completion::Status::inconsistent:
      j["status"] = "inconsistent";
      break;
    case Completion::Status::underdetermined:
      j["status"] = "underdetermined";
      break;
  }
  if (c.table) j["table"] = smap_doc(*c.table);
  njson free_list = njson::array();
  for (const Tuple& t : c.free_tuples) free_list.push_back(labels_array(L, t));
  j["free_tuples"] = std::move(free_list);
  j["conflict"] = c.conflict;
  j["revalidation"] = report_doc(c.revalidation);
  return dumped(j);
}

std::string feasibility_json(const FeasibilityResult& r) {
  njson j;
  j["feasible"] = r.feasible;
  if (r.witness) j["witness"] = smap_doc(*r.witness);
  if (r.certificate) {
    njson cert;
    njson rows = njson::array();
    for (const auto& [row, mu] : r.certificate->farkas.multipliers) {
      njson x;
      x["multiplier"] = fraction_string(mu);
      x["tag"] = r.certificate->subset.rows.at(row).tag;
      rows.push_back(std::move(x));
    }
    cert["rows"] = std::move(rows);
    cert["text"] = certificate_text(*r.certificate);
    j["certificate"] = std::move(cert);
  }
  if (!r.note.empty()) j["note"] = r.note;
  return dumped(j);
}

std::string commutativity_json(const CommutativityReport& r,
                               const Lattice& L) {
  njson j;
  j["commutative"] = r.commutative;
  njson vs = njson::array();
  for (const auto& v : r.violations) {
    njson x;
    x["tuple"] = labels_array(L, v.tuple);
    x["permuted"] = labels_array(L, v.permuted);
    x["value"] = fraction_string(v.value);
    x["permuted_value"] = fraction_string(v.permuted_value);
    vs.push_back(std::move(x));
  }
  j["violations"] = std::move(vs);
  return dumped(j);
}

std::string classical_model_json(const ClassicalModel& m) {
  njson j;
  njson outcomes = njson::array();
  for (const auto& omega : m.outcomes()) {
    njson o = njson::array();
    for (const Rational& t : omega) o.push_back(fraction_string(t));
    outcomes.push_back(std::move(o));
  }
  j["outcomes"] = std::move(outcomes);
  njson masses = njson::array();
  for (const Rational& v : m.masses()) masses.push_back(fraction_string(v));
  j["masses"] = std::move(masses);
  j["verification"] = report_doc(m.verification());
  return dumped(j);
}

}  // namespace qlp
