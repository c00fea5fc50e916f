// Closure of a partial s-map table.  Cells related by unit replacement or by
// permutation of a repeated coordinate always share one value, so they are
// merged into classes up front; values then flow through the class graph via
// orthogonal-pair zeroes and additivity equations over atom decompositions
// until nothing changes, a conflict surfaces, or free classes remain.

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "qlp/errors.hpp"
#include "qlp/smap.hpp"

namespace qlp {

namespace {

struct Derivation {
  std::string rule;                  // given | unit | orthogonal-zero | additivity
  std::size_t at = 0;                // cell where the rule fired
  std::vector<std::size_t> premises; // cells whose values fed the result
  std::string note;                  // human-readable rule context
};

struct Engine {
  const PartialSMap& q;
  const Lattice& L;
  int m, n;
  std::size_t cells;

  std::vector<std::size_t> parent;
  std::vector<std::optional<Rational>> value;  // per root
  std::vector<Derivation> how;                 // per root

  struct Equation {
    std::size_t target;
    std::vector<std::size_t> terms;
    std::string note;
  };
  std::vector<Equation> equations;
  std::vector<std::vector<std::size_t>> watchers;  // root -> equation ids
  std::deque<std::size_t> queue;
  std::vector<bool> queued;

  bool conflict_found = false;
  std::string conflict_text;

  explicit Engine(const PartialSMap& q_)
      : q(q_),
        L(*q_.lattice()),
        m(L.size()),
        n(q_.arity()),
        cells(tuple_count(m, n)) {}

  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::string cell_text(std::size_t idx) {
    return "p" + tuple_label(L, tuple_at(m, n, idx));
  }

  void build_classes() {
    parent.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) parent[i] = i;
    for (std::size_t idx = 0; idx < cells; ++idx) {
      Tuple t = tuple_at(m, n, idx);
      bool repeated = false;
      for (int i = 0; i < n; ++i) {
        if (t[i] == L.one())
          for (int j = 0; j < n; ++j)
            if (j != i)
              unite(idx, tuple_index(m, tuple_replace(t, i, j)));
        for (int j = i + 1; j < n; ++j)
          if (t[i] == t[j]) repeated = true;
      }
      if (repeated)
        for (const Tuple& u : tuple_permutations(t))
          unite(idx, tuple_index(m, u));
    }
  }

  void build_equations() {
    std::set<std::pair<std::size_t, std::vector<std::size_t>>> seen;
    std::vector<std::vector<std::vector<Element>>> decomps(m);
    for (Element e = 0; e < m; ++e) decomps[e] = atom_decompositions(L, e);
    for (std::size_t idx = 0; idx < cells; ++idx) {
      Tuple t = tuple_at(m, n, idx);
      for (int i = 0; i < n; ++i) {
        for (const auto& dec : decomps[t[i]]) {
          if (dec.size() == 1 && dec[0] == t[i]) continue;
          Equation eq;
          eq.target = idx;
          std::string atoms;
          for (Element a : dec) {
            Tuple u = t;
            u[i] = a;
            eq.terms.push_back(tuple_index(m, u));
            if (!atoms.empty()) atoms += ",";
            atoms += L.label(a);
          }
          eq.note = "additivity at coordinate " + std::to_string(i + 1) +
                    ", " + L.label(t[i]) + " = v{" + atoms + "}";
          std::vector<std::size_t> key;
          key.push_back(find(eq.target));
          for (std::size_t term : eq.terms) key.push_back(find(term));
          std::sort(key.begin() + 1, key.end());
          if (seen.emplace(key[0], std::vector<std::size_t>(key.begin() + 1,
                                                            key.end()))
                  .second)
            equations.push_back(std::move(eq));
        }
      }
    }
  }

  void enqueue(std::size_t eq_id) {
    if (!queued[eq_id]) {
      queued[eq_id] = true;
      queue.push_back(eq_id);
    }
  }

  void assign(std::size_t cell, const Rational& v, Derivation d) {
    if (conflict_found) return;
    std::size_t root = find(cell);
    if (value[root]) {
      if (*value[root] != v) report_conflict(cell, root, v, d);
      return;
    }
    value[root] = v;
    how[root] = std::move(d);
    for (std::size_t eq_id : watchers[root]) enqueue(eq_id);
  }

  void render_chain(std::ostream& out, std::size_t cell, int depth,
                    std::set<std::size_t>& printed) {
    std::size_t root = find(cell);
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (!value[root]) {
      out << pad << cell_text(cell) << " unknown\n";
      return;
    }
    const Derivation& d = how[root];
    out << pad << cell_text(cell) << " = " << fraction_string(*value[root]);
    if (find(d.at) == root && d.at != cell)
      out << "  [class of " << cell_text(d.at) << "]";
    out << "  [" << d.rule;
    if (!d.note.empty()) out << ": " << d.note;
    out << "]\n";
    if (!printed.insert(root).second) return;
    if (depth >= 8) return;
    for (std::size_t prem : d.premises)
      render_chain(out, prem, depth + 1, printed);
  }

  void report_conflict(std::size_t cell, std::size_t root, const Rational& v,
                       const Derivation& d) {
    conflict_found = true;
    std::ostringstream out;
    out << "contradiction at " << cell_text(cell) << ": "
        << fraction_string(*value[root]) << " vs " << fraction_string(v)
        << "\n";
    out << "first derivation:\n";
    std::set<std::size_t> printed;
    render_chain(out, cell, 1, printed);
    out << "second derivation:\n";
    std::string pad(2, ' ');
    out << pad << cell_text(cell) << " = " << fraction_string(v) << "  ["
        << d.rule;
    if (!d.note.empty()) out << ": " << d.note;
    out << "]\n";
    printed.clear();
    printed.insert(root);
    for (std::size_t prem : d.premises) render_chain(out, prem, 2, printed);
    conflict_text = out.str();
  }

  void seed() {
    // unit cell
    assign(tuple_index(m, Tuple(n, L.one())), 1,
           {"unit", tuple_index(m, Tuple(n, L.one())), {}, ""});
    // any-position orthogonal pair forces zero
    for (std::size_t idx = 0; idx < cells && !conflict_found; ++idx) {
      Tuple t = tuple_at(m, n, idx);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (is_orthogonal(L, t[i], t[j])) {
            assign(idx, 0,
                   {"orthogonal-zero", idx, {},
                    L.label(t[i]) + " _|_ " + L.label(t[j]) +
                        " at coordinates (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ")"});
            i = n;
            break;
          }
    }
    for (const auto& [t, v] : q.entries()) {
      if (conflict_found) break;
      assign(tuple_index(m, t), v, {"given", tuple_index(m, t), {}, ""});
    }
  }

  void propagate() {
    while (!queue.empty() && !conflict_found) {
      std::size_t eq_id = queue.front();
      queue.pop_front();
      queued[eq_id] = false;
      const Equation& eq = equations[eq_id];

      std::size_t target_root = find(eq.target);
      Rational sum = 0;
      std::size_t unknown_term = cells;  // sentinel
      int unknowns = 0;
      for (std::size_t term : eq.terms) {
        std::size_t r = find(term);
        if (value[r])
          sum += *value[r];
        else {
          ++unknowns;
          unknown_term = term;
        }
      }
      if (value[target_root]) {
        if (unknowns == 0) {
          if (*value[target_root] != sum) {
            Derivation d{"additivity", eq.target, eq.terms, eq.note};
            report_conflict(eq.target, target_root, sum, d);
          }
        } else if (unknowns == 1) {
          std::vector<std::size_t> premises{eq.target};
          for (std::size_t term : eq.terms)
            if (find(term) != find(unknown_term)) premises.push_back(term);
          assign(unknown_term, *value[target_root] - sum,
                 {"additivity", unknown_term, premises,
                  eq.note + ", solved for " + cell_text(unknown_term)});
        }
      } else if (unknowns == 0) {
        assign(eq.target, sum, {"additivity", eq.target, eq.terms, eq.note});
      }
    }
  }

  Completion run(std::optional<std::uint64_t> shuffle_seed) {
    build_classes();
    value.assign(cells, std::nullopt);
    how.assign(cells, {});
    build_equations();
    if (shuffle_seed) {
      std::mt19937_64 rng(*shuffle_seed);
      std::shuffle(equations.begin(), equations.end(), rng);
    }
    watchers.assign(cells, {});
    queued.assign(equations.size(), false);
    for (std::size_t id = 0; id < equations.size(); ++id) {
      std::set<std::size_t> roots;
      roots.insert(find(equations[id].target));
      for (std::size_t term : equations[id].terms) roots.insert(find(term));
      for (std::size_t r : roots) watchers[r].push_back(id);
      enqueue(id);
    }

    seed();
    propagate();

    Completion out;
    if (conflict_found) {
      out.status = Completion::Status::inconsistent;
      out.conflict = conflict_text;
      return out;
    }

    std::set<std::size_t> unknown_roots;
    for (std::size_t idx = 0; idx < cells; ++idx)
      if (!value[find(idx)]) unknown_roots.insert(find(idx));
    if (!unknown_roots.empty()) {
      out.status = Completion::Status::underdetermined;
      std::vector<std::size_t> reps(unknown_roots.begin(),
                                    unknown_roots.end());
      std::sort(reps.begin(), reps.end());
      for (std::size_t r : reps) out.free_tuples.push_back(tuple_at(m, n, r));
      return out;
    }

    std::vector<Rational> table(cells);
    for (std::size_t idx = 0; idx < cells; ++idx) table[idx] = *value[find(idx)];
    SMap result(q.lattice(), n, std::move(table));
    out.revalidation = validate(result);
    if (!out.revalidation.ok()) {
      out.status = Completion::Status::inconsistent;
      out.conflict =
          "closure produced a table that fails the axioms:\n" +
          out.revalidation.to_text();
      return out;
    }
    out.status = Completion::Status::complete;
    out.table = std::move(result);
    return out;
  }
};

}  // namespace

Completion complete(const PartialSMap& q) {
  return Engine(q).run(std::nullopt);
}

Completion complete(const PartialSMap& q, std::uint64_t shuffle_seed) {
  return Engine(q).run(shuffle_seed);
}

}  // namespace qlp
