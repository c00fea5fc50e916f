#include "qlp/synth.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "qlp/errors.hpp"

namespace qlp {

namespace {

using Sparse = std::map<int, Rational>;

// One LP variable per atom tuple of the block's arity, numbered from offset.
struct VarSpace {
  LatticePtr L;
  int n;
  std::size_t offset;
  std::vector<Element> atoms;
  std::vector<int> pos;  // element id -> index into atoms, -1 otherwise
  std::size_t count = 1;

  VarSpace(LatticePtr lattice, int arity, std::size_t off)
      : L(std::move(lattice)),
        n(arity),
        offset(off),
        atoms(L->atoms()),
        pos(static_cast<std::size_t>(L->size()), -1) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      pos[static_cast<std::size_t>(atoms[i])] = static_cast<int>(i);
    for (int i = 0; i < n; ++i) count *= atoms.size();
  }

  std::size_t index(const Tuple& t) const {
    std::size_t v = 0;
    for (Element e : t)
      v = v * atoms.size() +
          static_cast<std::size_t>(pos[static_cast<std::size_t>(e)]);
    return v;
  }
  int var(const Tuple& t) const { return static_cast<int>(offset + index(t)); }
  Tuple tuple(std::size_t v) const {
    Tuple t(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = atoms[v % atoms.size()];
      v /= atoms.size();
    }
    return t;
  }
};

std::vector<std::vector<Element>> first_decompositions(const Lattice& L) {
  std::vector<std::vector<Element>> fd(static_cast<std::size_t>(L.size()));
  for (Element e = 0; e < L.size(); ++e) {
    auto ds = atom_decompositions(L, e);
    if (ds.empty())
      throw StructuralError("element " + L.label(e) +
                            " has no orthogonal atom decomposition");
    fd[static_cast<std::size_t>(e)] = ds.front();
  }
  return fd;
}

// Adds coeff at every atom tuple in the product of the coordinates' first
// decompositions.  A zero coordinate contributes an empty product.
void expand_into(const VarSpace& vs, const std::vector<std::vector<Element>>& fd,
                 const Tuple& t, const Rational& coeff, Sparse& out) {
  for (int i = 0; i < vs.n; ++i)
    if (fd[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])].empty())
      return;
  Tuple scratch(static_cast<std::size_t>(vs.n));
  std::vector<std::size_t> at(static_cast<std::size_t>(vs.n), 0);
  while (true) {
    for (int i = 0; i < vs.n; ++i)
      scratch[static_cast<std::size_t>(i)] =
          fd[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])]
            [at[static_cast<std::size_t>(i)]];
    out[vs.var(scratch)] += coeff;
    int i = vs.n - 1;
    while (i >= 0 &&
           ++at[static_cast<std::size_t>(i)] ==
               fd[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])]
                   .size()) {
      at[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

LinRow make_row(const Sparse& s, Rel rel, Rational rhs, std::string tag) {
  LinRow r;
  r.rel = rel;
  r.rhs = std::move(rhs);
  r.tag = std::move(tag);
  for (const auto& [v, c] : s)
    if (c != 0) r.terms.emplace_back(v, c);
  return r;
}

std::string set_label(const Lattice& L, const std::vector<Element>& dec) {
  std::string s = "{";
  for (std::size_t i = 0; i < dec.size(); ++i) {
    if (i) s += ",";
    s += L.label(dec[i]);
  }
  return s + "}";
}

// "(a,.,b)" with a dot at coordinate i.
std::string slot_label(const Lattice& L, const Tuple& t, int i) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) s += ",";
    s += (static_cast<int>(k) == i) ? "." : L.label(t[k]);
  }
  return s + ")";
}

// Nonnegativity is implicit; these rows add zero on orthogonal-adjacent
// atom tuples, the consistency identities between decompositions of every
// element in every coordinate, and normalization.
void append_structural(const VarSpace& vs,
                       const std::vector<std::vector<Element>>& fd,
                       const std::string& name, std::vector<LinRow>& rows) {
  const Lattice& L = *vs.L;
  const std::string pre = name.empty() ? std::string() : name + " ";

  for (std::size_t v = 0; v < vs.count; ++v) {
    Tuple t = vs.tuple(v);
    bool zero = false;
    for (int i = 0; i + 1 < vs.n && !zero; ++i)
      if (is_orthogonal(L, t[static_cast<std::size_t>(i)],
                        t[static_cast<std::size_t>(i) + 1]))
        zero = true;
    if (!zero) continue;
    Sparse s;
    s[vs.var(t)] = 1;
    rows.push_back(make_row(s, Rel::eq, 0,
                            pre + "orthogonal p" + tuple_label(L, t) + " = 0"));
  }

  for (Element e = 0; e < L.size(); ++e) {
    auto decs = atom_decompositions(L, e);
    if (decs.size() < 2) continue;
    for (int i = 0; i < vs.n; ++i) {
      std::size_t contexts = 1;
      for (int k = 0; k < vs.n; ++k)
        if (k != i) contexts *= vs.atoms.size();
      for (std::size_t c = 0; c < contexts; ++c) {
        Tuple ctx(static_cast<std::size_t>(vs.n), L.zero());
        std::size_t rest = c;
        for (int k = vs.n - 1; k >= 0; --k) {
          if (k == i) continue;
          ctx[static_cast<std::size_t>(k)] = vs.atoms[rest % vs.atoms.size()];
          rest /= vs.atoms.size();
        }
        for (std::size_t l = 0; l + 1 < decs.size(); ++l) {
          Sparse s;
          for (Element a : decs[l]) {
            ctx[static_cast<std::size_t>(i)] = a;
            s[vs.var(ctx)] += 1;
          }
          for (Element a : decs[l + 1]) {
            ctx[static_cast<std::size_t>(i)] = a;
            s[vs.var(ctx)] -= 1;
          }
          LinRow r = make_row(
              s, Rel::eq, 0,
              pre + "consistency p" + slot_label(L, ctx, i) + ": " +
                  L.label(e) + " via " + set_label(L, decs[l]) + " and " +
                  set_label(L, decs[l + 1]));
          if (!r.terms.empty()) rows.push_back(std::move(r));
        }
      }
    }
  }

  Sparse s;
  expand_into(vs, fd, Tuple(static_cast<std::size_t>(vs.n), L.one()), 1, s);
  rows.push_back(make_row(
      s, Rel::eq, 1,
      pre + "normalization p" +
          tuple_label(L, Tuple(static_cast<std::size_t>(vs.n), L.one())) +
          " = 1"));
}

void check_tuple(const Lattice& L, const Tuple& t, int n) {
  if (static_cast<int>(t.size()) != n)
    throw StructuralError("constraint tuple has arity " +
                          std::to_string(t.size()) + ", expected " +
                          std::to_string(n));
  for (Element e : t)
    if (e < 0 || e >= L.size())
      throw StructuralError("constraint tuple mentions an unknown element");
}

SMap extend_block(const VarSpace& vs, const std::vector<Rational>& point) {
  PartialSMap q(vs.L, vs.n);
  for (std::size_t v = 0; v < vs.count; ++v)
    q.set(vs.tuple(v), point.at(vs.offset + v));
  Completion done = complete(q);
  if (done.status != Completion::Status::complete)
    throw std::logic_error(
        "feasible atom assignment failed to extend to a full table");
  return *std::move(done.table);
}

FeasibilityResult infeasible_result(const LpSolver& solver) {
  const LinearProgram& full = solver.program();
  auto mults = solver.certificate().multipliers;
  std::sort(mults.begin(), mults.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  InfeasibilityCertificate cert;
  cert.subset.vars = full.vars;
  for (const auto& [row, mu] : mults) {
    if (mu == 0) continue;
    cert.farkas.multipliers.emplace_back(cert.subset.rows.size(), mu);
    cert.subset.rows.push_back(full.rows.at(row));
  }
  if (!verify_certificate(cert))
    throw std::logic_error("infeasibility certificate failed re-verification");
  FeasibilityResult r;
  r.certificate = std::move(cert);
  return r;
}

struct Asymmetry {
  Tuple tuple, permuted;
  Rational gap;
  std::vector<Rational> point;
};

// Candidates are atom tuples with pairwise distinct, pairwise incompatible
// entries; every other tuple is permutation-invariant for every valid map.
std::optional<Asymmetry> search_asymmetry(LpSolver& solver,
                                          const VarSpace& vs) {
  const Lattice& L = *vs.L;
  const std::size_t nvars = static_cast<std::size_t>(solver.program().vars);
  for (std::size_t v = 0; v < vs.count; ++v) {
    Tuple t = vs.tuple(v);
    bool candidate = true;
    for (int i = 0; i < vs.n && candidate; ++i)
      for (int j = i + 1; j < vs.n && candidate; ++j)
        if (t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(j)] ||
            is_compatible(L, t[static_cast<std::size_t>(i)],
                          t[static_cast<std::size_t>(j)]))
          candidate = false;
    if (!candidate) continue;
    for (const Tuple& u : tuple_permutations(t)) {
      if (u == t) continue;
      std::vector<Rational> obj(nvars, Rational(0));
      obj[vs.offset + v] = 1;
      obj[vs.offset + vs.index(u)] = -1;
      LpOptimum best = solver.maximize(obj);
      if (best.value > 0)
        return Asymmetry{t, u, best.value, std::move(best.point)};
    }
  }
  return std::nullopt;
}

}  // namespace

bool verify_certificate(const InfeasibilityCertificate& c) {
  return verify_farkas(c.subset, c.farkas);
}

std::string certificate_text(const InfeasibilityCertificate& c) {
  std::ostringstream os;
  os << "infeasible: the following constraints cannot hold together\n";
  Rational rhs = 0;
  for (const auto& [row, mu] : c.farkas.multipliers) {
    const LinRow& r = c.subset.rows.at(row);
    os << "  [" << fraction_string(mu) << "] " << r.tag << "\n";
    rhs += mu * r.rhs;
  }
  os << "weighted by the bracketed multipliers, the variable coefficients "
        "combine to at most zero while the right-hand sides combine to "
     << fraction_string(rhs)
     << " > 0, which no nonnegative assignment satisfies\n";
  return os.str();
}

FeasibilityResult synthesize(const LatticePtr& L, int arity,
                             const ConstraintSet& c) {
  if (!L) throw StructuralError("no lattice given");
  if (arity < 1) throw StructuralError("arity must be at least 1");
  VarSpace vs(L, arity, 0);
  auto fd = first_decompositions(*L);
  std::vector<LinRow> rows;
  append_structural(vs, fd, "", rows);

  for (const auto& [t, val] : c.fixed) {
    check_tuple(*L, t, arity);
    if (val < 0 || val > 1)
      throw StructuralError("fixed value " + fraction_string(val) +
                            " for p" + tuple_label(*L, t) +
                            " lies outside [0,1]");
    Sparse s;
    expand_into(vs, fd, t, 1, s);
    rows.push_back(make_row(s, Rel::eq, val,
                            "given p" + tuple_label(*L, t) + " = " +
                                fraction_string(val)));
  }

  if (c.diagonal) {
    if (!c.diagonal->lattice()->same_structure(*L))
      throw StructuralError("diagonal state lives on a different lattice");
    for (Element e = 0; e < L->size(); ++e) {
      Sparse s;
      expand_into(vs, fd, Tuple(static_cast<std::size_t>(arity), e), 1, s);
      rows.push_back(make_row(s, Rel::eq, c.diagonal->value(e),
                              "state nu(" + L->label(e) + ") = " +
                                  fraction_string(c.diagonal->value(e))));
    }
  }

  if (c.symmetry == SymmetryMode::require) {
    for (std::size_t v = 0; v < vs.count; ++v) {
      Tuple t = vs.tuple(v);
      for (int i = 0; i + 1 < arity; ++i) {
        if (t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(i) + 1])
          continue;
        Tuple u = t;
        std::swap(u[static_cast<std::size_t>(i)],
                  u[static_cast<std::size_t>(i) + 1]);
        if (vs.index(u) < v) continue;
        Sparse s;
        s[vs.var(t)] += 1;
        s[vs.var(u)] -= 1;
        rows.push_back(make_row(s, Rel::eq, 0,
                                "symmetry p" + tuple_label(*L, t) + " = p" +
                                    tuple_label(*L, u)));
      }
    }
  }

  int k = 0;
  for (const auto& lc : c.linear) {
    ++k;
    Sparse s;
    for (const auto& [t, coeff] : lc.terms) {
      check_tuple(*L, t, arity);
      expand_into(vs, fd, t, coeff, s);
    }
    rows.push_back(make_row(
        s, lc.rel, lc.rhs,
        lc.name.empty() ? "constraint " + std::to_string(k) : lc.name));
  }

  LinearProgram prog;
  prog.vars = static_cast<int>(vs.count);
  prog.rows = std::move(rows);
  LpSolver solver(std::move(prog));
  if (!solver.feasible()) return infeasible_result(solver);

  if (c.symmetry == SymmetryMode::forbid) {
    auto found = search_asymmetry(solver, vs);
    if (!found) {
      FeasibilityResult r;
      r.note =
          "every s-map satisfying the remaining constraints is "
          "permutation-invariant, so the asymmetry requirement cannot be met";
      return r;
    }
    FeasibilityResult r;
    r.feasible = true;
    r.witness = extend_block(vs, found->point);
    return r;
  }

  FeasibilityResult r;
  r.feasible = true;
  r.witness = extend_block(vs, solver.point());
  return r;
}

std::optional<NoncommutativityWitness> find_noncommutative(const LatticePtr& L,
                                                           int arity) {
  if (!L) throw StructuralError("no lattice given");
  if (arity < 1) throw StructuralError("arity must be at least 1");
  VarSpace vs(L, arity, 0);
  auto fd = first_decompositions(*L);
  std::vector<LinRow> rows;
  append_structural(vs, fd, "", rows);
  LinearProgram prog;
  prog.vars = static_cast<int>(vs.count);
  prog.rows = std::move(rows);
  LpSolver solver(std::move(prog));
  if (!solver.feasible()) return std::nullopt;
  auto found = search_asymmetry(solver, vs);
  if (!found) return std::nullopt;
  return NoncommutativityWitness{extend_block(vs, found->point), found->tuple,
                                 found->permuted, found->gap};
}

std::optional<MarginalViolation> find_marginal_violation(const LatticePtr& L,
                                                         int arity) {
  if (!L) throw StructuralError("no lattice given");
  if (arity < 1) throw StructuralError("arity must be at least 1");
  VarSpace X(L, arity, 0);
  VarSpace Y(L, arity + 1, X.count);
  auto fd = first_decompositions(*L);
  std::vector<LinRow> rows;
  append_structural(X, fd, "p" + std::to_string(arity), rows);
  append_structural(Y, fd, "p" + std::to_string(arity + 1), rows);
  for (Element a : X.atoms) {
    Sparse s;
    s[X.var(Tuple(static_cast<std::size_t>(arity), a))] += 1;
    s[Y.var(Tuple(static_cast<std::size_t>(arity) + 1, a))] -= 1;
    rows.push_back(
        make_row(s, Rel::eq, 0, "equal derived state at " + L->label(a)));
  }
  LinearProgram prog;
  prog.vars = static_cast<int>(X.count + Y.count);
  prog.rows = std::move(rows);
  LpSolver solver(std::move(prog));
  if (!solver.feasible()) return std::nullopt;

  const auto& unit_dec = fd[static_cast<std::size_t>(L->one())];
  for (std::size_t v = 0; v < X.count; ++v) {
    Tuple t = X.tuple(v);
    std::vector<Rational> obj(X.count + Y.count, Rational(0));
    obj[v] = 1;
    Tuple ext = t;
    ext.push_back(L->zero());
    for (Element b : unit_dec) {
      ext.back() = b;
      obj[Y.offset + Y.index(ext)] -= 1;
    }
    for (int sign : {1, -1}) {
      if (sign < 0)
        for (auto& x : obj) x = -x;
      LpOptimum best = solver.maximize(obj);
      if (best.value > 0) {
        SMap pn = extend_block(X, best.point);
        SMap pm = extend_block(Y, best.point);
        if (derived_state(pn).values() != derived_state(pm).values())
          throw std::logic_error("derived states diverged in a linked optimum");
        return MarginalViolation{std::move(pn), std::move(pm), t, best.value};
      }
    }
  }
  return std::nullopt;
}

ConverseProbe probe_marginal_converse(const LatticePtr& L, int arity) {
  if (!L) throw StructuralError("no lattice given");
  if (arity < 1) throw StructuralError("arity must be at least 1");
  VarSpace X(L, arity, 0);
  VarSpace Y(L, arity + 1, X.count);
  auto fd = first_decompositions(*L);
  std::vector<LinRow> rows;
  append_structural(X, fd, "p" + std::to_string(arity), rows);
  append_structural(Y, fd, "p" + std::to_string(arity + 1), rows);
  // Pinning atom tuples pins every tuple: both sides expand additively over
  // the same atom products.
  const auto& unit_dec = fd[static_cast<std::size_t>(L->one())];
  for (std::size_t v = 0; v < X.count; ++v) {
    Tuple t = X.tuple(v);
    Sparse s;
    s[X.var(t)] += 1;
    Tuple ext = t;
    ext.push_back(L->zero());
    for (Element b : unit_dec) {
      ext.back() = b;
      s[Y.var(ext)] -= 1;
    }
    Tuple full = t;
    full.push_back(L->one());
    rows.push_back(make_row(s, Rel::eq, 0,
                            "margin p" + tuple_label(*L, t) + " = p" +
                                tuple_label(*L, full)));
  }
  LinearProgram prog;
  prog.vars = static_cast<int>(X.count + Y.count);
  prog.rows = std::move(rows);
  LpSolver solver(std::move(prog));

  ConverseProbe out;
  if (!solver.feasible()) {
    out.summary = "no map pair satisfies the margin constraints at all";
    return out;
  }
  auto found = search_asymmetry(solver, X);
  if (!found) {
    out.summary =
        "no asymmetric lower map exists: pinning p(t) = p(t,1) for every "
        "tuple forces permutation invariance (every candidate gap maximizes "
        "to 0)";
    return out;
  }
  out.asymmetric_feasible = true;
  out.pn = extend_block(X, found->point);
  out.pm = extend_block(Y, found->point);
  out.tuple = found->tuple;
  out.permuted = found->permuted;
  out.gap = found->gap;
  out.summary = "found maps with matching margins and an asymmetric lower "
                "map at p" +
                tuple_label(*L, found->tuple);
  return out;
}

}  // namespace qlp
