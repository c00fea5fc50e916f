#include "qlp/distribution.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "qlp/errors.hpp"
#include "qlp/state.hpp"

namespace qlp {

namespace {

std::string count_suffix(std::size_t more) {
  return more ? " (+" + std::to_string(more) + " more)" : "";
}

std::string rs_label(const std::vector<Rational>& rs) {
  std::string s = "(";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i) s += ",";
    s += fraction_string(rs[i]);
  }
  return s + ")";
}

// Lexicographic odometer; returns false after the last combination.
bool advance(std::vector<std::size_t>& at,
             const std::vector<std::size_t>& radix) {
  int i = static_cast<int>(at.size()) - 1;
  while (i >= 0 && ++at[static_cast<std::size_t>(i)] ==
                       radix[static_cast<std::size_t>(i)]) {
    at[static_cast<std::size_t>(i)] = 0;
    --i;
  }
  return i >= 0;
}

struct FailTally {
  bool ok = true;
  std::string first;
  std::size_t more = 0;

  void fail(const std::string& witness) {
    if (ok) {
      ok = false;
      first = witness;
    } else {
      ++more;
    }
  }
  void record(Report& rep, const std::string& name) const {
    rep.add(name, ok, ok ? "" : first + count_suffix(more));
  }
};

}  // namespace

JointDistribution::JointDistribution(SMap p, std::vector<Observable> xs)
    : p_(std::move(p)), xs_(std::move(xs)) {
  if (static_cast<std::size_t>(p_.arity()) != xs_.size())
    throw std::invalid_argument(
        "the s-map has arity " + std::to_string(p_.arity()) + " but " +
        std::to_string(xs_.size()) + " observables were given");
  for (const auto& x : xs_)
    if (!x.lattice()->same_structure(*p_.lattice()))
      throw std::invalid_argument(
          "observable lives on a different lattice than the s-map");
}

Rational joint(const JointDistribution& d, const std::vector<BorelSet>& Es) {
  const auto& xs = d.observables();
  if (Es.size() != xs.size())
    throw std::invalid_argument("expected " + std::to_string(xs.size()) +
                                " Borel sets, got " + std::to_string(Es.size()));
  Tuple t(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) t[i] = xs[i].apply(Es[i]);
  return d.map().value(t);
}

Rational F(const JointDistribution& d, const std::vector<Rational>& rs) {
  const auto& xs = d.observables();
  if (rs.size() != xs.size())
    throw std::invalid_argument("expected " + std::to_string(xs.size()) +
                                " arguments, got " + std::to_string(rs.size()));
  Tuple t(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    t[i] = xs[i].apply(BorelSet::below(rs[i]));
  return d.map().value(t);
}

Rational marginal_F(const JointDistribution& d, const std::vector<Rational>& rs,
                    const std::vector<int>& drop) {
  const auto& xs = d.observables();
  if (rs.size() != xs.size())
    throw std::invalid_argument("expected " + std::to_string(xs.size()) +
                                " arguments, got " + std::to_string(rs.size()));
  std::vector<bool> dropped(xs.size(), false);
  for (int i : drop) {
    if (i < 0 || static_cast<std::size_t>(i) >= xs.size())
      throw std::invalid_argument("dropped coordinate " + std::to_string(i) +
                                  " is out of range");
    dropped[static_cast<std::size_t>(i)] = true;
  }
  const Element one = d.map().lattice()->one();
  Tuple t(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    t[i] = dropped[i] ? one : xs[i].apply(BorelSet::below(rs[i]));
  return d.map().value(t);
}

std::vector<Rational> evaluation_grid(const Observable& x) {
  std::vector<Rational> grid;
  grid.push_back(x.spectrum().front() - 1);
  for (const Rational& s : x.spectrum()) grid.push_back(s);
  grid.push_back(x.spectrum().back() + 1);
  return grid;
}

Report check_F_properties(const JointDistribution& d) {
  const SMap& p = d.map();
  const auto& xs = d.observables();
  const std::size_t n = xs.size();

  std::vector<std::vector<Rational>> grids;
  std::vector<std::vector<Element>> elems(n);
  std::vector<std::size_t> radix(n);
  for (std::size_t i = 0; i < n; ++i) {
    grids.push_back(evaluation_grid(xs[i]));
    for (const Rational& r : grids[i])
      elems[i].push_back(xs[i].apply(BorelSet::below(r)));
    radix[i] = grids[i].size();
  }

  bool compatible_pair = false;
  for (std::size_t i = 0; i < n && !compatible_pair; ++i)
    for (std::size_t j = i + 1; j < n && !compatible_pair; ++j)
      if (observables_compatible(xs[i], xs[j])) compatible_pair = true;

  FailTally bounds, monotone, upper, lower, perms;
  std::vector<std::size_t> at(n, 0);
  Tuple t(n);
  std::vector<Rational> rs(n);
  do {
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = elems[i][at[i]];
      rs[i] = grids[i][at[i]];
    }
    const Rational v = p.value(t);

    if (v < 0 || v > 1)
      bounds.fail("F" + rs_label(rs) + " = " + fraction_string(v));

    for (std::size_t i = 0; i < n; ++i) {
      if (at[i] + 1 < radix[i]) {
        Tuple u = t;
        u[i] = elems[i][at[i] + 1];
        const Rational w = p.value(u);
        if (v > w) {
          std::vector<Rational> qs = rs;
          qs[i] = grids[i][at[i] + 1];
          monotone.fail("F" + rs_label(rs) + " = " + fraction_string(v) +
                        " exceeds F" + rs_label(qs) + " = " +
                        fraction_string(w));
        }
      }

      Tuple u = t;
      u[i] = elems[i][radix[i] - 1];
      std::vector<Rational> qs = rs;
      qs[i] = grids[i][radix[i] - 1];
      const Rational at_top = p.value(u);
      const Rational via_marginal = marginal_F(d, rs, {static_cast<int>(i)});
      if (at_top != via_marginal)
        upper.fail("F" + rs_label(qs) + " = " + fraction_string(at_top) +
                   " but the marginal over coordinate " + std::to_string(i + 1) +
                   " at " + rs_label(rs) + " is " +
                   fraction_string(via_marginal));

      u[i] = elems[i][0];
      qs[i] = grids[i][0];
      const Rational at_bottom = p.value(u);
      if (at_bottom != 0)
        lower.fail("F" + rs_label(qs) + " = " + fraction_string(at_bottom));
    }

    if (compatible_pair) {
      for (const Tuple& u : tuple_permutations(t)) {
        if (u == t) continue;
        if (p.value(u) != v)
          perms.fail("p" + tuple_label(*p.lattice(), t) + " = " +
                     fraction_string(v) + " but p" +
                     tuple_label(*p.lattice(), u) + " = " +
                     fraction_string(p.value(u)));
      }
    }
  } while (advance(at, radix));

  Report rep;
  bounds.record(rep, "F.bounds");
  monotone.record(rep, "F.monotone");
  upper.record(rep, "F.upper-limit");
  lower.record(rep, "F.lower-limit");
  perms.record(rep, "F.compatible-permutation");
  return rep;
}

CommutativityReport check_commutativity(const JointDistribution& d) {
  const SMap& p = d.map();
  const auto& xs = d.observables();
  const std::size_t n = xs.size();
  std::vector<std::size_t> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = xs[i].spectrum().size();

  std::set<std::pair<Tuple, Tuple>> pairs;
  std::vector<std::size_t> at(n, 0);
  Tuple t(n);
  do {
    for (std::size_t i = 0; i < n; ++i) t[i] = xs[i].element_at(at[i]);
    const Rational v = p.value(t);
    for (const Tuple& u : tuple_permutations(t)) {
      if (u == t) continue;
      if (p.value(u) != v) pairs.insert({std::min(t, u), std::max(t, u)});
    }
  } while (advance(at, radix));

  CommutativityReport out;
  for (const auto& [lo, hi] : pairs)
    out.violations.push_back({lo, hi, p.value(lo), p.value(hi)});
  out.commutative = out.violations.empty();
  return out;
}

Rational ClassicalModel::P(const std::vector<std::size_t>& outcome_indices) const {
  std::set<std::size_t> uniq(outcome_indices.begin(), outcome_indices.end());
  Rational s = 0;
  for (std::size_t w : uniq) s += masses_.at(w);
  return s;
}

Rational ClassicalModel::coordinate_below(int i, const Rational& r) const {
  if (outcomes_.empty()) return 0;
  if (i < 0 || static_cast<std::size_t>(i) >= outcomes_.front().size())
    throw std::invalid_argument("coordinate " + std::to_string(i) +
                                " is out of range");
  Rational s = 0;
  for (std::size_t w = 0; w < outcomes_.size(); ++w)
    if (outcomes_[w][static_cast<std::size_t>(i)] < r) s += masses_[w];
  return s;
}

Rational ClassicalModel::F(const std::vector<Rational>& rs) const {
  if (outcomes_.empty()) return 0;
  if (rs.size() != outcomes_.front().size())
    throw std::invalid_argument("expected " +
                                std::to_string(outcomes_.front().size()) +
                                " arguments, got " + std::to_string(rs.size()));
  Rational s = 0;
  for (std::size_t w = 0; w < outcomes_.size(); ++w) {
    bool in = true;
    for (std::size_t i = 0; i < rs.size() && in; ++i)
      if (!(outcomes_[w][i] < rs[i])) in = false;
    if (in) s += masses_[w];
  }
  return s;
}

ClassicalModel classical_model(const JointDistribution& d) {
  const SMap& p = d.map();
  const auto& xs = d.observables();
  const std::size_t n = xs.size();
  std::vector<std::size_t> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = xs[i].spectrum().size();

  ClassicalModel m;
  Rational total = 0;
  std::vector<std::size_t> at(n, 0);
  do {
    std::vector<Rational> omega(n);
    Tuple t(n);
    for (std::size_t i = 0; i < n; ++i) {
      omega[i] = xs[i].spectrum()[at[i]];
      t[i] = xs[i].element_at(at[i]);
    }
    Rational mass = p.value(t);
    if (mass < 0)
      throw ModelError("classical model: point mass at " + rs_label(omega) +
                       " is " + fraction_string(mass) +
                       ", violating nonnegativity of P");
    total += mass;
    m.outcomes_.push_back(std::move(omega));
    m.masses_.push_back(std::move(mass));
  } while (advance(at, radix));
  if (total != 1)
    throw ModelError("classical model: total mass is " +
                     fraction_string(total) + ", violating P(Omega) = 1");
  m.checks_.add("model.nonnegative-masses", true);
  m.checks_.add("model.total-mass", true);

  const State nu = derived_state(p);
  FailTally law;
  for (std::size_t i = 0; i < n; ++i)
    for (const Rational& r : evaluation_grid(xs[i])) {
      const Rational lhs = m.coordinate_below(static_cast<int>(i), r);
      const Rational rhs = nu.value(xs[i].apply(BorelSet::below(r)));
      if (lhs != rhs)
        law.fail("P(xi_" + std::to_string(i + 1) + " < " + fraction_string(r) +
                 ") = " + fraction_string(lhs) + " but nu gives " +
                 fraction_string(rhs));
    }
  law.record(m.checks_, "model.coordinate-law");

  FailTally dist;
  std::vector<std::vector<Rational>> grids;
  std::vector<std::size_t> gradix(n);
  for (std::size_t i = 0; i < n; ++i) {
    grids.push_back(evaluation_grid(xs[i]));
    gradix[i] = grids[i].size();
  }
  std::vector<std::size_t> gat(n, 0);
  std::vector<Rational> rs(n);
  do {
    for (std::size_t i = 0; i < n; ++i) rs[i] = grids[i][gat[i]];
    const Rational lhs = m.F(rs);
    const Rational rhs = F(d, rs);
    if (lhs != rhs)
      dist.fail("model F" + rs_label(rs) + " = " + fraction_string(lhs) +
                " but F" + rs_label(rs) + " = " + fraction_string(rhs));
  } while (advance(gat, gradix));
  dist.record(m.checks_, "model.distribution-function");

  return m;
}

}  // namespace qlp
