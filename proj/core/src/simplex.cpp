// Exact LP machinery: a provenance-tracking Gaussian eliminator for the
// equality rows followed by a dense rational tableau simplex over what is
// left.  Every infeasibility exits through a Farkas certificate phrased in
// the caller's original rows, and the certificate is re-checked before it
// is handed out.

#include "qlp/simplex.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qlp/errors.hpp"

namespace qlp {

bool verify_farkas(const LinearProgram& lp, const FarkasCertificate& cert) {
  if (cert.multipliers.empty()) return false;
  std::vector<Rational> combined(static_cast<std::size_t>(lp.vars), 0);
  Rational rhs = 0;
  for (const auto& [row, mu] : cert.multipliers) {
    if (row >= lp.rows.size()) return false;
    const LinRow& r = lp.rows[row];
    if (r.rel == Rel::ge && mu < 0) return false;
    if (r.rel == Rel::le && mu > 0) return false;
    for (const auto& [v, c] : r.terms) {
      if (v < 0 || v >= lp.vars) return false;
      combined[static_cast<std::size_t>(v)] += mu * c;
    }
    rhs += mu * r.rhs;
  }
  if (rhs <= 0) return false;
  for (const Rational& c : combined)
    if (c > 0) return false;
  return true;
}

namespace {

using Sparse = std::map<int, Rational>;
using Combo = std::map<std::size_t, Rational>;

template <class Map>
void add_scaled(Map& dst, const Map& src, const Rational& s) {
  if (s == 0) return;
  for (const auto& [k, v] : src) {
    auto it = dst.find(k);
    if (it == dst.end()) {
      Rational nv = s * v;
      if (nv != 0) dst.emplace(k, std::move(nv));
    } else {
      it->second += s * v;
      if (it->second == 0) dst.erase(it);
    }
  }
}

struct WorkRow {
  Sparse terms;
  Rel rel = Rel::eq;
  Rational rhs = 0;
  Combo combo;
  enum class Role { eq, ineq, sub, dropped } role = Role::eq;
  int sub_var = -1;
};

}  // namespace

struct LpSolver::Impl {
  LinearProgram lp;
  bool feas = false;
  std::vector<Rational> pt;
  FarkasCertificate cert;

  // Substitutions for eliminated variables, over free original indices:
  // x_p = sub_const[p] + sub_lin[p].f, and the provenance identity
  // x_p - expr_p == sum_r sub_prov[p][r] * (row_r.lhs - row_r.rhs).
  std::vector<char> eliminated;
  std::vector<Rational> sub_const;
  std::vector<Sparse> sub_lin;
  std::vector<Combo> sub_prov;

  std::vector<int> free_list;  // free index -> original var
  std::vector<int> free_of;    // original var -> free index or -1

  struct RRow {
    Sparse terms;  // over free indices
    Rel rel = Rel::ge;
    Rational rhs = 0;
    Combo combo;
    int sign = 1;  // tableau normalization
  };
  std::vector<RRow> rrows;

  // Tableau over columns [free | slacks | artificials], rhs in the last
  // cell of each row.  costrow keeps reduced costs, its last cell is -z.
  std::vector<std::vector<Rational>> T;
  std::vector<Rational> costrow;
  std::vector<int> basis;
  std::vector<int> row_of;  // tableau row -> rrow index
  std::vector<char> banned;
  int nf = 0, nslack = 0, nart = 0, ncols = 0;
  bool bland = false;
  long degenerate_streak = 0;

  explicit Impl(LinearProgram p) : lp(std::move(p)) {
    if (lp.vars < 0) throw std::invalid_argument("negative variable count");
    if (presolve()) solve_feasibility();
  }

  void set_certificate(Combo y) {
    cert.multipliers.assign(y.begin(), y.end());
    if (!verify_farkas(lp, cert))
      throw std::logic_error("internal: infeasibility certificate failed");
    feas = false;
  }

  // Returns false when presolve already settled infeasibility.
  bool presolve() {
    const int n = lp.vars;
    eliminated.assign(static_cast<std::size_t>(n), 0);
    sub_const.assign(static_cast<std::size_t>(n), 0);
    sub_lin.assign(static_cast<std::size_t>(n), {});
    sub_prov.assign(static_cast<std::size_t>(n), {});

    std::vector<WorkRow> work(lp.rows.size());
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      WorkRow& w = work[i];
      for (const auto& [v, c] : lp.rows[i].terms) {
        if (v < 0 || v >= n)
          throw std::invalid_argument("row references unknown variable");
        if (c != 0) {
          auto [it, fresh] = w.terms.emplace(v, c);
          if (!fresh) {
            it->second += c;
            if (it->second == 0) w.terms.erase(it);
          }
        }
      }
      w.rel = lp.rows[i].rel;
      w.rhs = lp.rows[i].rhs;
      w.combo[i] = 1;
      w.role = w.rel == Rel::eq ? WorkRow::Role::eq : WorkRow::Role::ineq;
    }

    for (;;) {
      std::size_t pick = work.size();
      for (std::size_t i = 0; i < work.size(); ++i)
        if (work[i].role == WorkRow::Role::eq &&
            (pick == work.size() ||
             work[i].terms.size() < work[pick].terms.size()))
          pick = i;
      if (pick == work.size()) break;
      WorkRow& piv = work[pick];
      if (piv.terms.empty()) {
        if (piv.rhs == 0) {
          piv.role = WorkRow::Role::dropped;
          continue;
        }
        Combo y = piv.combo;
        if (piv.rhs < 0)
          for (auto& [_, mu] : y) mu = -mu;
        set_certificate(std::move(y));
        return false;
      }
      int p = -1;
      std::size_t best_count = 0;
      for (const auto& [v, c] : piv.terms) {
        (void)c;
        std::size_t count = 0;
        for (const WorkRow& w : work)
          if (&w != &piv && w.role != WorkRow::Role::dropped &&
              w.terms.count(v))
            ++count;
        if (p < 0 || count < best_count) {
          p = v;
          best_count = count;
        }
      }
      const Rational pc = piv.terms.at(p);
      for (WorkRow& w : work) {
        if (&w == &piv || w.role == WorkRow::Role::dropped) continue;
        auto it = w.terms.find(p);
        if (it == w.terms.end()) continue;
        Rational s = -it->second / pc;
        add_scaled(w.terms, piv.terms, s);
        add_scaled(w.combo, piv.combo, s);
        w.rhs += s * piv.rhs;
      }
      piv.role = WorkRow::Role::sub;
      piv.sub_var = p;
      eliminated[static_cast<std::size_t>(p)] = 1;
    }

    free_of.assign(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
      if (!eliminated[static_cast<std::size_t>(v)]) {
        free_of[static_cast<std::size_t>(v)] =
            static_cast<int>(free_list.size());
        free_list.push_back(v);
      }

    for (WorkRow& w : work) {
      if (w.role != WorkRow::Role::sub) continue;
      const int p = w.sub_var;
      const Rational pc = w.terms.at(p);
      sub_const[static_cast<std::size_t>(p)] = w.rhs / pc;
      for (const auto& [v, c] : w.terms)
        if (v != p) sub_lin[static_cast<std::size_t>(p)][v] = -c / pc;
      for (const auto& [r, mu] : w.combo)
        sub_prov[static_cast<std::size_t>(p)][r] = mu / pc;
    }

    auto to_free = [&](const Sparse& terms) {
      Sparse out;
      for (const auto& [v, c] : terms)
        out.emplace(free_of[static_cast<std::size_t>(v)], c);
      return out;
    };
    auto implied_by_bounds = [](const Sparse& terms, Rel rel,
                                const Rational& rhs) {
      if (rel == Rel::ge) {
        if (rhs > 0) return false;
        for (const auto& [v, c] : terms) {
          (void)v;
          if (c < 0) return false;
        }
        return true;
      }
      if (rhs < 0) return false;
      for (const auto& [v, c] : terms) {
        (void)v;
        if (c > 0) return false;
      }
      return true;
    };

    for (WorkRow& w : work) {
      if (w.role != WorkRow::Role::ineq) continue;
      if (w.terms.empty()) {
        bool sat = w.rel == Rel::ge ? w.rhs <= 0 : w.rhs >= 0;
        if (sat) continue;
        Combo y = w.combo;
        if (w.rel == Rel::le)
          for (auto& [_, mu] : y) mu = -mu;
        set_certificate(std::move(y));
        return false;
      }
      if (implied_by_bounds(w.terms, w.rel, w.rhs)) continue;
      rrows.push_back({to_free(w.terms), w.rel, w.rhs, w.combo, 1});
    }

    for (int p = 0; p < n; ++p) {
      if (!eliminated[static_cast<std::size_t>(p)]) continue;
      const auto& lin = sub_lin[static_cast<std::size_t>(p)];
      const Rational& c0 = sub_const[static_cast<std::size_t>(p)];
      bool nonneg = c0 >= 0;
      for (const auto& [v, c] : lin) {
        (void)v;
        if (c < 0) nonneg = false;
      }
      if (nonneg) continue;
      Combo y;
      add_scaled(y, sub_prov[static_cast<std::size_t>(p)], Rational(-1));
      if (lin.empty()) {
        // x_p is a negative constant
        set_certificate(std::move(y));
        return false;
      }
      rrows.push_back({to_free(lin), Rel::ge, -c0, std::move(y), 1});
    }
    return true;
  }

  void pivot(int pr, int pc) {
    std::vector<Rational>& row = T[static_cast<std::size_t>(pr)];
    const Rational d = row[static_cast<std::size_t>(pc)];
    for (Rational& x : row) x /= d;
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (static_cast<int>(i) == pr) continue;
      Rational f = T[i][static_cast<std::size_t>(pc)];
      if (f == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) T[i][j] -= f * row[j];
    }
    Rational f = costrow[static_cast<std::size_t>(pc)];
    if (f != 0)
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) costrow[j] -= f * row[j];
    basis[static_cast<std::size_t>(pr)] = pc;
  }

  // Min problem on the current costrow; returns false on unboundedness.
  bool run_simplex() {
    const long guard = 200 + 4l * (static_cast<long>(T.size()) + ncols);
    for (;;) {
      int pc = -1;
      if (bland) {
        for (int j = 0; j < ncols; ++j)
          if (!banned[static_cast<std::size_t>(j)] &&
              costrow[static_cast<std::size_t>(j)] < 0) {
            pc = j;
            break;
          }
      } else {
        for (int j = 0; j < ncols; ++j)
          if (!banned[static_cast<std::size_t>(j)] &&
              costrow[static_cast<std::size_t>(j)] < 0 &&
              (pc < 0 || costrow[static_cast<std::size_t>(j)] <
                             costrow[static_cast<std::size_t>(pc)]))
            pc = j;
      }
      if (pc < 0) return true;
      int pr = -1;
      for (std::size_t i = 0; i < T.size(); ++i) {
        const Rational& a = T[i][static_cast<std::size_t>(pc)];
        if (a <= 0) continue;
        if (pr < 0) {
          pr = static_cast<int>(i);
          continue;
        }
        const Rational cur = T[static_cast<std::size_t>(pr)].back() /
                             T[static_cast<std::size_t>(pr)]
                              [static_cast<std::size_t>(pc)];
        const Rational cand = T[i].back() / a;
        if (cand < cur ||
            (cand == cur &&
             basis[i] < basis[static_cast<std::size_t>(pr)]))
          pr = static_cast<int>(i);
      }
      if (pr < 0) return false;
      const bool deg =
          T[static_cast<std::size_t>(pr)].back() == 0;
      const int leaving = basis[static_cast<std::size_t>(pr)];
      pivot(pr, pc);
      if (leaving >= nf + nslack) banned[static_cast<std::size_t>(leaving)] = 1;
      if (deg) {
        if (++degenerate_streak > guard) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
    }
  }

  void solve_feasibility() {
    nf = static_cast<int>(free_list.size());
    nslack = 0;
    for (const RRow& r : rrows)
      if (r.rel != Rel::eq) ++nslack;
    nart = static_cast<int>(rrows.size());
    ncols = nf + nslack + nart;

    T.assign(rrows.size(),
             std::vector<Rational>(static_cast<std::size_t>(ncols) + 1, 0));
    basis.assign(rrows.size(), -1);
    row_of.resize(rrows.size());
    banned.assign(static_cast<std::size_t>(ncols), 0);

    int slack = nf;
    for (std::size_t i = 0; i < rrows.size(); ++i) {
      RRow& r = rrows[i];
      row_of[i] = static_cast<int>(i);
      r.sign = r.rhs < 0 ? -1 : 1;
      // flipping a ge row turns its surplus into a plain slack and vice
      // versa; the stored sign restores multipliers afterwards
      for (const auto& [v, c] : r.terms)
        T[i][static_cast<std::size_t>(v)] = r.sign * c;
      if (r.rel != Rel::eq) {
        T[i][static_cast<std::size_t>(slack)] =
            r.sign * (r.rel == Rel::le ? 1 : -1);
        ++slack;
      }
      T[i][static_cast<std::size_t>(nf + nslack) + i] = 1;
      T[i].back() = r.sign * r.rhs;
      basis[i] = nf + nslack + static_cast<int>(i);
    }

    costrow.assign(static_cast<std::size_t>(ncols) + 1, 0);
    for (int j = nf + nslack; j < ncols; ++j)
      costrow[static_cast<std::size_t>(j)] = 1;
    for (const auto& row : T)
      for (std::size_t j = 0; j < row.size(); ++j)
        costrow[j] -= row[j];

    bland = false;
    degenerate_streak = 0;
    if (!run_simplex())
      throw std::logic_error("internal: feasibility phase unbounded");

    if (-costrow.back() > 0) {
      // infeasible; duals come off the artificial columns
      Combo y;
      for (std::size_t i = 0; i < T.size(); ++i) {
        const RRow& r = rrows[static_cast<std::size_t>(row_of[i])];
        Rational yi =
            1 - costrow[static_cast<std::size_t>(nf + nslack) +
                        static_cast<std::size_t>(row_of[i])];
        if (yi == 0) continue;
        add_scaled(y, r.combo, r.sign * yi);
      }
      set_certificate(std::move(y));
      return;
    }

    // drive artificials out, drop dependent rows, cut their columns
    for (std::size_t i = 0; i < T.size();) {
      if (basis[i] < nf + nslack) {
        ++i;
        continue;
      }
      int pc = -1;
      for (int j = 0; j < nf + nslack && pc < 0; ++j)
        if (T[i][static_cast<std::size_t>(j)] != 0) pc = j;
      if (pc >= 0) {
        pivot(static_cast<int>(i), pc);
        ++i;
      } else {
        T.erase(T.begin() + static_cast<std::ptrdiff_t>(i));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        row_of.erase(row_of.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (auto& row : T) {
      row[static_cast<std::size_t>(nf + nslack)] = row.back();
      row.resize(static_cast<std::size_t>(nf + nslack) + 1);
    }
    ncols = nf + nslack;
    banned.assign(static_cast<std::size_t>(ncols), 0);
    costrow.assign(static_cast<std::size_t>(ncols) + 1, 0);

    feas = true;
    pt = reconstruct();
  }

  std::vector<Rational> reconstruct() const {
    std::vector<Rational> f(static_cast<std::size_t>(nf), 0);
    for (std::size_t i = 0; i < T.size(); ++i)
      if (basis[i] < nf) f[static_cast<std::size_t>(basis[i])] = T[i].back();
    std::vector<Rational> x(static_cast<std::size_t>(lp.vars), 0);
    for (int q = 0; q < nf; ++q)
      x[static_cast<std::size_t>(free_list[static_cast<std::size_t>(q)])] =
          f[static_cast<std::size_t>(q)];
    for (int p = 0; p < lp.vars; ++p) {
      if (!eliminated[static_cast<std::size_t>(p)]) continue;
      Rational v = sub_const[static_cast<std::size_t>(p)];
      for (const auto& [q, c] : sub_lin[static_cast<std::size_t>(p)])
        v += c * f[static_cast<std::size_t>(free_of[static_cast<std::size_t>(q)])];
      x[static_cast<std::size_t>(p)] = v;
    }
    return x;
  }

  LpOptimum maximize(const std::vector<Rational>& objective) {
    if (!feas) throw ModelError("maximize called on an infeasible program");
    if (static_cast<int>(objective.size()) != lp.vars)
      throw std::invalid_argument("objective length mismatch");

    Rational base = 0;
    std::vector<Rational> objf(static_cast<std::size_t>(nf), 0);
    for (int v = 0; v < lp.vars; ++v) {
      const Rational& c = objective[static_cast<std::size_t>(v)];
      if (c == 0) continue;
      if (!eliminated[static_cast<std::size_t>(v)]) {
        objf[static_cast<std::size_t>(free_of[static_cast<std::size_t>(v)])] +=
            c;
        continue;
      }
      base += c * sub_const[static_cast<std::size_t>(v)];
      for (const auto& [q, coef] : sub_lin[static_cast<std::size_t>(v)])
        objf[static_cast<std::size_t>(
            free_of[static_cast<std::size_t>(q)])] += c * coef;
    }

    // minimize -objf over the kept basis
    costrow.assign(static_cast<std::size_t>(ncols) + 1, 0);
    for (int j = 0; j < nf; ++j)
      costrow[static_cast<std::size_t>(j)] = -objf[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < T.size(); ++i) {
      Rational cb = basis[i] < nf
                        ? -objf[static_cast<std::size_t>(basis[i])]
                        : Rational(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j < T[i].size(); ++j)
        if (T[i][j] != 0) costrow[j] -= cb * T[i][j];
    }

    bland = false;
    degenerate_streak = 0;
    if (!run_simplex())
      throw std::logic_error("objective unbounded on the feasible region");

    LpOptimum out;
    std::vector<Rational> f(static_cast<std::size_t>(nf), 0);
    for (std::size_t i = 0; i < T.size(); ++i)
      if (basis[i] < nf) f[static_cast<std::size_t>(basis[i])] = T[i].back();
    out.point.assign(static_cast<std::size_t>(lp.vars), 0);
    for (int q = 0; q < nf; ++q)
      out.point[static_cast<std::size_t>(
          free_list[static_cast<std::size_t>(q)])] =
          f[static_cast<std::size_t>(q)];
    for (int p = 0; p < lp.vars; ++p) {
      if (!eliminated[static_cast<std::size_t>(p)]) continue;
      Rational v = sub_const[static_cast<std::size_t>(p)];
      for (const auto& [q, c] : sub_lin[static_cast<std::size_t>(p)])
        v += c * f[static_cast<std::size_t>(free_of[static_cast<std::size_t>(q)])];
      out.point[static_cast<std::size_t>(p)] = v;
    }
    out.value = base + costrow.back();
    return out;
  }
};

LpSolver::LpSolver(LinearProgram lp) : impl_(new Impl(std::move(lp))) {}
LpSolver::~LpSolver() = default;
LpSolver::LpSolver(LpSolver&&) noexcept = default;
LpSolver& LpSolver::operator=(LpSolver&&) noexcept = default;

const LinearProgram& LpSolver::program() const { return impl_->lp; }
bool LpSolver::feasible() const { return impl_->feas; }

const std::vector<Rational>& LpSolver::point() const {
  if (!impl_->feas) throw ModelError("no feasible point");
  return impl_->pt;
}

const FarkasCertificate& LpSolver::certificate() const {
  if (impl_->feas) throw ModelError("program is feasible");
  return impl_->cert;
}

LpOptimum LpSolver::maximize(const std::vector<Rational>& objective) {
  return impl_->maximize(objective);
}

}  // namespace qlp
