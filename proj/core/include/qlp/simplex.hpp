#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qlp/rational.hpp"

namespace qlp {

enum class Rel { eq, le, ge };

struct LinRow {
  std::vector<std::pair<int, Rational>> terms;  // variable index, coefficient
  Rel rel = Rel::eq;
  Rational rhs = 0;
  std::string tag;  // carried into certificates
};

// Feasible region: the rows plus x >= 0 for every variable.
struct LinearProgram {
  int vars = 0;
  std::vector<LinRow> rows;
};

// Multipliers over row indices proving the region empty: sign-compatible
// (>= rows take nonnegative multipliers, <= rows nonpositive, = rows any),
// every combined variable coefficient <= 0, combined rhs > 0.
struct FarkasCertificate {
  std::vector<std::pair<std::size_t, Rational>> multipliers;
};

bool verify_farkas(const LinearProgram& lp, const FarkasCertificate& cert);

struct LpOptimum {
  Rational value;
  std::vector<Rational> point;
};

// Exact rational solver.  Equality rows are removed first by Gaussian
// elimination with row provenance (so contradictions yield certificates in
// terms of the input rows), then a primal simplex runs over the reduced
// inequalities.  The optimal basis is kept, so probing many objectives over
// one region only pays the elimination and phase-1 cost once.
class LpSolver {
 public:
  explicit LpSolver(LinearProgram lp);
  ~LpSolver();
  LpSolver(LpSolver&&) noexcept;
  LpSolver& operator=(LpSolver&&) noexcept;

  const LinearProgram& program() const;
  bool feasible() const;
  // A feasible point, all original variables.  Requires feasible().
  const std::vector<Rational>& point() const;
  // Requires !feasible().
  const FarkasCertificate& certificate() const;

  // max objective . x over the region.  objective has one entry per
  // variable.  Throws ModelError when the region is empty, logic_error when
  // the objective is unbounded on it.
  LpOptimum maximize(const std::vector<Rational>& objective);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qlp
