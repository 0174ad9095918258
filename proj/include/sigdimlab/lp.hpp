#pragma once

// Exact rational linear programming.
//
// Two-phase primal simplex on a dense tableau with Bland's pivoting rule.
// Every outcome carries an exact certificate (dual solution or Farkas
// vector) that is re-verified before solve() returns.

#include <optional>
#include <vector>

#include "sigdimlab/exact.hpp"

namespace sigdimlab {

/// minimize objective . x
/// subject to eq_lhs x == eq_rhs, le_lhs x <= le_rhs,
///            x_j >= lower_bounds[j] where a bound is present (free otherwise).
struct LinearProgram {
  RationalVector objective;
  RationalMatrix eq_lhs;
  RationalVector eq_rhs;
  RationalMatrix le_lhs;
  RationalVector le_rhs;
  std::vector<std::optional<Rational>> lower_bounds;

  /// Program over n variables with no constraints, zero objective and x >= 0.
  static LinearProgram nonnegative(std::size_t n);

  std::size_t num_variables() const { return objective.size(); }

  /// Throws DimensionError when the blocks do not fit together.
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus status);

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  /// Optimal only.
  Rational value;
  RationalVector primal;
  /// Optimal only: multipliers for the eq rows followed by the le rows.
  RationalVector dual;
  /// Infeasible only: multipliers for the eq rows followed by the le rows.
  RationalVector farkas;
  /// Unbounded only: a feasible point and a recession direction along which
  /// the objective decreases without bound.
  RationalVector ray;

  bool optimal() const { return status == LPStatus::Optimal; }
};

LPOutcome solve(const LinearProgram& lp);

/// Zero-objective feasibility problem a_eq x = b_eq, with x >= 0 when
/// nonneg is set and x free otherwise.
LPOutcome feasible(const RationalMatrix& a_eq, const RationalVector& b_eq, bool nonneg);

// Exact certificate checks. solve() runs them itself; they are public so that
// tests and callers holding foreign solutions can use them.
bool is_primal_feasible(const LinearProgram& lp, const RationalVector& x);
bool is_dual_certificate(const LinearProgram& lp, const RationalVector& y, const Rational& value);
bool is_farkas_certificate(const LinearProgram& lp, const RationalVector& y);

}  // namespace sigdimlab
