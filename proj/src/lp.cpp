#include "sigdimlab/lp.hpp"

#include <string>

#include "sigdimlab/error.hpp"

namespace sigdimlab {

namespace {

// Dense simplex tableau in standard form: rows are constraints
// sum_j t[r][j] x_j = t[r][rhs], x >= 0, basis[r] is the basic column of
// row r. z holds the reduced costs, z[rhs] the negated objective value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), t_(rows, std::vector<Rational>(cols + 1)), z_(cols + 1), basis_(rows),
        eligible_(cols, true) {}

  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }
  const Rational& rhs(std::size_t r) const { return t_[r][cols_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }
  const Rational& reduced_cost(std::size_t c) const { return z_[c]; }
  Rational objective_value() const { return -z_[cols_]; }
  void set_eligible(std::size_t c, bool e) { eligible_[c] = e; }

  void set_costs(const RationalVector& costs) {
    for (std::size_t c = 0; c < cols_; ++c) z_[c] = costs[c];
    z_[cols_] = 0;
    for (std::size_t r = 0; r < rows(); ++r) {
      const Rational& cb = costs[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (sgn(t_[r][c]) != 0) z_[c] -= cb * t_[r][c];
      }
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    auto& prow = t_[pr];
    const Rational inv = 1 / prow[pc];
    nonzero_.clear();
    for (std::size_t c = 0; c <= cols_; ++c) {
      if (sgn(prow[c]) == 0) continue;
      prow[c] *= inv;
      nonzero_.push_back(c);
    }
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == pr) continue;
      eliminate(t_[r], prow, pc);
    }
    eliminate(z_, prow, pc);
    basis_[pr] = pc;
  }

  enum class RunResult { Optimal, Unbounded };

  // Bland's rule: lowest-index improving column enters; among the rows
  // attaining the minimum ratio, the one with the lowest basic index leaves.
  RunResult run(std::size_t& unbounded_column) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (eligible_[c] && sgn(z_[c]) < 0) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return RunResult::Optimal;
      std::size_t leave = rows();
      for (std::size_t r = 0; r < rows(); ++r) {
        if (sgn(t_[r][enter]) <= 0) continue;
        if (leave == rows()) {
          leave = r;
          continue;
        }
        // rhs_r / a_r  vs  rhs_l / a_l with positive denominators
        lhs_ = t_[r][cols_] * t_[leave][enter];
        rhs_ = t_[leave][cols_] * t_[r][enter];
        const int cmp = cmp_rat(lhs_, rhs_);
        if (cmp < 0 || (cmp == 0 && basis_[r] < basis_[leave])) leave = r;
      }
      if (leave == rows()) {
        unbounded_column = enter;
        return RunResult::Unbounded;
      }
      pivot(leave, enter);
    }
  }

 private:
  static int cmp_rat(const Rational& a, const Rational& b) { return cmp(a, b); }

  void eliminate(std::vector<Rational>& row, const std::vector<Rational>& prow, std::size_t pc) {
    if (sgn(row[pc]) == 0) return;
    const Rational f = row[pc];
    for (std::size_t c : nonzero_) {
      mpq_mul(tmp_.get_mpq_t(), f.get_mpq_t(), prow[c].get_mpq_t());
      mpq_sub(row[c].get_mpq_t(), row[c].get_mpq_t(), tmp_.get_mpq_t());
    }
  }

  std::size_t cols_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> z_;
  std::vector<std::size_t> basis_;
  std::vector<bool> eligible_;
  std::vector<std::size_t> nonzero_;
  Rational tmp_, lhs_, rhs_;
};

struct ColumnOrigin {
  std::size_t variable;
  int sign;
};

RationalVector matvec(const RationalMatrix& a, const RationalVector& x) {
  RationalVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (sgn(a(r, c)) != 0 && sgn(x[c]) != 0) out[r] += a(r, c) * x[c];
  return out;
}

// g = A^T y over the stacked [eq; le] rows.
RationalVector stacked_transpose_times(const LinearProgram& lp, const RationalVector& y) {
  RationalVector g(lp.num_variables());
  const std::size_t neq = lp.eq_lhs.rows();
  for (std::size_t r = 0; r < neq; ++r) {
    if (sgn(y[r]) == 0) continue;
    for (std::size_t c = 0; c < g.size(); ++c)
      if (sgn(lp.eq_lhs(r, c)) != 0) g[c] += y[r] * lp.eq_lhs(r, c);
  }
  for (std::size_t r = 0; r < lp.le_lhs.rows(); ++r) {
    const Rational& yr = y[neq + r];
    if (sgn(yr) == 0) continue;
    for (std::size_t c = 0; c < g.size(); ++c)
      if (sgn(lp.le_lhs(r, c)) != 0) g[c] += yr * lp.le_lhs(r, c);
  }
  return g;
}

}  // namespace

LinearProgram LinearProgram::nonnegative(std::size_t n) {
  LinearProgram lp;
  lp.objective.assign(n, Rational(0));
  lp.eq_lhs = RationalMatrix(0, n);
  lp.le_lhs = RationalMatrix(0, n);
  lp.lower_bounds.assign(n, Rational(0));
  return lp;
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  auto fail = [](const std::string& what) { throw DimensionError("linear program: " + what); };
  if (lower_bounds.size() != n) fail("lower bound count differs from variable count");
  if (eq_lhs.rows() != eq_rhs.size()) fail("equality block row count differs from rhs length");
  if (le_lhs.rows() != le_rhs.size()) fail("inequality block row count differs from rhs length");
  if (eq_lhs.rows() > 0 && eq_lhs.cols() != n) fail("equality block has wrong column count");
  if (le_lhs.rows() > 0 && le_lhs.cols() != n) fail("inequality block has wrong column count");
}

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal:
      return "optimal";
    case LPStatus::Infeasible:
      return "infeasible";
    case LPStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

bool is_primal_feasible(const LinearProgram& lp, const RationalVector& x) {
  if (x.size() != lp.num_variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (lp.lower_bounds[j] && x[j] < *lp.lower_bounds[j]) return false;
  if (lp.eq_lhs.rows() > 0 && matvec(lp.eq_lhs, x) != lp.eq_rhs) return false;
  if (lp.le_lhs.rows() > 0) {
    const auto ax = matvec(lp.le_lhs, x);
    for (std::size_t r = 0; r < ax.size(); ++r)
      if (ax[r] > lp.le_rhs[r]) return false;
  }
  return true;
}

bool is_dual_certificate(const LinearProgram& lp, const RationalVector& y, const Rational& value) {
  const std::size_t neq = lp.eq_lhs.rows();
  if (y.size() != neq + lp.le_lhs.rows()) return false;
  for (std::size_t r = neq; r < y.size(); ++r)
    if (sgn(y[r]) > 0) return false;
  const auto g = stacked_transpose_times(lp, y);
  Rational dual_value = 0;
  for (std::size_t r = 0; r < neq; ++r) dual_value += y[r] * lp.eq_rhs[r];
  for (std::size_t r = 0; r < lp.le_lhs.rows(); ++r) dual_value += y[neq + r] * lp.le_rhs[r];
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Rational reduced = lp.objective[j] - g[j];
    if (lp.lower_bounds[j]) {
      if (sgn(reduced) < 0) return false;
      dual_value += reduced * *lp.lower_bounds[j];
    } else if (sgn(reduced) != 0) {
      return false;
    }
  }
  return dual_value == value;
}

bool is_farkas_certificate(const LinearProgram& lp, const RationalVector& y) {
  const std::size_t neq = lp.eq_lhs.rows();
  if (y.size() != neq + lp.le_lhs.rows()) return false;
  for (std::size_t r = neq; r < y.size(); ++r)
    if (sgn(y[r]) > 0) return false;
  const auto g = stacked_transpose_times(lp, y);
  Rational gap = 0;
  for (std::size_t r = 0; r < neq; ++r) gap += y[r] * lp.eq_rhs[r];
  for (std::size_t r = 0; r < lp.le_lhs.rows(); ++r) gap += y[neq + r] * lp.le_rhs[r];
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (lp.lower_bounds[j]) {
      if (sgn(g[j]) > 0) return false;
      gap -= g[j] * *lp.lower_bounds[j];
    } else if (sgn(g[j]) != 0) {
      return false;
    }
  }
  return sgn(gap) > 0;
}

LPOutcome solve(const LinearProgram& lp) {
  lp.validate();
  const std::size_t n = lp.num_variables();
  const std::size_t neq = lp.eq_lhs.rows();
  const std::size_t nle = lp.le_lhs.rows();
  const std::size_t nrows = neq + nle;

  // Structural columns: x_j = l_j + x'_j, or x_j = x+ - x- when free.
  std::vector<ColumnOrigin> origin;
  for (std::size_t j = 0; j < n; ++j) {
    origin.push_back({j, 1});
    if (!lp.lower_bounds[j]) origin.push_back({j, -1});
  }
  const std::size_t nstruct = origin.size();
  const std::size_t slack0 = nstruct;

  auto coeff = [&](std::size_t r, std::size_t j) -> const Rational& {
    return r < neq ? lp.eq_lhs(r, j) : lp.le_lhs(r - neq, j);
  };

  std::vector<Rational> shifted_rhs(nrows);
  std::vector<int> row_sign(nrows, 1);
  std::size_t nart = 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    Rational b = r < neq ? lp.eq_rhs[r] : lp.le_rhs[r - neq];
    for (std::size_t j = 0; j < n; ++j)
      if (lp.lower_bounds[j] && sgn(*lp.lower_bounds[j]) != 0) b -= coeff(r, j) * *lp.lower_bounds[j];
    if (sgn(b) < 0) row_sign[r] = -1;
    shifted_rhs[r] = b;
    if (r < neq || row_sign[r] < 0) ++nart;
  }
  const std::size_t art0 = slack0 + nle;
  const std::size_t ncols = art0 + nart;

  Tableau tab(nrows, ncols);
  std::vector<std::size_t> initial(nrows);
  std::size_t next_art = art0;
  for (std::size_t r = 0; r < nrows; ++r) {
    const int s = row_sign[r];
    for (std::size_t k = 0; k < nstruct; ++k) {
      const Rational& a = coeff(r, origin[k].variable);
      if (sgn(a) != 0) tab.at(r, k) = (s * origin[k].sign) * a;
    }
    if (r >= neq) tab.at(r, slack0 + (r - neq)) = s;
    tab.rhs(r) = s * shifted_rhs[r];
    if (r >= neq && s > 0) {
      initial[r] = slack0 + (r - neq);
    } else {
      initial[r] = next_art++;
      tab.at(r, initial[r]) = 1;
    }
    tab.basic(r) = initial[r];
  }

  LPOutcome out;
  std::size_t unbounded_column = 0;

  if (nart > 0) {
    RationalVector phase1(ncols);
    for (std::size_t c = art0; c < ncols; ++c) phase1[c] = 1;
    tab.set_costs(phase1);
    tab.run(unbounded_column);
    if (sgn(tab.objective_value()) > 0) {
      out.status = LPStatus::Infeasible;
      out.farkas.resize(nrows);
      for (std::size_t r = 0; r < nrows; ++r) {
        const Rational y = phase1[initial[r]] - tab.reduced_cost(initial[r]);
        out.farkas[r] = row_sign[r] * y;
      }
      if (!is_farkas_certificate(lp, out.farkas))
        throw ConsistencyError("simplex: Farkas certificate failed verification");
      return out;
    }
    // Drive zero-level artificials out of the basis where possible; rows
    // where that fails are redundant and keep their artificial at zero.
    for (std::size_t r = 0; r < nrows; ++r) {
      if (tab.basic(r) < art0) continue;
      for (std::size_t c = 0; c < art0; ++c) {
        if (sgn(tab.at(r, c)) != 0) {
          tab.pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = art0; c < ncols; ++c) tab.set_eligible(c, false);
  }

  RationalVector costs(ncols);
  for (std::size_t k = 0; k < nstruct; ++k) costs[k] = origin[k].sign * lp.objective[origin[k].variable];
  tab.set_costs(costs);
  const auto result = tab.run(unbounded_column);

  RationalVector xs(ncols);
  for (std::size_t r = 0; r < nrows; ++r) xs[tab.basic(r)] = tab.rhs(r);
  auto to_original = [&](const RationalVector& std_x, bool shift) {
    RationalVector x(n);
    for (std::size_t j = 0; j < n; ++j)
      if (shift && lp.lower_bounds[j]) x[j] = *lp.lower_bounds[j];
    for (std::size_t k = 0; k < nstruct; ++k)
      if (sgn(std_x[k]) != 0) x[origin[k].variable] += origin[k].sign * std_x[k];
    return x;
  };
  out.primal = to_original(xs, true);
  if (!is_primal_feasible(lp, out.primal))
    throw ConsistencyError("simplex: primal point failed verification");

  if (result == Tableau::RunResult::Unbounded) {
    out.status = LPStatus::Unbounded;
    RationalVector dir(ncols);
    dir[unbounded_column] = 1;
    for (std::size_t r = 0; r < nrows; ++r) dir[tab.basic(r)] = -tab.at(r, unbounded_column);
    out.ray = to_original(dir, false);
    if (dot(lp.objective, out.ray) >= 0)
      throw ConsistencyError("simplex: unbounded ray does not decrease the objective");
    return out;
  }

  out.status = LPStatus::Optimal;
  out.value = dot(lp.objective, out.primal);
  out.dual.resize(nrows);
  for (std::size_t r = 0; r < nrows; ++r) {
    const Rational y = costs[initial[r]] - tab.reduced_cost(initial[r]);
    out.dual[r] = row_sign[r] * y;
  }
  if (!is_dual_certificate(lp, out.dual, out.value))
    throw ConsistencyError("simplex: dual certificate failed verification");
  return out;
}

LPOutcome feasible(const RationalMatrix& a_eq, const RationalVector& b_eq, bool nonneg) {
  LinearProgram lp;
  const std::size_t n = a_eq.cols();
  lp.objective.assign(n, Rational(0));
  lp.eq_lhs = a_eq;
  lp.eq_rhs = b_eq;
  lp.le_lhs = RationalMatrix(0, n);
  lp.lower_bounds.assign(n, nonneg ? std::optional<Rational>(Rational(0)) : std::nullopt);
  return solve(lp);
}

}  // namespace sigdimlab
