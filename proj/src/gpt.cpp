#include "sigdimlab/gpt.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "sigdimlab/error.hpp"
#include "sigdimlab/lp.hpp"

namespace sigdimlab {

namespace {

// Coordinates of the points in an affine basis of their hull, anchored at
// the first point.
std::vector<RationalVector> affine_coordinates(const std::vector<RationalVector>& pts) {
  const RationalVector& origin = pts.front();
  std::vector<RationalVector> basis;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    auto candidate = basis;
    candidate.push_back(pts[i] - origin);
    if (rank(std::span<const RationalVector>(candidate)) == candidate.size()) basis = std::move(candidate);
  }
  const std::size_t k = basis.size();
  RationalMatrix bbt(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) bbt(a, b) = dot(basis[a], basis[b]);
  std::vector<RationalVector> out;
  for (const auto& p : pts) {
    const RationalVector diff = p - origin;
    RationalVector rhs(k);
    for (std::size_t a = 0; a < k; ++a) rhs[a] = dot(basis[a], diff);
    out.push_back(k == 0 ? RationalVector{} : solve_square(bbt, rhs));
  }
  return out;
}

RationalVector evaluate(const StateSpace& s, const RationalVector& e) {
  RationalVector out(s.m());
  for (std::size_t i = 0; i < s.m(); ++i) out[i] = dot(e, s.states[i]);
  return out;
}

}  // namespace

StateSpace homogenize(const VRep& v) {
  if (v.size() == 0) throw DegenerateError("homogenize: empty vertex set");
  StateSpace s;
  s.vertices = v;
  s.aff_dim = affine_dim(v);
  s.lin_dim = s.aff_dim + 1;
  std::vector<RationalVector> coords =
      s.aff_dim == v.ambient_dim() ? v.vertices() : affine_coordinates(v.vertices());
  for (auto& x : coords) {
    RationalVector w(s.lin_dim);
    w[0] = 1;
    std::copy(x.begin(), x.end(), w.begin() + 1);
    s.states.push_back(std::move(w));
  }
  s.unit.assign(s.lin_dim, Rational(0));
  s.unit[0] = 1;
  return s;
}

std::vector<Effect> extremal_effects(const StateSpace& s) {
  HRep h;
  for (const auto& w : s.states) {
    h.inequalities.push_back({-w, Rational(0)});
    h.inequalities.push_back({w, Rational(1)});
  }
  const VRep vertices = double_description(h);
  std::vector<Effect> out;
  for (const auto& e : vertices.vertices()) {
    Effect f;
    f.vector = e;
    f.evaluation = evaluate(s, e);
    f.is_zero = is_zero(e);
    f.is_unit = e == s.unit;
    if (!f.is_zero) {
      std::vector<RationalVector> tight;
      for (std::size_t i = 0; i < s.m(); ++i)
        if (sgn(f.evaluation[i]) == 0) tight.push_back(s.states[i]);
      f.on_extreme_ray = rank(std::span<const RationalVector>(tight)) + 1 == s.lin_dim;
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

// Depth-first search over increasing index sets of candidate effects. The
// chosen effects are kept in an echelon form r_k = sum_j T_k[j] f_j with
// r_k[pivot_k] == 1, which gives both the independence test and the unique
// coefficients of u in their span.
class MeasurementSearch {
 public:
  MeasurementSearch(const StateSpace& s, const std::vector<Effect>& effects)
      : s_(s), effects_(effects) {
    for (std::size_t i = 0; i < effects.size(); ++i)
      if (effects[i].nontrivial() && effects[i].on_extreme_ray) candidates_.push_back(i);
  }

  std::vector<Measurement> run() {
    extend(0, s_.unit, RationalVector{});
    std::sort(found_.begin(), found_.end(), [](const Measurement& a, const Measurement& b) {
      if (a.effects.size() != b.effects.size()) return a.effects.size() < b.effects.size();
      return a.effects < b.effects;
    });
    return std::move(found_);
  }

 private:
  struct Row {
    RationalVector r;
    RationalVector t;
    std::size_t pivot;
  };

  // residual = u - sum_k beta[k] r_k
  void extend(std::size_t start, const RationalVector& residual, const RationalVector& beta) {
    if (rows_.size() == s_.lin_dim) return;
    for (std::size_t c = start; c < candidates_.size(); ++c) {
      const RationalVector& f = effects_[candidates_[c]].vector;
      const std::size_t k = rows_.size();
      Row row{f, RationalVector(k + 1, Rational(0)), 0};
      row.t[k] = 1;
      for (const auto& prev : rows_) {
        const Rational factor = row.r[prev.pivot];
        if (sgn(factor) == 0) continue;
        for (std::size_t a = 0; a < row.r.size(); ++a) row.r[a] -= factor * prev.r[a];
        for (std::size_t a = 0; a < prev.t.size(); ++a) row.t[a] -= factor * prev.t[a];
      }
      auto nz = std::find_if(row.r.begin(), row.r.end(), [](const Rational& x) { return sgn(x) != 0; });
      if (nz == row.r.end()) continue;  // dependent on the chosen effects
      row.pivot = static_cast<std::size_t>(nz - row.r.begin());
      const Rational inv = 1 / row.r[row.pivot];
      for (auto& x : row.r) x *= inv;
      for (auto& x : row.t) x *= inv;

      const Rational step = residual[row.pivot];
      RationalVector next_residual = residual;
      for (std::size_t a = 0; a < next_residual.size(); ++a) next_residual[a] -= step * row.r[a];
      RationalVector next_beta = beta;
      next_beta.push_back(step);

      chosen_.push_back(candidates_[c]);
      rows_.push_back(std::move(row));
      if (is_zero(next_residual))
        record(next_beta);
      else
        extend(c + 1, next_residual, next_beta);
      rows_.pop_back();
      chosen_.pop_back();
    }
  }

  // u lies in the span; supersets would only add zero coefficients, so this
  // node is a leaf either way.
  void record(const RationalVector& beta) {
    const std::size_t k = rows_.size();
    RationalVector alpha(k, Rational(0));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t j = 0; j < rows_[r].t.size(); ++j) alpha[j] += beta[r] * rows_[r].t[j];
    for (const auto& a : alpha)
      if (sgn(a) <= 0) return;
    Measurement m;
    m.effects = chosen_;
    m.coefficients = alpha;
    for (std::size_t j = 0; j < k; ++j) m.elements.push_back(alpha[j] * effects_[chosen_[j]].vector);
    found_.push_back(std::move(m));
  }

  const StateSpace& s_;
  const std::vector<Effect>& effects_;
  std::vector<std::size_t> candidates_;
  std::vector<std::size_t> chosen_;
  std::vector<Row> rows_;
  std::vector<Measurement> found_;
};

}  // namespace

std::vector<Measurement> extremal_measurements(const StateSpace& s, const std::vector<Effect>& effects) {
  return MeasurementSearch(s, effects).run();
}

SymmetryGroup state_symmetries(const StateSpace& s) {
  const std::size_t m = s.m();
  const std::size_t k = s.aff_dim;
  if (k == 0) return SymmetryGroup({Permutation::identity(m)});
  std::vector<RationalVector> centered;
  RationalVector c(k, Rational(0));
  for (const auto& w : s.states)
    for (std::size_t a = 0; a < k; ++a) c[a] += w[a + 1];
  for (auto& x : c) x /= static_cast<unsigned long>(m);
  for (const auto& w : s.states) {
    RationalVector y(k);
    for (std::size_t a = 0; a < k; ++a) y[a] = w[a + 1] - c[a];
    centered.push_back(std::move(y));
  }
  RationalMatrix cov(k, k);
  for (const auto& y : centered)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) cov(a, b) += y[a] * y[b];
  const RationalMatrix w = inverse(cov);
  std::vector<RationalVector> whitened;
  for (const auto& y : centered) {
    RationalVector z(k, Rational(0));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) z[a] += w(a, b) * y[b];
    whitened.push_back(std::move(z));
  }
  RationalMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) = 1 + dot(centered[i], whitened[j]);
  return find_symmetries(integerize(g));
}

Permutation induced_effect_action(const StateSpace& s, const std::vector<Effect>& effects,
                                  const Permutation& sigma) {
  if (sigma.size() != s.m()) throw DimensionError("induced action: permutation has wrong degree");
  std::unordered_map<RationalVector, std::size_t, RationalVectorHash> by_row;
  for (std::size_t a = 0; a < effects.size(); ++a) by_row.emplace(effects[a].evaluation, a);
  std::vector<std::size_t> images(effects.size());
  RationalVector moved(s.m());
  for (std::size_t a = 0; a < effects.size(); ++a) {
    for (std::size_t i = 0; i < s.m(); ++i) moved[sigma(i)] = effects[a].evaluation[i];
    auto it = by_row.find(moved);
    if (it == by_row.end())
      throw ConsistencyError("induced action: permuted effect " + std::to_string(a) + " is not an effect");
    images[a] = it->second;
  }
  return Permutation(std::move(images));
}

std::vector<MeasurementClass> measurement_classes(const StateSpace& s, const std::vector<Effect>& effects,
                                                  const std::vector<Measurement>& measurements,
                                                  const SymmetryGroup& group) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < measurements.size(); ++i) index.emplace(measurements[i].effects, i);
  std::map<std::vector<std::size_t>, Permutation> tau_of;
  for (const auto& g : group.elements()) tau_of.emplace(g.images(), induced_effect_action(s, effects, g));
  const auto action = [&](const Permutation& g, std::size_t mi) {
    const Permutation& tau = tau_of.at(g.images());
    std::vector<std::size_t> key;
    for (std::size_t e : measurements[mi].effects) key.push_back(tau(e));
    std::sort(key.begin(), key.end());
    auto it = index.find(key);
    if (it == index.end())
      throw ConsistencyError("measurement " + std::to_string(mi) + " is mapped outside the measurement set");
    return it->second;
  };
  std::vector<MeasurementClass> out;
  for (auto& o : orbits(group, measurements.size(), action))
    out.push_back({o.representative, std::move(o.members)});
  return out;
}

CorrelationMatrix correlation_matrix(const StateSpace& s, std::span<const RationalVector> elements) {
  CorrelationMatrix c{RationalMatrix(s.m(), elements.size())};
  for (std::size_t i = 0; i < s.m(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (elements[j].size() != s.lin_dim) throw DimensionError("correlation matrix: effect has wrong length");
      c.p(i, j) = dot(s.states[i], elements[j]);
    }
  return c;
}

bool is_extremal_measurement(const StateSpace& s, std::span<const RationalVector> elements) {
  const std::size_t n = elements.size();
  const std::size_t l = s.lin_dim;
  const std::size_t m = s.m();
  // Each element must span an extreme ray of the effect cone, so a
  // coarse-graining of a finer measurement is rejected.
  for (const auto& e : elements) {
    std::vector<RationalVector> tight;
    for (const auto& w : s.states)
      if (sgn(dot(e, w)) == 0) tight.push_back(w);
    if (is_zero(e) || rank(std::span<const RationalVector>(tight)) + 1 != l) return false;
  }
  // Variables: d_j (free), j = 0..n-1, each of length l.
  LinearProgram lp;
  lp.objective.assign(n * l, Rational(0));
  lp.lower_bounds.assign(n * l, std::nullopt);
  lp.eq_lhs = RationalMatrix(l, n * l);
  lp.eq_rhs.assign(l, Rational(0));
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t j = 0; j < n; ++j) lp.eq_lhs(a, j * l + a) = 1;
  lp.le_lhs = RationalMatrix(2 * n * m, n * l);
  lp.le_rhs.assign(2 * n * m, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t r = 2 * (j * m + i);
      const Rational bound = dot(elements[j], s.states[i]);
      for (std::size_t a = 0; a < l; ++a) {
        lp.le_lhs(r, j * l + a) = s.states[i][a];
        lp.le_lhs(r + 1, j * l + a) = -s.states[i][a];
      }
      lp.le_rhs[r] = bound;
      lp.le_rhs[r + 1] = bound;
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(dot(elements[j], s.states[i])) == 0) continue;
      for (std::size_t a = 0; a < l; ++a) lp.objective[j * l + a] = -s.states[i][a];
      const LPOutcome out = solve(lp);
      for (std::size_t a = 0; a < l; ++a) lp.objective[j * l + a] = 0;
      if (out.status != LPStatus::Optimal) throw ConsistencyError("extremality LP did not reach an optimum");
      if (sgn(out.value) < 0) return false;
    }
  return true;
}

}  // namespace sigdimlab
