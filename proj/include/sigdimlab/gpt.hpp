#pragma once

// The probabilistic layer on top of a polytope of states: homogenized state
// vectors, the effect polytope under the no-restriction hypothesis, extremal
// measurements, and how state symmetries act on effects and measurements.

#include <span>
#include <vector>

#include "sigdimlab/exact.hpp"
#include "sigdimlab/polytope.hpp"
#include "sigdimlab/symmetry.hpp"

namespace sigdimlab {

/// States embedded as omega_i = (1, x_i) in R^{lin_dim}, so that the unit
/// effect is u = (1, 0, ..., 0). Vertex sets that are not full dimensional
/// are first expressed in affine coordinates of their hull, so the states
/// always span R^{lin_dim}.
struct StateSpace {
  VRep vertices;
  std::vector<RationalVector> states;
  RationalVector unit;
  std::size_t aff_dim = 0;
  std::size_t lin_dim = 0;

  std::size_t m() const { return states.size(); }
};

StateSpace homogenize(const VRep& v);

struct Effect {
  RationalVector vector;
  /// (e . omega_1, ..., e . omega_m)
  RationalVector evaluation;
  /// Lies on an extreme ray of the cone {e : e . omega_i >= 0}.
  bool on_extreme_ray = false;
  bool is_zero = false;
  bool is_unit = false;

  bool nontrivial() const { return !is_zero && !is_unit; }
};

/// Vertices of {e : 0 <= e . omega_i <= 1}, lexicographically sorted. Always
/// contains 0 and u.
std::vector<Effect> extremal_effects(const StateSpace& s);

/// sum_j coefficients[j] * effects[indices[j]] == u
struct Measurement {
  std::vector<std::size_t> effects;
  RationalVector coefficients;
  std::vector<RationalVector> elements;

  std::size_t outcomes() const { return effects.size(); }
};

/// Measurements whose elements are positive multiples of pairwise distinct,
/// linearly independent extreme-ray effects summing to u. Each such set has
/// unique coefficients. Listed by outcome count, then lexicographically by
/// effect indices.
std::vector<Measurement> extremal_measurements(const StateSpace& s, const std::vector<Effect>& effects);

/// Symmetry group of the state set: permutations of the states induced by
/// affine automorphisms of the polytope. Computed from the Gram matrix of
/// the centered states under the inverse vertex covariance, which every
/// affine automorphism preserves.
SymmetryGroup state_symmetries(const StateSpace& s);

/// The permutation tau of effects with C[tau(a)][sigma(i)] == C[a][i], where
/// C is the effects-by-states evaluation matrix. Throws ConsistencyError if
/// some permuted row is not an effect row (sigma is not a symmetry).
Permutation induced_effect_action(const StateSpace& s, const std::vector<Effect>& effects,
                                  const Permutation& sigma);

struct MeasurementClass {
  std::size_t representative;
  std::vector<std::size_t> members;
};

/// Orbits of measurements under the induced effect action.
std::vector<MeasurementClass> measurement_classes(const StateSpace& s, const std::vector<Effect>& effects,
                                                  const std::vector<Measurement>& measurements,
                                                  const SymmetryGroup& group);

/// p[i][j] = omega_i . e_j with strict-positivity support.
struct CorrelationMatrix {
  RationalMatrix p;

  bool supported(std::size_t i, std::size_t j) const { return sgn(p(i, j)) > 0; }
};

CorrelationMatrix correlation_matrix(const StateSpace& s, std::span<const RationalVector> elements);

/// Exact test: every element lies on an extreme ray of the effect cone and no
/// nonzero perturbation (d_j), sum d_j = 0, keeps every e_j +- d_j a
/// non-negative functional. One LP per entry.
bool is_extremal_measurement(const StateSpace& s, std::span<const RationalVector> elements);

}  // namespace sigdimlab
