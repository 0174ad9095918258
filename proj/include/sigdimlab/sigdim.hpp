#pragma once

// Signaling dimension of a polytopic state space: a priori bounds, the planar
// closed form, classical strategies with a bounded message alphabet, the
// exact simulability test and the driver that ties them together.

#include <optional>
#include <vector>

#include "sigdimlab/exact.hpp"
#include "sigdimlab/gpt.hpp"

namespace sigdimlab {

struct BoundsRecord {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool cs = false;
};

/// Centrally symmetric: [2, max(2, aff_dim)]; otherwise [3, lin_dim]. Throws
/// DegenerateError for a single point.
BoundsRecord bounds(const StateSpace& s);

/// The symmetry-blind interval [2, lin_dim], with cs still recorded.
BoundsRecord generic_bounds(const StateSpace& s);

/// 2 for centrally symmetric planar state spaces, 3 otherwise. Throws
/// DimensionError unless aff_dim == 2.
std::size_t sigdim_2d(const StateSpace& s);

/// Deterministic strategy: input i is sent to output assignment[i].
struct ClassicalVertex {
  std::vector<std::size_t> assignment;

  std::size_t image_size() const;
  RationalMatrix matrix(std::size_t n) const;
  friend bool operator==(const ClassicalVertex&, const ClassicalVertex&) = default;
  friend auto operator<=>(const ClassicalVertex&, const ClassicalVertex&) = default;
};

/// Enumerates, in lexicographic order of assignments, every f with f(i) in
/// the support of row i and |image f| <= d. Nothing is materialized.
class ClassicalVertexStream {
 public:
  ClassicalVertexStream(std::vector<std::vector<std::size_t>> row_supports, std::size_t d);

  /// Writes the next vertex into out; false once the stream is exhausted.
  bool next(ClassicalVertex& out);

 private:
  std::vector<std::vector<std::size_t>> options_;
  std::size_t d_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> uses_;
  std::size_t distinct_ = 0;
  std::size_t level_ = 0;
  bool resume_ = false;
  bool done_ = false;
};

/// Stream over the strict-positivity support of p.
ClassicalVertexStream classical_vertices(const RationalMatrix& p, std::size_t d);

/// sum_{k=1}^{d} k! C(n, k) S(m, k)
Integer vertex_count(std::size_t m, std::size_t n, std::size_t d);

struct SimulationCertificate {
  std::vector<ClassicalVertex> vertices;
  RationalVector weights;
  std::size_t d = 0;

  /// Exact re-evaluation: weights non-negative summing to one, images of
  /// size at most d, and sum_k weights[k] A_k == p entrywise.
  bool verify(const RationalMatrix& p) const;
};

enum class SimulabilityMethod {
  /// One LP column per classical vertex, in stream order.
  VertexEnumeration,
  /// Mixture over message subsets S, |S| = d: variables q_S[i][j] with
  /// j in S, sum_S q_S = p and equal row sums within each S. Same feasible
  /// set, polynomially many columns in m for fixed n and d.
  MessageSubsets,
};

/// Rows of p that are extreme points of the set of rows, in order.
RationalMatrix reduce_rows(const RationalMatrix& p);

/// Exact membership of the row-stochastic matrix p in the classical
/// correlation polytope with d messages. Returns a verified certificate or
/// nothing. Throws DimensionError when p is not row-stochastic.
std::optional<SimulationCertificate> simulable(const RationalMatrix& p, std::size_t d,
                                               SimulabilityMethod method = SimulabilityMethod::MessageSubsets);

struct SigDimOptions {
  /// Test one measurement per orbit of the state symmetry group.
  bool use_symmetry = true;
  /// Use the central-symmetry refined bounds instead of [2, lin_dim].
  bool use_cs_bounds = true;
  /// Answer planar state spaces from central symmetry alone.
  bool planar_shortcut = true;
  /// Also test d + 1 after every success below the upper bound.
  bool check_monotonicity = false;
  SimulabilityMethod method = SimulabilityMethod::MessageSubsets;
  std::size_t jobs = 1;
};

struct ClassResult {
  std::size_t representative = 0;
  std::size_t class_size = 1;
  /// Smallest d that simulates the representative (bounds.upper when no
  /// smaller d does; that value is not re-tested).
  std::size_t minimal_d = 0;
  bool decided_by_bound = false;
  RationalMatrix reduced;
  std::optional<SimulationCertificate> certificate;
};

struct SigDimReport {
  std::size_t value = 0;
  BoundsRecord bounds;
  bool planar_shortcut = false;
  std::size_t group_order = 1;
  std::vector<Effect> effects;
  std::vector<Measurement> measurements;
  std::vector<ClassResult> classes;
};

/// Throws ConsistencyError when the result leaves [bounds.lower, bounds.upper]
/// or a certificate fails to verify.
SigDimReport signaling_dimension(const StateSpace& s, const SigDimOptions& options = {});

}  // namespace sigdimlab
