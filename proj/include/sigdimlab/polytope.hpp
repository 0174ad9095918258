#pragma once

// Rational polytopes: vertex and facet descriptions, the double description
// conversion between them, and the affine invariants used by the rest of the
// library (dimensions, centroid, central symmetry, Minkowski asymmetry).

#include <optional>
#include <span>
#include <vector>

#include "sigdimlab/exact.hpp"

namespace sigdimlab {

struct HRep;

/// Finite set of extreme points. Non-empty, duplicate free, and every point
/// is a vertex of the convex hull.
class VRep {
 public:
  VRep() = default;

  /// Validates the invariants; throws DimensionError for ragged input and
  /// DegenerateError (naming the offending index) otherwise.
  static VRep from_vertices(std::vector<RationalVector> vertices);

  /// Keeps only the extreme points of an arbitrary point cloud.
  static VRep hull_of(std::span<const RationalVector> points);

  const std::vector<RationalVector>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t ambient_dim() const { return vertices_.empty() ? 0 : vertices_.front().size(); }

  friend bool operator==(const VRep&, const VRep&) = default;

 private:
  friend VRep double_description(const HRep& h);
  explicit VRep(std::vector<RationalVector> v) : vertices_(std::move(v)) {}
  std::vector<RationalVector> vertices_;
};

/// normal . x <= offset
struct Halfspace {
  RationalVector normal;
  Rational offset;

  bool contains(const RationalVector& x) const { return dot(normal, x) <= offset; }
  bool tight_at(const RationalVector& x) const { return dot(normal, x) == offset; }
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Intersection of halfspaces. Lower-dimensional polytopes carry each
/// affine-hull equation as a pair of opposite inequalities.
struct HRep {
  std::vector<Halfspace> inequalities;
};

/// Generators of the polyhedral cone {x : a . x >= 0 for every constraint a}:
/// cone(rays) + span(lineality). Rays are primitive integer vectors.
struct ConeGenerators {
  std::vector<IntegerVector> rays;
  std::vector<IntegerVector> lineality;
};

/// Double description method (Motzkin's incremental algorithm) in integer
/// arithmetic. Constraints are inserted in lexicographic order; two rays are
/// combined only when the rank test certifies them adjacent.
ConeGenerators cone_generators(std::span<const IntegerVector> constraints, std::size_t dim);

/// Facets of conv(vertices). Throws DegenerateError on empty input.
HRep double_description(const VRep& v);

/// Vertices of a bounded, non-empty H-polytope. Throws DegenerateError for
/// empty or unbounded input.
VRep double_description(const HRep& h);

std::size_t affine_dim(const VRep& v);
std::size_t affine_dim(std::span<const RationalVector> points);

RationalVector centroid(std::span<const RationalVector> points);
inline RationalVector centroid(const VRep& v) { return centroid(v.vertices()); }

/// Center c when the vertex set is invariant under x -> 2c - x. The only
/// candidate is the vertex centroid, which is the center of any centrally
/// symmetric vertex set.
std::optional<RationalVector> central_symmetry(const VRep& v);

/// Vertex set together with its facets and dimensions. Immutable.
class Polytope {
 public:
  explicit Polytope(VRep v);

  const VRep& vrep() const { return vrep_; }
  const HRep& hrep() const { return hrep_; }
  std::size_t aff_dim() const { return aff_dim_; }
  std::size_t lin_dim() const { return aff_dim_ + 1; }

 private:
  VRep vrep_;
  HRep hrep_;
  std::size_t aff_dim_ = 0;
};

/// Smallest lambda such that a translate of the point reflection of the
/// polytope fits into lambda times the polytope (both about the same center).
/// Solved as one LP in (lambda, d) with d = (1 + lambda) c.
/// Throws DegenerateError for a single point.
Rational minkowski_asymmetry(const Polytope& p);

/// Indices (first occurrence, increasing) of the points that are not convex
/// combinations of the other points. Duplicates are removed before the LP
/// filter, so of several equal extreme points only the first is kept.
std::vector<std::size_t> extreme_point_indices(std::span<const RationalVector> points);

std::vector<RationalVector> extreme_points(std::span<const RationalVector> points);

}  // namespace sigdimlab
