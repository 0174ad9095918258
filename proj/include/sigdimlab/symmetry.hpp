#pragma once

// Label permutations that preserve all pairwise inner products of a point
// set, found by a division-free depth-first search over prefixes. A prefix is
// pruned as soon as its partial Gram matrix differs from the reference one;
// once a full basis is placed, the rest of the labelling is forced by
// sorting the remaining points on their inner products with that basis.

#include <compare>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sigdimlab/exact.hpp"

namespace sigdimlab {

/// Bijection on {0, ..., n-1}, stored as the list of images.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ConsistencyError when images is not a bijection.
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }
  bool is_identity() const;

  /// (*this o other)(i) = (*this)(other(i))
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

/// Finite permutation group, elements sorted lexicographically. The
/// constructor checks identity, closure under composition and inverses.
class SymmetryGroup {
 public:
  explicit SymmetryGroup(std::vector<Permutation> elements);

  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return elements_.empty() ? 0 : elements_.front().size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  bool contains(const Permutation& p) const;

 private:
  std::vector<Permutation> elements_;
};

using IntegerMatrix = std::vector<IntegerVector>;

struct BasisPrefix {
  /// reordering[k] is the original label placed at position k: first d
  /// linearly independent points, then the rest in order() order.
  std::vector<std::size_t> reordering;
  std::size_t d = 0;
};

/// Greedy choice of a maximal independent prefix using Gram ranks. Throws
/// DegenerateError when every point is zero (or there are no points).
BasisPrefix basis_prefix(const IntegerMatrix& gram);
BasisPrefix basis_prefix(std::span<const RationalVector> points);

/// Sorts pool labels lexicographically by their profile
/// (gram[p][prefix_0], ..., gram[p][prefix_{d-1}]). Throws DegenerateError on
/// two equal profiles.
std::vector<std::size_t> order(const IntegerMatrix& gram, std::span<const std::size_t> prefix,
                               std::span<const std::size_t> pool);

/// Point-level form: returns the pool points in profile order.
std::vector<RationalVector> order(std::span<const RationalVector> prefix,
                                  std::span<const RationalVector> pool);

/// All sigma with gram[i][j] == gram[sigma(i)][sigma(j)]. The matrix must be
/// the Gram matrix of pairwise distinct vectors under some inner product.
SymmetryGroup find_symmetries(const IntegerMatrix& gram);

/// Symmetries of a point set under the standard dot product. Points must be
/// pairwise distinct; they are integerized before the search.
SymmetryGroup find_symmetries(std::span<const RationalVector> points);

/// A labelling sigma with a_i . a_j == b_sigma(i) . b_sigma(j), if any.
std::optional<Permutation> congruent(std::span<const RationalVector> points_a,
                                     std::span<const RationalVector> points_b);

/// Same as congruent, on precomputed integral Gram matrices.
std::optional<Permutation> congruent(const IntegerMatrix& gram_a, const IntegerMatrix& gram_b);

struct Orbit {
  std::size_t representative;
  std::vector<std::size_t> members;
};

/// Partition of items {0..count-1} into orbits under action(g, item). The
/// representative of each orbit is its smallest item; orbits are listed by
/// representative. Throws ConsistencyError when the action leaves the set.
std::vector<Orbit> orbits(const SymmetryGroup& group, std::size_t count,
                          const std::function<std::size_t(const Permutation&, std::size_t)>& action);

}  // namespace sigdimlab
