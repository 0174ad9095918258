#include "sigdimlab/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "sigdimlab/error.hpp"

namespace sigdimlab {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (std::size_t x : images_) {
    if (x >= images_.size() || hit[x]) throw ConsistencyError("permutation images are not a bijection");
    hit[x] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> im(n);
  std::iota(im.begin(), im.end(), std::size_t{0});
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw DimensionError("composing permutations of different degree");
  std::vector<std::size_t> im(size());
  for (std::size_t i = 0; i < size(); ++i) im[i] = images_[other.images_[i]];
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> im(size());
  for (std::size_t i = 0; i < size(); ++i) im[images_[i]] = i;
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  std::size_t h = 1469598103934665603ULL;
  for (std::size_t x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

SymmetryGroup::SymmetryGroup(std::vector<Permutation> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ConsistencyError("symmetry group without elements");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  const std::size_t n = elements_.front().size();
  std::unordered_set<Permutation, PermutationHash> set(elements_.begin(), elements_.end());
  if (!set.contains(Permutation::identity(n))) throw ConsistencyError("symmetry group lacks the identity");
  for (const auto& a : elements_) {
    if (a.size() != n) throw ConsistencyError("symmetry group elements of different degree");
    if (!set.contains(a.inverse())) throw ConsistencyError("symmetry group not closed under inverses");
    for (const auto& b : elements_)
      if (!set.contains(a.compose(b))) throw ConsistencyError("symmetry group not closed under composition");
  }
}

bool SymmetryGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

namespace {

IntegerMatrix integer_gram(const std::vector<IntegerVector>& pts) {
  IntegerMatrix g(pts.size(), IntegerVector(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) {
      g[i][j] = dot(pts[i], pts[j]);
      g[j][i] = g[i][j];
    }
  return g;
}

IntegerMatrix principal_submatrix(const IntegerMatrix& g, std::span<const std::size_t> idx) {
  IntegerMatrix s(idx.size(), IntegerVector(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) s[a][b] = g[idx[a]][idx[b]];
  return s;
}

// Stable sort of pool by profile; reports whether two profiles coincide.
std::vector<std::size_t> sort_by_profile(const IntegerMatrix& gram, std::span<const std::size_t> prefix,
                                         std::span<const std::size_t> pool, bool& tie) {
  std::vector<std::size_t> out(pool.begin(), pool.end());
  auto less = [&](std::size_t x, std::size_t y) {
    for (std::size_t p : prefix) {
      const int c = cmp(gram[x][p], gram[y][p]);
      if (c != 0) return c < 0;
    }
    return false;
  };
  std::stable_sort(out.begin(), out.end(), less);
  tie = false;
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!less(out[i - 1], out[i])) tie = true;
  return out;
}

// Depth-first search for labellings `full` of the target Gram matrix with
// target[full[a]][full[b]] == reference[a][b]. The reference is expressed in
// prefix order: positions [0, d) hold a basis, the rest follow in profile
// order with respect to that basis.
class PrefixSearch {
 public:
  using Visit = std::function<bool(const std::vector<std::size_t>&)>;

  PrefixSearch(const IntegerMatrix& reference, const IntegerMatrix& target, std::size_t d, Visit visit)
      : ref_(reference), g_(target), d_(d), m_(target.size()), used_(m_, false), visit_(std::move(visit)) {}

  void run() { node(); }

 private:
  // Returns false when the visitor asked to stop.
  bool node() {
    const std::size_t k = chosen_.size();
    if (k == d_) return leaf();
    for (std::size_t v = 0; v < m_; ++v) {
      if (used_[v] || g_[v][v] != ref_[k][k]) continue;
      bool match = true;
      for (std::size_t l = 0; l < k && match; ++l) match = g_[v][chosen_[l]] == ref_[k][l];
      if (!match) continue;
      chosen_.push_back(v);
      used_[v] = true;
      const bool go_on = node();
      used_[v] = false;
      chosen_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  bool leaf() {
    std::vector<std::size_t> pool;
    for (std::size_t v = 0; v < m_; ++v)
      if (!used_[v]) pool.push_back(v);
    bool tie = false;
    const auto rest = sort_by_profile(g_, chosen_, pool, tie);
    std::vector<std::size_t> full = chosen_;
    full.insert(full.end(), rest.begin(), rest.end());
    for (std::size_t a = d_; a < m_; ++a)
      for (std::size_t b = 0; b <= a; ++b)
        if (g_[full[a]][full[b]] != ref_[a][b]) return true;
    return visit_(full);
  }

  const IntegerMatrix& ref_;
  const IntegerMatrix& g_;
  std::size_t d_;
  std::size_t m_;
  std::vector<bool> used_;
  std::vector<std::size_t> chosen_;
  Visit visit_;
};

BasisPrefix basis_prefix_impl(const IntegerMatrix& gram, bool allow_ties) {
  const std::size_t m = gram.size();
  const std::size_t r = rank(gram);
  if (r == 0) throw DegenerateError("basis prefix: points span only the zero vector");
  std::vector<std::size_t> basis;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis.size() < r) {
      basis.push_back(i);
      if (rank(principal_submatrix(gram, basis)) == basis.size()) continue;
      basis.pop_back();
    }
    rest.push_back(i);
  }
  BasisPrefix out;
  out.d = basis.size();
  bool tie = false;
  const auto ordered = sort_by_profile(gram, basis, rest, tie);
  if (tie && !allow_ties) throw DegenerateError("basis prefix: two points share an inner-product profile");
  out.reordering = basis;
  out.reordering.insert(out.reordering.end(), ordered.begin(), ordered.end());
  return out;
}

IntegerMatrix reorder(const IntegerMatrix& g, const std::vector<std::size_t>& seq) {
  return principal_submatrix(g, seq);
}

void require_distinct(std::span<const RationalVector> points) {
  std::unordered_set<RationalVector, RationalVectorHash> seen;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!seen.insert(points[i]).second)
      throw DegenerateError("point " + std::to_string(i) + " duplicates an earlier point");
}

}  // namespace

BasisPrefix basis_prefix(const IntegerMatrix& gram) { return basis_prefix_impl(gram, false); }

BasisPrefix basis_prefix(std::span<const RationalVector> points) {
  if (points.empty()) throw DegenerateError("basis prefix: no points");
  return basis_prefix(integer_gram(integerize(points).points));
}

std::vector<std::size_t> order(const IntegerMatrix& gram, std::span<const std::size_t> prefix,
                               std::span<const std::size_t> pool) {
  bool tie = false;
  auto out = sort_by_profile(gram, prefix, pool, tie);
  if (tie) throw DegenerateError("order: two points share an inner-product profile");
  return out;
}

std::vector<RationalVector> order(std::span<const RationalVector> prefix,
                                  std::span<const RationalVector> pool) {
  std::vector<RationalVector> all(prefix.begin(), prefix.end());
  all.insert(all.end(), pool.begin(), pool.end());
  if (all.empty()) return {};
  const auto gram = integer_gram(integerize(all).points);
  std::vector<std::size_t> pre(prefix.size());
  std::iota(pre.begin(), pre.end(), std::size_t{0});
  std::vector<std::size_t> rest(pool.size());
  std::iota(rest.begin(), rest.end(), prefix.size());
  std::vector<RationalVector> out;
  for (std::size_t i : order(gram, pre, rest)) out.push_back(all[i]);
  return out;
}

SymmetryGroup find_symmetries(const IntegerMatrix& gram) {
  const auto bp = basis_prefix(gram);
  const auto ref = reorder(gram, bp.reordering);
  std::vector<Permutation> found;
  PrefixSearch search(ref, gram, bp.d, [&](const std::vector<std::size_t>& full) {
    std::vector<std::size_t> images(gram.size());
    for (std::size_t a = 0; a < full.size(); ++a) images[bp.reordering[a]] = full[a];
    found.emplace_back(std::move(images));
    return true;
  });
  search.run();
  return SymmetryGroup(std::move(found));
}

SymmetryGroup find_symmetries(std::span<const RationalVector> points) {
  if (points.empty()) throw DegenerateError("find_symmetries: no points");
  require_distinct(points);
  return find_symmetries(integer_gram(integerize(points).points));
}

std::optional<Permutation> congruent(const IntegerMatrix& gram_a, const IntegerMatrix& gram_b) {
  if (gram_a.size() != gram_b.size()) return std::nullopt;
  if (gram_a.empty()) return Permutation();
  BasisPrefix bp;
  try {
    bp = basis_prefix_impl(gram_a, true);
  } catch (const DegenerateError&) {
    // a is all zeros: congruent iff b is too.
    for (const auto& row : gram_b)
      if (!is_zero(row)) return std::nullopt;
    return Permutation::identity(gram_a.size());
  }
  const auto ref = reorder(gram_a, bp.reordering);
  std::optional<Permutation> result;
  PrefixSearch search(ref, gram_b, bp.d, [&](const std::vector<std::size_t>& full) {
    std::vector<std::size_t> images(gram_a.size());
    for (std::size_t a = 0; a < full.size(); ++a) images[bp.reordering[a]] = full[a];
    result = Permutation(std::move(images));
    return false;
  });
  search.run();
  return result;
}

std::optional<Permutation> congruent(std::span<const RationalVector> points_a,
                                     std::span<const RationalVector> points_b) {
  if (points_a.size() != points_b.size()) return std::nullopt;
  std::vector<RationalVector> all(points_a.begin(), points_a.end());
  all.insert(all.end(), points_b.begin(), points_b.end());
  const Integer l = lcm_of_denominators(all);
  auto scaled = [&](std::span<const RationalVector> pts) {
    std::vector<IntegerVector> out;
    for (const auto& p : pts) {
      IntegerVector v(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i].get_num() * (l / p[i].get_den());
      out.push_back(std::move(v));
    }
    return integer_gram(out);
  };
  return congruent(scaled(points_a), scaled(points_b));
}

std::vector<Orbit> orbits(const SymmetryGroup& group, std::size_t count,
                          const std::function<std::size_t(const Permutation&, std::size_t)>& action) {
  std::vector<bool> seen(count, false);
  std::vector<Orbit> out;
  for (std::size_t item = 0; item < count; ++item) {
    if (seen[item]) continue;
    Orbit orbit{item, {}};
    for (const auto& g : group.elements()) {
      const std::size_t image = action(g, item);
      if (image >= count) throw ConsistencyError("group action maps an item outside the item set");
      if (!seen[image]) {
        seen[image] = true;
        orbit.members.push_back(image);
      }
    }
    std::sort(orbit.members.begin(), orbit.members.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace sigdimlab
