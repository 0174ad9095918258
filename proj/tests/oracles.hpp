#pragma once

// Slow, obviously-correct reference implementations used only by the tests.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "sigdimlab/exact.hpp"
#include "sigdimlab/polytope.hpp"

namespace oracle {

using sigdimlab::Rational;
using sigdimlab::RationalMatrix;
using sigdimlab::RationalVector;

// Rank by textbook Gaussian elimination over the rationals.
inline std::size_t rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

// Every permutation sigma of {0..m-1} with x_i . x_j == x_sigma(i) . x_sigma(j).
inline std::set<std::vector<std::size_t>> symmetries(const std::vector<RationalVector>& pts) {
  const std::size_t m = pts.size();
  std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[i][j] = sigdimlab::dot(pts[i], pts[j]);
  std::vector<std::size_t> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::set<std::vector<std::size_t>> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = 0; j < m && ok; ++j) ok = g[i][j] == g[sigma[i]][sigma[j]];
    if (ok) out.insert(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

// Is there a sigma with a_i . a_j == b_sigma(i) . b_sigma(j)?
inline bool congruent(const std::vector<RationalVector>& a, const std::vector<RationalVector>& b) {
  if (a.size() != b.size()) return false;
  const std::size_t m = a.size();
  std::vector<std::size_t> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = 0; j < m && ok; ++j) ok = sigdimlab::dot(a[i], a[j]) == sigdimlab::dot(b[sigma[i]], b[sigma[j]]);
    if (ok) return true;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

// All functions {0..m-1} -> {0..n-1} respecting the support with image size
// at most d, by counting through every n^m function.
inline std::vector<std::vector<std::size_t>> classical_strategies(const std::vector<std::vector<bool>>& support,
                                                                  std::size_t n, std::size_t d) {
  const std::size_t m = support.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> f(m, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = support[i][f[i]];
    if (ok && std::set<std::size_t>(f.begin(), f.end()).size() <= d) out.push_back(f);
    std::size_t k = m;
    while (k > 0) {
      if (++f[k - 1] < n) break;
      f[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

// Solves the square system by Gaussian elimination; nullopt when singular.
inline std::optional<RationalVector> solve(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[c][k];
      b[i] -= f * b[c];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Vertices of {x : A x <= b} in R^dim by solving every dim-subset of tight
// constraints and keeping the feasible solutions.
inline std::set<RationalVector> vertices(const std::vector<RationalVector>& a, const RationalVector& b,
                                         std::size_t dim) {
  std::set<RationalVector> out;
  const std::size_t k = a.size();
  std::vector<bool> pick(k, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(dim, k)), true);
  do {
    std::vector<RationalVector> rows;
    RationalVector rhs;
    for (std::size_t i = 0; i < k; ++i)
      if (pick[i]) {
        rows.push_back(a[i]);
        rhs.push_back(b[i]);
      }
    const auto x = solve(rows, rhs);
    if (!x) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < k && feasible; ++i) feasible = sigdimlab::dot(a[i], *x) <= b[i];
    if (feasible) out.insert(*x);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// min c.x over {x >= 0 : A x = b} by enumerating bases; nullopt when empty.
// Only for bounded programs.
inline std::optional<Rational> lp_min(const std::vector<RationalVector>& a, const RationalVector& b,
                                      const RationalVector& c) {
  const std::size_t rows = a.size();
  const std::size_t n = c.size();
  std::optional<Rational> best;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(rows, n)), true);
  // Drop linearly dependent rows first.
  std::vector<RationalVector> ar;
  RationalVector br;
  for (std::size_t i = 0; i < rows; ++i) {
    auto trial = ar;
    RationalVector aug = a[i];
    trial.push_back(aug);
    if (rank(trial) > ar.size()) {
      ar.push_back(a[i]);
      br.push_back(b[i]);
    } else {
      // consistent only if the augmented rank does not grow
      std::vector<RationalVector> aug_rows;
      for (std::size_t r = 0; r < ar.size(); ++r) {
        auto row = ar[r];
        row.push_back(br[r]);
        aug_rows.push_back(row);
      }
      auto row = a[i];
      row.push_back(b[i]);
      aug_rows.push_back(row);
      if (rank(aug_rows) > ar.size()) return std::nullopt;
    }
  }
  const std::size_t r = ar.size();
  std::fill(pick.begin(), pick.end(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(r, n)), true);
  do {
    std::vector<std::size_t> basis;
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) basis.push_back(j);
    std::vector<RationalVector> sq(r, RationalVector(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) sq[i][k] = ar[i][basis[k]];
    std::optional<RationalVector> xb = r == 0 ? std::optional<RationalVector>(RationalVector{}) : solve(sq, br);
    if (!xb) continue;
    if (std::any_of(xb->begin(), xb->end(), [](const Rational& v) { return v < 0; })) continue;
    Rational val = 0;
    for (std::size_t k = 0; k < r; ++k) val += c[basis[k]] * (*xb)[k];
    if (!best || val < *best) best = val;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

inline Rational random_rational(std::mt19937& rng, int lo, int hi, int max_den = 1) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int q = den(rng);
  std::uniform_int_distribution<int> num(lo * q, hi * q);
  Rational x(num(rng), q);
  x.canonicalize();
  return x;
}

}  // namespace oracle
