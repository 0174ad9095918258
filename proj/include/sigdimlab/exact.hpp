#pragma once

// Exact scalars, vectors and matrices.
//
// Rational wraps GMP's mpq_class. Every value handed out by this library is
// canonical: reduced, with a positive denominator. Integer kernels (rank,
// Gram matrices on integerized points) never divide except by exact
// Bareiss divisors.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigdimlab {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws ParseError on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);
std::string to_string(const RationalVector& v);

Rational dot(const RationalVector& a, const RationalVector& b);
Integer dot(const IntegerVector& a, const IntegerVector& b);

RationalVector operator+(const RationalVector& a, const RationalVector& b);
RationalVector operator-(const RationalVector& a, const RationalVector& b);
RationalVector operator*(const Rational& k, const RationalVector& v);
RationalVector operator-(const RationalVector& v);

bool is_zero(const RationalVector& v);
bool is_zero(const IntegerVector& v);

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
void make_primitive(IntegerVector& v);

/// Positive multiple of v with integral, coprime entries.
IntegerVector primitive_integer_vector(const RationalVector& v);

RationalVector to_rational(const IntegerVector& v);

/// Dense row-major matrix of rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix from_rows(std::span<const RationalVector> rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RationalVector row(std::size_t r) const;
  RationalVector column(std::size_t c) const;
  std::vector<RationalVector> row_vectors() const;

  RationalMatrix transpose() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Matrix of pairwise dot products. Throws DimensionError on ragged input.
RationalMatrix gram(std::span<const RationalVector> points);

/// Exact rank by fraction-free elimination; pivot = first nonzero entry in
/// column order.
std::size_t rank(const RationalMatrix& mat);
std::size_t rank(std::vector<IntegerVector> rows);
std::size_t rank(std::span<const RationalVector> rows);

/// Unique solution x of A x = b for square invertible A, or an empty vector
/// when A is singular.
RationalVector solve_square(const RationalMatrix& a, const RationalVector& b);

/// Inverse of a square matrix. Throws DegenerateError when singular.
RationalMatrix inverse(const RationalMatrix& a);

Integer lcm_of_denominators(std::span<const RationalVector> points);

struct Integerized {
  std::vector<IntegerVector> points;
  /// inputs = scale * points
  Rational scale;
};

/// Scales every point by L = lcm of all denominators, so the outputs are
/// integral and scale = 1/L.
Integerized integerize(std::span<const RationalVector> points);

/// Same as integerize, entrywise, for a matrix (used on Gram matrices).
std::vector<IntegerVector> integerize(const RationalMatrix& mat);

/// Lexicographic comparison helpers, used for canonical orderings.
bool lex_less(const RationalVector& a, const RationalVector& b);
bool lex_less(const IntegerVector& a, const IntegerVector& b);

struct RationalVectorHash {
  std::size_t operator()(const RationalVector& v) const;
};
struct IntegerVectorHash {
  std::size_t operator()(const IntegerVector& v) const;
};

}  // namespace sigdimlab
