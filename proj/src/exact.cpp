#include "sigdimlab/exact.hpp"

#include <algorithm>
#include <cctype>

#include "sigdimlab/error.hpp"

namespace sigdimlab {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z)) * 0x9e3779b97f4a7c15ULL;
  if (mpz_size(z) > 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0));
  if (mpz_sgn(z) < 0) h = ~h;
  return h;
}

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational \"" + original + "\"");
  }
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in \"" + original + "\"");
  if (negative) p = -p;
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  check_same_size(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

Integer dot(const IntegerVector& a, const IntegerVector& b) {
  check_same_size(a.size(), b.size());
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

RationalVector operator+(const RationalVector& a, const RationalVector& b) {
  check_same_size(a.size(), b.size());
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVector operator-(const RationalVector& a, const RationalVector& b) {
  check_same_size(a.size(), b.size());
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RationalVector operator*(const Rational& k, const RationalVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * v[i];
  return out;
}

RationalVector operator-(const RationalVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool is_zero(const IntegerVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

void make_primitive(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntegerVector primitive_integer_vector(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntegerVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (l / v[i].get_den());
  }
  make_primitive(out);
  return out;
}

RationalVector to_rational(const IntegerVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(std::span<const RationalVector> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    check_same_size(rows[r].size(), cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<RationalVector> RationalMatrix::row_vectors() const {
  std::vector<RationalVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  check_same_size(a.cols_, b.rows_);
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

RationalMatrix gram(std::span<const RationalVector> points) {
  RationalMatrix g(points.size(), points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i; j < points.size(); ++j) {
      g(i, j) = dot(points[i], points[j]);
      g(j, i) = g(i, j);
    }
  return g;
}

std::size_t rank(std::vector<IntegerVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) check_same_size(r.size(), cols);
  std::size_t r = 0;
  Integer prev = 1;
  Integer tmp;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Integer piv = rows[r][c];
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const Integer factor = rows[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        // Bareiss step: (a_ij * piv - a_ic * a_rj) / prev is exact.
        tmp = rows[i][j] * piv;
        mpz_submul(tmp.get_mpz_t(), factor.get_mpz_t(), rows[r][j].get_mpz_t());
        mpz_divexact(rows[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      rows[i][c] = 0;
    }
    prev = piv;
    ++r;
  }
  return r;
}

std::size_t rank(std::span<const RationalVector> rows) {
  std::vector<IntegerVector> ints;
  ints.reserve(rows.size());
  for (const auto& r : rows) ints.push_back(primitive_integer_vector(r));
  return rank(std::move(ints));
}

std::size_t rank(const RationalMatrix& mat) {
  const auto rows = mat.row_vectors();
  return rank(std::span<const RationalVector>(rows));
}

RationalVector solve_square(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("solve_square: matrix is not square");
  check_same_size(b.size(), n);
  RationalMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return {};
    if (p != c)
      for (std::size_t j = 0; j <= n; ++j) std::swap(m(p, j), m(c, j));
    const Rational inv = 1 / m(c, c);
    for (std::size_t j = c; j <= n; ++j) m(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j <= n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m(i, n);
  return x;
}

RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("inverse: matrix is not square");
  RationalMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    RationalVector e(n);
    e[c] = 1;
    const auto x = solve_square(a, e);
    if (x.empty()) throw DegenerateError("inverse: matrix is singular");
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = x[r];
  }
  return inv;
}

Integer lcm_of_denominators(std::span<const RationalVector> points) {
  Integer l = 1;
  for (const auto& p : points)
    for (const auto& x : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

Integerized integerize(std::span<const RationalVector> points) {
  Integerized out;
  const Integer l = lcm_of_denominators(points);
  out.scale = Rational(Integer(1), l);
  out.scale.canonicalize();
  out.points.reserve(points.size());
  for (const auto& p : points) {
    IntegerVector v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i].get_num() * (l / p[i].get_den());
    out.points.push_back(std::move(v));
  }
  return out;
}

std::vector<IntegerVector> integerize(const RationalMatrix& mat) {
  const auto rows = mat.row_vectors();
  return integerize(std::span<const RationalVector>(rows)).points;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool lex_less(const IntegerVector& a, const IntegerVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t RationalVectorHash::operator()(const RationalVector& v) const {
  std::size_t seed = v.size();
  for (const auto& x : v) {
    hash_combine(seed, hash_mpz(x.get_num_mpz_t()));
    hash_combine(seed, hash_mpz(x.get_den_mpz_t()));
  }
  return seed;
}

std::size_t IntegerVectorHash::operator()(const IntegerVector& v) const {
  std::size_t seed = v.size();
  for (const auto& x : v) hash_combine(seed, hash_mpz(x.get_mpz_t()));
  return seed;
}

}  // namespace sigdimlab
