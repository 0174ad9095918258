#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sigdimlab/error.hpp"
#include "sigdimlab/lp.hpp"
#include "sigdimlab/polytope.hpp"

using namespace sigdimlab;

namespace {

RationalVector rv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

RationalMatrix rows(std::initializer_list<RationalVector> r) {
  std::vector<RationalVector> v(r);
  return RationalMatrix::from_rows(v);
}

}  // namespace

TEST_CASE("minimize x subject to x >= 1/3") {
  LinearProgram lp;
  lp.objective = rv({1});
  lp.lower_bounds = {std::nullopt};
  lp.eq_lhs = RationalMatrix(0, 1);
  lp.le_lhs = rows({rv({-1})});
  lp.le_rhs = rv({Rational(-1, 3)});
  const LPOutcome out = solve(lp);
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.value == Rational(1, 3));
  CHECK(out.primal == rv({Rational(1, 3)}));
  CHECK(is_dual_certificate(lp, out.dual, out.value));
}

TEST_CASE("lower bounds are honoured directly") {
  LinearProgram lp = LinearProgram::nonnegative(1);
  lp.objective = rv({1});
  lp.lower_bounds = {Rational(1, 3)};
  const LPOutcome out = solve(lp);
  REQUIRE(out.optimal());
  CHECK(out.value == Rational(1, 3));
}

TEST_CASE("x >= 0 and x <= -1 is infeasible with a Farkas certificate") {
  LinearProgram lp = LinearProgram::nonnegative(1);
  lp.le_lhs = rows({rv({1})});
  lp.le_rhs = rv({-1});
  const LPOutcome out = solve(lp);
  REQUIRE(out.status == LPStatus::Infeasible);
  CHECK(is_farkas_certificate(lp, out.farkas));
  CHECK_FALSE(is_farkas_certificate(lp, RationalVector{0}));
}

TEST_CASE("unbounded program reports a ray") {
  LinearProgram lp = LinearProgram::nonnegative(2);
  lp.objective = rv({-1, 0});
  lp.le_lhs = rows({rv({1, -1})});
  lp.le_rhs = rv({1});
  const LPOutcome out = solve(lp);
  REQUIRE(out.status == LPStatus::Unbounded);
  CHECK(is_primal_feasible(lp, out.primal));
  CHECK(dot(lp.objective, out.ray) < 0);
}

TEST_CASE("feasible wrapper") {
  // lambda_1 A_1 + lambda_2 A_2 = A_1 with A_1, A_2 the two constant 2x1 strategies
  // flattened, plus normalization.
  const RationalMatrix a = rows({rv({1, 0}), rv({0, 1}), rv({1, 1})});
  const LPOutcome out = feasible(a, rv({1, 0, 1}), true);
  REQUIRE(out.optimal());
  CHECK(out.primal == rv({1, 0}));

  const LPOutcome bad = feasible(rows({rv({1}), rv({1})}), rv({1, 2}), false);
  REQUIRE(bad.status == LPStatus::Infeasible);
}

TEST_CASE("uniform 2x2 matrix over the four deterministic strategies") {
  // columns: f = (0,0), (0,1), (1,0), (1,1); rows: entries p00, p01, p10, p11, sum
  const RationalMatrix a = rows({rv({1, 1, 0, 0}), rv({0, 0, 1, 1}), rv({1, 0, 1, 0}), rv({0, 1, 0, 1}),
                                 rv({1, 1, 1, 1})});
  const Rational h(1, 2);
  const LPOutcome out = feasible(a, rv({h, h, h, h, 1}), true);
  REQUIRE(out.optimal());
  RationalVector check(5);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t k = 0; k < 4; ++k) check[r] += a(r, k) * out.primal[k];
  CHECK(check == rv({h, h, h, h, 1}));
  // The equal mixture is one valid decomposition.
  const Rational q(1, 4);
  LinearProgram lp = LinearProgram::nonnegative(4);
  lp.eq_lhs = a;
  lp.eq_rhs = rv({h, h, h, h, 1});
  CHECK(is_primal_feasible(lp, rv({q, q, q, q})));
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp = LinearProgram::nonnegative(2);
  lp.eq_lhs = RationalMatrix(1, 3);
  lp.eq_rhs = rv({0});
  CHECK_THROWS_AS(solve(lp), DimensionError);
}

TEST_CASE("random bounded programs match basis enumeration") {
  std::mt19937 rng(2024);
  int optimal = 0, infeasible = 0;
  for (int t = 0; t < 120; ++t) {
    const std::size_t m = 1 + rng() % 3;
    const std::size_t n = 2 + rng() % 4;
    std::vector<RationalVector> a(m, RationalVector(n));
    for (auto& r : a)
      for (auto& x : r) x = oracle::random_rational(rng, -3, 3, 2);
    // bounded: add a row sum x = s
    RationalVector total(n, Rational(1));
    a.push_back(total);
    RationalVector b(m + 1);
    for (auto& x : b) x = oracle::random_rational(rng, -2, 4, 3);
    b[m] = oracle::random_rational(rng, 1, 5, 2);
    RationalVector c(n);
    for (auto& x : c) x = oracle::random_rational(rng, -5, 5, 3);

    LinearProgram lp = LinearProgram::nonnegative(n);
    lp.objective = c;
    lp.eq_lhs = RationalMatrix::from_rows(a);
    lp.eq_rhs = b;
    const LPOutcome out = solve(lp);
    const auto expected = oracle::lp_min(a, b, c);
    if (expected) {
      REQUIRE(out.status == LPStatus::Optimal);
      CHECK(out.value == *expected);
      CHECK(is_primal_feasible(lp, out.primal));
      CHECK(is_dual_certificate(lp, out.dual, out.value));
      ++optimal;
    } else {
      REQUIRE(out.status == LPStatus::Infeasible);
      CHECK(is_farkas_certificate(lp, out.farkas));
      ++infeasible;
    }
  }
  CHECK(optimal > 10);
  CHECK(infeasible > 10);
}

TEST_CASE("free variables and inequality rows") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y free but x >= -10
  LinearProgram lp;
  lp.objective = rv({-1, -1});
  lp.lower_bounds = {Rational(-10), std::nullopt};
  lp.eq_lhs = RationalMatrix(0, 2);
  lp.le_lhs = rows({rv({1, 2}), rv({3, 1})});
  lp.le_rhs = rv({4, 6});
  const LPOutcome out = solve(lp);
  REQUIRE(out.optimal());
  CHECK(out.value == Rational(-14, 5));
  CHECK(out.primal == rv({Rational(8, 5), Rational(6, 5)}));
}

TEST_CASE("triangle asymmetry LP gives 2") {
  const VRep tri = VRep::from_vertices({rv({0, 0}), rv({1, 0}), rv({0, 1})});
  CHECK(minkowski_asymmetry(Polytope(tri)) == 2);
}

TEST_CASE("solving twice gives identical output") {
  const RationalMatrix a = rows({rv({1, 1, 1}), rv({1, -1, 0})});
  const LPOutcome x = feasible(a, rv({1, 0}), true);
  const LPOutcome y = feasible(a, rv({1, 0}), true);
  CHECK(x.primal == y.primal);
  CHECK(x.dual == y.dual);
}
