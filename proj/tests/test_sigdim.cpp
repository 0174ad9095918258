#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sigdimlab/error.hpp"
#include "sigdimlab/gpt.hpp"
#include "sigdimlab/sigdim.hpp"
#include "sigdimlab/solids.hpp"

using namespace sigdimlab;

namespace {

RationalVector rv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

StateSpace states_of(const char* name) { return homogenize(generate_solid(parse_solid_spec(name))); }

StateSpace polygon(std::vector<RationalVector> v) { return homogenize(VRep::from_vertices(std::move(v))); }

RationalMatrix full(std::size_t m, std::size_t n) {
  RationalMatrix p(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = Rational(1, static_cast<unsigned long>(n));
  return p;
}

std::vector<ClassicalVertex> drain(ClassicalVertexStream s) {
  std::vector<ClassicalVertex> out;
  ClassicalVertex v;
  while (s.next(v)) out.push_back(v);
  return out;
}

RationalMatrix random_stochastic(std::mt19937& rng, std::size_t m, std::size_t n) {
  RationalMatrix p(m, n);
  std::uniform_int_distribution<int> w(0, 4);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<int> weights(n);
    int total = 0;
    while (total == 0) {
      total = 0;
      for (auto& x : weights) total += (x = w(rng));
    }
    for (std::size_t j = 0; j < n; ++j) p(i, j) = Rational(weights[j], total);
    for (std::size_t j = 0; j < n; ++j) p(i, j).canonicalize();
  }
  return p;
}

}  // namespace

TEST_CASE("bounds") {
  const BoundsRecord cube = bounds(states_of("cube"));
  CHECK(cube.lower == 2);
  CHECK(cube.upper == 3);
  CHECK(cube.cs);
  const BoundsRecord tt = bounds(states_of("truncated-tetrahedron"));
  CHECK(tt.lower == 3);
  CHECK(tt.upper == 4);
  CHECK_FALSE(tt.cs);
  const BoundsRecord tri = bounds(polygon({rv({0, 0}), rv({4, 1}), rv({1, 3})}));
  CHECK(tri.lower == 3);
  CHECK(tri.upper == 3);
  CHECK_FALSE(tri.cs);
  const BoundsRecord seg = bounds(polygon({rv({0}), rv({1})}));
  CHECK(seg.lower == 2);
  CHECK(seg.upper == 2);
  CHECK_THROWS_AS(bounds(polygon({rv({1, 1})})), DegenerateError);
}

TEST_CASE("planar closed form") {
  CHECK(sigdim_2d(polygon({rv({1, 0}), rv({0, 1}), rv({-1, 0}), rv({0, -1})})) == 2);
  CHECK(sigdim_2d(polygon({rv({0, 0}), rv({2, 0}), rv({3, 2}), rv({1, 3}), rv({-1, 1})})) == 3);
  CHECK(sigdim_2d(polygon({rv({2, 0}), rv({1, 2}), rv({-1, 2}), rv({-2, 0}), rv({-1, -2}), rv({1, -2})})) == 2);
  CHECK_THROWS_AS(sigdim_2d(states_of("cube")), DimensionError);
}

TEST_CASE("classical vertex examples") {
  CHECK(drain(classical_vertices(full(2, 2), 2)).size() == 4);
  CHECK(drain(classical_vertices(RationalMatrix::identity(3), 2)).empty());
  CHECK(drain(classical_vertices(full(3, 2), 2)).size() == 8);
  CHECK(drain(classical_vertices(full(3, 4), 1)).size() == 4);
}

TEST_CASE("classical vertex stream equals brute force, in lexicographic order") {
  std::mt19937 rng(17);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % 4;
    const std::size_t d = 1 + rng() % 3;
    std::vector<std::vector<bool>> support(m, std::vector<bool>(n));
    std::vector<std::vector<std::size_t>> rows(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if ((support[i][j] = rng() % 3 != 0)) rows[i].push_back(j);
    std::vector<std::vector<std::size_t>> got;
    for (const auto& v : drain(ClassicalVertexStream(rows, d))) {
      CHECK(v.image_size() <= d);
      got.push_back(v.assignment);
    }
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(got == oracle::classical_strategies(support, n, d));
  }
}

TEST_CASE("vertex count formula") {
  CHECK(vertex_count(2, 2, 2) == 4);
  CHECK(vertex_count(3, 2, 2) == 8);
  for (std::size_t m = 1; m <= 5; ++m) CHECK(vertex_count(m, 7, 1) == 7);
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t d = 1; d <= 3; ++d)
        CHECK(Integer(static_cast<unsigned long>(drain(classical_vertices(full(m, n), d)).size())) ==
              vertex_count(m, n, d));
}

TEST_CASE("simulable examples") {
  const Rational h(1, 2);
  RationalMatrix uniform(2, 2);
  uniform(0, 0) = uniform(0, 1) = uniform(1, 0) = uniform(1, 1) = h;
  const auto cert = simulable(uniform, 1);
  REQUIRE(cert);
  CHECK(cert->verify(uniform));
  CHECK(cert->weights == rv({h, h}));
  CHECK(cert->vertices[0].assignment == std::vector<std::size_t>{0, 0});
  CHECK(cert->vertices[1].assignment == std::vector<std::size_t>{1, 1});

  const auto enumerated = simulable(uniform, 1, SimulabilityMethod::VertexEnumeration);
  REQUIRE(enumerated);
  CHECK(enumerated->weights == rv({h, h}));

  // enough messages for every distinct row
  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    const RationalMatrix p = random_stochastic(rng, 3, 4);
    CHECK(simulable(p, 3));
  }

  // the identity needs as many messages as rows
  CHECK_FALSE(simulable(RationalMatrix::identity(3), 2));
  CHECK(simulable(RationalMatrix::identity(3), 3));

  CHECK_THROWS_AS(simulable(RationalMatrix::identity(2), 0), DimensionError);
  RationalMatrix bad = RationalMatrix::identity(2);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(simulable(bad, 2), DimensionError);
}

TEST_CASE("some octahedron measurement is not simulable with two messages") {
  const StateSpace s = states_of("octahedron");
  const auto meas = extremal_measurements(s, extremal_effects(s));
  std::size_t failing = 0;
  for (const auto& m : meas)
    failing += !simulable(reduce_rows(correlation_matrix(s, m.elements).p), 2).has_value();
  CHECK(failing >= 1);
}

TEST_CASE("message-subset and vertex-enumeration tests agree") {
  std::mt19937 rng(77);
  int yes = 0, no = 0;
  for (int t = 0; t < 80; ++t) {
    const std::size_t m = 2 + rng() % 4;
    const std::size_t n = 2 + rng() % 3;
    const RationalMatrix p = random_stochastic(rng, m, n);
    for (std::size_t d = 1; d <= 3; ++d) {
      const auto a = simulable(p, d, SimulabilityMethod::MessageSubsets);
      const auto b = simulable(p, d, SimulabilityMethod::VertexEnumeration);
      REQUIRE(a.has_value() == b.has_value());
      if (a) {
        CHECK(a->verify(p));
        CHECK(b->verify(p));
        CHECK(simulable(p, d + 1).has_value());
        ++yes;
      } else {
        ++no;
      }
    }
  }
  CHECK(yes > 20);
  CHECK(no > 20);
}

TEST_CASE("certificates that do not reproduce p are rejected") {
  const RationalMatrix p = RationalMatrix::identity(2);
  SimulationCertificate c;
  c.d = 2;
  c.vertices = {{{0, 1}}};
  c.weights = rv({1});
  CHECK(c.verify(p));
  c.weights = rv({Rational(1, 2)});
  CHECK_FALSE(c.verify(p));
  c.weights = rv({1});
  c.d = 1;
  CHECK_FALSE(c.verify(p));
  c.d = 2;
  c.vertices = {{{1, 0}}};
  CHECK_FALSE(c.verify(p));
}

TEST_CASE("row reduction keeps the extreme rows") {
  RationalMatrix p(3, 2);
  p(0, 0) = 1;
  p(1, 0) = p(1, 1) = Rational(1, 2);
  p(2, 1) = 1;
  const RationalMatrix r = reduce_rows(p);
  CHECK(r.rows() == 2);
  CHECK(r.row(0) == rv({1, 0}));
  CHECK(r.row(1) == rv({0, 1}));
}

TEST_CASE("driver on small solids") {
  CHECK(signaling_dimension(states_of("octahedron")).value == 3);
  CHECK(signaling_dimension(states_of("cube")).value == 2);
  CHECK(signaling_dimension(states_of("truncated-octahedron")).value == 2);
  CHECK(signaling_dimension(states_of("hyperoctahedron:4")).value == 3);
}

TEST_CASE("orbit reduction, threads and methods do not change the answer") {
  for (const char* name : {"octahedron", "cube", "truncated-tetrahedron", "triakis-tetrahedron"}) {
    CAPTURE(name);
    const StateSpace s = states_of(name);
    const SigDimReport base = signaling_dimension(s);
    SigDimOptions all;
    all.use_symmetry = false;
    CHECK(signaling_dimension(s, all).value == base.value);
    SigDimOptions threads;
    threads.jobs = 4;
    CHECK(signaling_dimension(s, threads).value == base.value);
  }
  // One LP column per classical vertex is only affordable for few states.
  for (const char* name : {"octahedron", "cube"}) {
    CAPTURE(name);
    const StateSpace s = states_of(name);
    SigDimOptions enumerate;
    enumerate.method = SimulabilityMethod::VertexEnumeration;
    enumerate.check_monotonicity = true;
    CHECK(signaling_dimension(s, enumerate).value == signaling_dimension(s).value);
  }
}

TEST_CASE("planar pipeline agrees with the closed form") {
  const std::vector<std::vector<RationalVector>> polygons{
      {rv({0, 0}), rv({1, 0}), rv({0, 1})},
      {rv({1, 0}), rv({0, 1}), rv({-1, 0}), rv({0, -1})},
      {rv({0, 0}), rv({2, 0}), rv({3, 2}), rv({1, 3}), rv({-1, 1})},
      {rv({2, 0}), rv({1, 2}), rv({-1, 2}), rv({-2, 0}), rv({-1, -2}), rv({1, -2})},
      {rv({0, 0}), rv({3, 0}), rv({4, 1}), rv({1, 1})},
  };
  SigDimOptions generic;
  generic.planar_shortcut = false;
  generic.use_cs_bounds = false;
  generic.check_monotonicity = true;
  for (const auto& v : polygons) {
    const StateSpace s = polygon(v);
    const SigDimReport r = signaling_dimension(s, generic);
    CHECK_FALSE(r.planar_shortcut);
    CHECK(r.value == sigdim_2d(s));
    CHECK(signaling_dimension(s).planar_shortcut);
  }
}

TEST_CASE("reports carry verified certificates") {
  const StateSpace s = states_of("truncated-octahedron");
  const SigDimReport r = signaling_dimension(s);
  CHECK(r.bounds.lower <= r.value);
  CHECK(r.value <= r.bounds.upper);
  for (const auto& c : r.classes) {
    if (c.minimal_d < r.bounds.upper) {
      REQUIRE(c.certificate);
      CHECK(c.certificate->verify(c.reduced));
    }
  }
}
