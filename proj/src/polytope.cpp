#include "sigdimlab/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "sigdimlab/error.hpp"
#include "sigdimlab/lp.hpp"

namespace sigdimlab {

namespace {

// Fixed-width bitset sized at construction; tracks which constraints a ray
// is tight on.
class Incidence {
 public:
  explicit Incidence(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  Incidence operator&(const Incidence& o) const {
    Incidence r(*this);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
    return r;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct TrackedRay {
  IntegerVector v;
  Incidence zero;
};

IntegerVector combine(const Integer& a, const IntegerVector& x, const Integer& b,
                      const IntegerVector& y) {
  // a*x - b*y
  IntegerVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = a * x[i];
    mpz_submul(out[i].get_mpz_t(), b.get_mpz_t(), y[i].get_mpz_t());
  }
  make_primitive(out);
  return out;
}

}  // namespace

ConeGenerators cone_generators(std::span<const IntegerVector> constraints, std::size_t dim) {
  std::vector<IntegerVector> rows;
  for (const auto& c : constraints) {
    if (c.size() != dim) throw DimensionError("cone_generators: constraint of wrong length");
    IntegerVector p = c;
    make_primitive(p);
    if (!is_zero(p)) rows.push_back(std::move(p));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  const std::size_t nrows = rows.size();

  std::vector<IntegerVector> lineality;
  for (std::size_t i = 0; i < dim; ++i) {
    IntegerVector e(dim, Integer(0));
    e[i] = 1;
    lineality.push_back(std::move(e));
  }
  std::vector<TrackedRay> rays;

  for (std::size_t k = 0; k < nrows; ++k) {
    const IntegerVector& a = rows[k];

    auto lin = std::find_if(lineality.begin(), lineality.end(),
                            [&](const IntegerVector& l) { return sgn(dot(a, l)) != 0; });
    if (lin != lineality.end()) {
      IntegerVector l = *lin;
      lineality.erase(lin);
      Integer al = dot(a, l);
      if (sgn(al) < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      for (auto& other : lineality) {
        const Integer c = dot(a, other);
        if (sgn(c) != 0) other = combine(al, other, c, l);
      }
      for (auto& r : rays) {
        const Integer c = dot(a, r.v);
        if (sgn(c) != 0) r.v = combine(al, r.v, c, l);
        r.zero.set(k);
      }
      TrackedRay fresh{l, Incidence(nrows)};
      for (std::size_t prev = 0; prev < k; ++prev) fresh.zero.set(prev);
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<Integer> s(rays.size());
    bool any_negative = false;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(a, rays[i].v);
      if (sgn(s[i]) < 0) any_negative = true;
    }
    if (!any_negative) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (sgn(s[i]) == 0) rays[i].zero.set(k);
      continue;
    }

    // Adjacent rays r, q satisfy rank(A_{Z(r) & Z(q)}) = dim - |L| - 2.
    const std::size_t pointed_dim = dim - lineality.size();
    const std::size_t required = pointed_dim >= 2 ? pointed_dim - 2 : 0;
    std::vector<TrackedRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sgn(s[i]) >= 0) {
        TrackedRay r = rays[i];
        if (sgn(s[i]) == 0) r.zero.set(k);
        next.push_back(std::move(r));
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sgn(s[i]) <= 0) continue;
      for (std::size_t j = 0; j < rays.size(); ++j) {
        if (sgn(s[j]) >= 0) continue;
        Incidence common = rays[i].zero & rays[j].zero;
        if (common.count() < required) continue;
        std::vector<IntegerVector> active;
        for (std::size_t prev = 0; prev < k; ++prev)
          if (common.test(prev)) active.push_back(rows[prev]);
        if (rank(std::move(active)) != required) continue;
        // s_i > 0 > s_j: the combination s_i*q - s_j*r is tight on a.
        TrackedRay fresh{combine(s[i], rays[j].v, s[j], rays[i].v), common};
        fresh.zero.set(k);
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  std::sort(out.rays.begin(), out.rays.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
  out.lineality = std::move(lineality);
  return out;
}

HRep double_description(const VRep& v) {
  if (v.size() == 0) throw DegenerateError("double description: empty vertex set");
  const std::size_t dim = v.ambient_dim();
  std::vector<IntegerVector> gens;
  for (const auto& x : v.vertices()) {
    RationalVector g(dim + 1);
    g[0] = 1;
    std::copy(x.begin(), x.end(), g.begin() + 1);
    gens.push_back(primitive_integer_vector(g));
  }
  // Facet normals are the extreme rays of the dual cone {y : y . g >= 0}.
  const auto dual = cone_generators(gens, dim + 1);
  HRep h;
  auto push = [&](const IntegerVector& y, int sign) {
    Halfspace f;
    f.offset = Rational(sign * y[0]);
    f.normal.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) f.normal[i] = Rational(-sign * y[i + 1]);
    h.inequalities.push_back(std::move(f));
  };
  for (const auto& y : dual.rays) push(y, 1);
  for (const auto& l : dual.lineality) {
    push(l, 1);
    push(l, -1);
  }
  return h;
}

VRep double_description(const HRep& h) {
  if (h.inequalities.empty()) throw DegenerateError("double description: no inequalities (unbounded)");
  const std::size_t dim = h.inequalities.front().normal.size();
  std::vector<IntegerVector> cons;
  for (const auto& f : h.inequalities) {
    if (f.normal.size() != dim) throw DimensionError("double description: ragged inequalities");
    RationalVector row(dim + 1);
    row[0] = f.offset;
    for (std::size_t i = 0; i < dim; ++i) row[i + 1] = -f.normal[i];
    cons.push_back(primitive_integer_vector(row));
  }
  IntegerVector t_nonneg(dim + 1, Integer(0));
  t_nonneg[0] = 1;
  cons.push_back(t_nonneg);
  const auto cone = cone_generators(cons, dim + 1);
  if (!cone.lineality.empty()) throw DegenerateError("double description: polyhedron contains a line");
  std::vector<RationalVector> vertices;
  for (const auto& r : cone.rays) {
    if (sgn(r[0]) == 0) throw DegenerateError("double description: polyhedron is unbounded");
    RationalVector x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = Rational(r[i + 1], r[0]);
      x[i].canonicalize();
    }
    vertices.push_back(std::move(x));
  }
  if (vertices.empty()) throw DegenerateError("double description: polyhedron is empty");
  std::sort(vertices.begin(), vertices.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
  // Extreme rays of the homogenized cone are exactly the vertices.
  return VRep(std::move(vertices));
}

std::size_t affine_dim(std::span<const RationalVector> points) {
  if (points.size() <= 1) return 0;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return rank(std::span<const RationalVector>(diffs));
}

std::size_t affine_dim(const VRep& v) { return affine_dim(v.vertices()); }

RationalVector centroid(std::span<const RationalVector> points) {
  if (points.empty()) throw DegenerateError("centroid of an empty set");
  RationalVector c(points.front().size());
  for (const auto& p : points) c = c + p;
  const Rational inv(1, static_cast<unsigned long>(points.size()));
  return inv * c;
}

std::optional<RationalVector> central_symmetry(const VRep& v) {
  const RationalVector c = centroid(v);
  std::unordered_set<RationalVector, RationalVectorHash> set(v.vertices().begin(), v.vertices().end());
  const RationalVector twice_c = Rational(2) * c;
  for (const auto& x : v.vertices())
    if (!set.contains(twice_c - x)) return std::nullopt;
  return c;
}

VRep VRep::from_vertices(std::vector<RationalVector> vertices) {
  if (vertices.empty()) throw DegenerateError("vertex set is empty");
  const std::size_t dim = vertices.front().size();
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].size() != dim)
      throw DimensionError("vertex " + std::to_string(i) + " has " + std::to_string(vertices[i].size()) +
                           " coordinates, expected " + std::to_string(dim));
  std::unordered_set<RationalVector, RationalVectorHash> seen;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!seen.insert(vertices[i]).second)
      throw DegenerateError("vertex " + std::to_string(i) + " duplicates an earlier vertex");
  const auto kept = extreme_point_indices(vertices);
  if (kept.size() != vertices.size()) {
    std::size_t bad = 0;
    while (bad < kept.size() && kept[bad] == bad) ++bad;
    throw DegenerateError("vertex " + std::to_string(bad) +
                          " is not extreme (it lies in the convex hull of the others)");
  }
  return VRep(std::move(vertices));
}

VRep VRep::hull_of(std::span<const RationalVector> points) {
  return VRep(extreme_points(points));
}

Polytope::Polytope(VRep v) : vrep_(std::move(v)) {
  hrep_ = double_description(vrep_);
  aff_dim_ = affine_dim(vrep_);
}

Rational minkowski_asymmetry(const Polytope& p) {
  if (p.aff_dim() == 0) throw DegenerateError("asymmetry of a single point is undefined");
  const auto& facets = p.hrep().inequalities;
  const auto& verts = p.vrep().vertices();
  const std::size_t dim = p.vrep().ambient_dim();
  // variables: [lambda, d_1 .. d_dim], all free
  LinearProgram lp;
  lp.objective.assign(dim + 1, Rational(0));
  lp.objective[0] = 1;
  lp.lower_bounds.assign(dim + 1, std::nullopt);
  lp.eq_lhs = RationalMatrix(0, dim + 1);
  lp.le_lhs = RationalMatrix(facets.size() * verts.size(), dim + 1);
  lp.le_rhs.resize(facets.size() * verts.size());
  std::size_t row = 0;
  for (const auto& f : facets) {
    for (const auto& w : verts) {
      // a . d - b lambda <= a . w
      lp.le_lhs(row, 0) = -f.offset;
      for (std::size_t i = 0; i < dim; ++i) lp.le_lhs(row, i + 1) = f.normal[i];
      lp.le_rhs[row] = dot(f.normal, w);
      ++row;
    }
  }
  const auto out = solve(lp);
  if (!out.optimal()) throw ConsistencyError("asymmetry LP did not reach an optimum");
  return out.value;
}

std::vector<std::size_t> extreme_point_indices(std::span<const RationalVector> points) {
  std::vector<std::size_t> distinct;
  std::unordered_set<RationalVector, RationalVectorHash> seen;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (seen.insert(points[i]).second) distinct.push_back(i);
  if (distinct.size() <= 1) return distinct;

  const std::size_t dim = points[distinct.front()].size();
  std::vector<std::size_t> kept;
  for (std::size_t target : distinct) {
    // Is points[target] a convex combination of the other distinct points?
    const std::size_t others = distinct.size() - 1;
    RationalMatrix a(dim + 1, others);
    RationalVector b(dim + 1);
    std::size_t col = 0;
    for (std::size_t j : distinct) {
      if (j == target) continue;
      for (std::size_t i = 0; i < dim; ++i) a(i, col) = points[j][i];
      a(dim, col) = 1;
      ++col;
    }
    for (std::size_t i = 0; i < dim; ++i) b[i] = points[target][i];
    b[dim] = 1;
    if (!feasible(a, b, true).optimal()) kept.push_back(target);
  }
  return kept;
}

std::vector<RationalVector> extreme_points(std::span<const RationalVector> points) {
  std::vector<RationalVector> out;
  for (std::size_t i : extreme_point_indices(points)) out.push_back(points[i]);
  return out;
}

}  // namespace sigdimlab
