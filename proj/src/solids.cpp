#include "sigdimlab/solids.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "sigdimlab/error.hpp"
#include "sigdimlab/io.hpp"

namespace sigdimlab {

namespace {

struct Named {
  SolidKind kind;
  std::string_view name;
};

constexpr std::array<Named, 11> kNames{{
    {SolidKind::Octahedron, "octahedron"},
    {SolidKind::Cube, "cube"},
    {SolidKind::TruncatedTetrahedron, "truncated-tetrahedron"},
    {SolidKind::TriakisTetrahedron, "triakis-tetrahedron"},
    {SolidKind::Cuboctahedron, "cuboctahedron"},
    {SolidKind::RhombicDodecahedron, "rhombic-dodecahedron"},
    {SolidKind::TruncatedOctahedron, "truncated-octahedron"},
    {SolidKind::TetrakisHexahedron, "tetrakis-hexahedron"},
    {SolidKind::Hyperoctahedron, "hyperoctahedron"},
    {SolidKind::Hypercube, "hypercube"},
    {SolidKind::Polygon, "polygon"},
}};

std::string_view kind_name(SolidKind kind) {
  for (const auto& n : kNames)
    if (n.kind == kind) return n.name;
  return "?";
}

RationalVector point(std::initializer_list<Rational> xs) { return RationalVector(xs); }

// All coordinate permutations of each point, deduplicated, sorted.
std::vector<RationalVector> permutations_of(std::vector<RationalVector> seeds) {
  std::vector<RationalVector> out;
  for (auto& s : seeds) {
    std::sort(s.begin(), s.end());
    do out.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Every sign pattern applied to the nonzero coordinates.
std::vector<RationalVector> with_signs(const std::vector<RationalVector>& pts) {
  std::vector<RationalVector> out;
  for (const auto& p : pts) {
    std::vector<RationalVector> acc{p};
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (sgn(p[i]) == 0) continue;
      const std::size_t k = acc.size();
      for (std::size_t j = 0; j < k; ++j) {
        auto q = acc[j];
        q[i] = -q[i];
        acc.push_back(std::move(q));
      }
    }
    out.insert(out.end(), acc.begin(), acc.end());
  }
  return permutations_of(out);
}

std::vector<RationalVector> cross_polytope(std::size_t n) {
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < n; ++i)
    for (int s : {1, -1}) {
      RationalVector v(n, Rational(0));
      v[i] = s;
      out.push_back(std::move(v));
    }
  return out;
}

std::vector<RationalVector> cube_vertices(std::size_t n) {
  std::vector<RationalVector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    RationalVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? -1 : 1;
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t negatives(const RationalVector& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) < 0; }));
}

}  // namespace

std::string SolidSpec::name() const {
  std::string out(kind_name(kind));
  if (kind == SolidKind::Hyperoctahedron || kind == SolidKind::Hypercube) out += ":" + std::to_string(n);
  if (kind == SolidKind::Polygon) out += ":" + path;
  return out;
}

SolidSpec parse_solid_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto it = std::find_if(kNames.begin(), kNames.end(), [&](const Named& n) { return n.name == head; });
  if (it == kNames.end()) throw UsageError("unknown solid '" + std::string(text) + "'");
  SolidSpec spec;
  spec.kind = it->kind;
  if (spec.kind == SolidKind::Hyperoctahedron || spec.kind == SolidKind::Hypercube) {
    std::size_t n = 0;
    const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (arg.empty() || ec != std::errc{} || end != arg.data() + arg.size())
      throw UsageError("solid '" + std::string(head) + "' needs a dimension, e.g. " + std::string(head) + ":4");
    if (n < 2) throw UsageError("solid '" + std::string(head) + "' needs dimension at least 2");
    spec.n = n;
  } else if (spec.kind == SolidKind::Polygon) {
    if (arg.empty()) throw UsageError("polygon needs a vertex file, e.g. polygon:hexagon.json");
    spec.path = std::string(arg);
  } else if (colon != std::string_view::npos) {
    throw UsageError("solid '" + std::string(head) + "' takes no parameter");
  }
  return spec;
}

VRep generate_solid(const SolidSpec& spec) {
  std::vector<RationalVector> v;
  switch (spec.kind) {
    case SolidKind::Octahedron:
      v = cross_polytope(3);
      break;
    case SolidKind::Cube:
      v = cube_vertices(3);
      break;
    case SolidKind::TruncatedTetrahedron:
      for (auto& p : with_signs({point({3, 1, 1})}))
        if (negatives(p) % 2 == 0) v.push_back(p);
      break;
    case SolidKind::TriakisTetrahedron:
      // Regular tetrahedron plus the dual tetrahedron scaled by 3/5.
      for (auto& p : cube_vertices(3)) {
        if (negatives(p) % 2 == 0)
          v.push_back(p);
        else
          v.push_back(Rational(3, 5) * p);
      }
      break;
    case SolidKind::Cuboctahedron:
      v = with_signs({point({1, 1, 0})});
      break;
    case SolidKind::RhombicDodecahedron:
      v = cube_vertices(3);
      for (auto& p : with_signs({point({2, 0, 0})})) v.push_back(p);
      break;
    case SolidKind::TruncatedOctahedron:
      v = with_signs({point({0, 1, 2})});
      break;
    case SolidKind::TetrakisHexahedron:
      v = cube_vertices(3);
      for (auto& p : with_signs({point({Rational(3, 2), 0, 0})})) v.push_back(p);
      break;
    case SolidKind::Hyperoctahedron:
      if (spec.n < 2) throw UsageError("hyperoctahedron needs dimension at least 2");
      v = cross_polytope(spec.n);
      break;
    case SolidKind::Hypercube:
      if (spec.n < 2) throw UsageError("hypercube needs dimension at least 2");
      v = cube_vertices(spec.n);
      break;
    case SolidKind::Polygon:
      return parse_vrep(spec.path);
  }
  return VRep::from_vertices(std::move(v));
}

std::vector<SolidSpec> catalogue_solids() {
  return {{SolidKind::Octahedron},          {SolidKind::Cube},
          {SolidKind::TruncatedTetrahedron}, {SolidKind::TriakisTetrahedron},
          {SolidKind::Cuboctahedron},        {SolidKind::RhombicDodecahedron},
          {SolidKind::TruncatedOctahedron},  {SolidKind::TetrakisHexahedron}};
}

std::vector<SolidSpec> hyperoctahedra() {
  return {{SolidKind::Hyperoctahedron, 3}, {SolidKind::Hyperoctahedron, 4}, {SolidKind::Hyperoctahedron, 5}};
}

}  // namespace sigdimlab
