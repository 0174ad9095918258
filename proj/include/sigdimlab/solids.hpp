#pragma once

// Built-in rational solids with standard integer (or small rational)
// coordinates, addressed by name.

#include <string>
#include <string_view>
#include <vector>

#include "sigdimlab/polytope.hpp"

namespace sigdimlab {

enum class SolidKind {
  Octahedron,
  Cube,
  TruncatedTetrahedron,
  TriakisTetrahedron,
  Cuboctahedron,
  RhombicDodecahedron,
  TruncatedOctahedron,
  TetrakisHexahedron,
  Hyperoctahedron,
  Hypercube,
  Polygon,
};

struct SolidSpec {
  SolidKind kind = SolidKind::Octahedron;
  /// Dimension for hyperoctahedron and hypercube.
  std::size_t n = 0;
  /// Vertex file for polygon.
  std::string path;

  /// Canonical name, e.g. "truncated-octahedron", "hyperoctahedron:5",
  /// "polygon:square.json". parse_solid_spec(name()) == *this.
  std::string name() const;
  friend bool operator==(const SolidSpec&, const SolidSpec&) = default;
};

/// Accepts the names above; "hyperoctahedron" and "hypercube" need ":n" with
/// n >= 2. Throws UsageError otherwise.
SolidSpec parse_solid_spec(std::string_view text);

/// Polygon specs read their vertex file with parse_vrep.
VRep generate_solid(const SolidSpec& spec);

/// The eight solids of the main table, in table order.
std::vector<SolidSpec> catalogue_solids();

/// Hyperoctahedra of dimensions 3, 4 and 5.
std::vector<SolidSpec> hyperoctahedra();

}  // namespace sigdimlab
