#pragma once

// JSON encoding of vertex sets and of computed objects. Rationals are
// always strings "p" or "p/q".

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sigdimlab/gpt.hpp"
#include "sigdimlab/polytope.hpp"
#include "sigdimlab/sigdim.hpp"
#include "sigdimlab/symmetry.hpp"

namespace sigdimlab {

/// {"vertices": [["1", "0", "-1/2"], ...]}. Throws ParseError for bad JSON,
/// bad rationals or ragged rows, naming the source and the vertex; vertex
/// set violations (duplicates, non-extreme points) are reported the same
/// way.
VRep parse_vrep_text(std::string_view text, std::string_view source = "<input>");
VRep parse_vrep(const std::filesystem::path& path);

nlohmann::json to_json(const Rational& x);
nlohmann::json to_json(const RationalVector& v);
nlohmann::json to_json(const RationalMatrix& m);
nlohmann::json to_json(const VRep& v);
nlohmann::json to_json(const SymmetryGroup& g);
nlohmann::json to_json(const Effect& e);
nlohmann::json to_json(const Measurement& m);
nlohmann::json to_json(const SimulationCertificate& c);
nlohmann::json to_json(const SigDimReport& r);

std::string serialize_vrep(const VRep& v);

}  // namespace sigdimlab
