#include "sigdimlab/io.hpp"

#include <fstream>
#include <sstream>

#include "sigdimlab/error.hpp"

namespace sigdimlab {

using nlohmann::json;

VRep parse_vrep_text(std::string_view text, std::string_view source) {
  const std::string where(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError(where + ": expected an object with a \"vertices\" array");
  const json& rows = doc["vertices"];
  std::vector<RationalVector> vertices;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array()) throw ParseError(where + ": vertex " + std::to_string(i) + " is not an array");
    RationalVector v;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const json& x = row[j];
      std::string entry;
      if (x.is_string())
        entry = x.get<std::string>();
      else if (x.is_number_integer())
        entry = x.dump();
      else
        throw ParseError(where + ": vertex " + std::to_string(i) + ", coordinate " + std::to_string(j) +
                         ": expected a rational string such as \"-3/4\"");
      try {
        v.push_back(parse_rational(entry));
      } catch (const ParseError& e) {
        throw ParseError(where + ": vertex " + std::to_string(i) + ", coordinate " + std::to_string(j) + ": " +
                         e.what());
      }
    }
    if (!vertices.empty() && v.size() != vertices.front().size())
      throw ParseError(where + ": vertex " + std::to_string(i) + " has " + std::to_string(v.size()) +
                       " coordinates, expected " + std::to_string(vertices.front().size()));
    vertices.push_back(std::move(v));
  }
  try {
    return VRep::from_vertices(std::move(vertices));
  } catch (const DegenerateError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

VRep parse_vrep(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_vrep_text(buf.str(), path.string());
}

json to_json(const Rational& x) { return to_string(x); }

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json to_json(const RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

json to_json(const VRep& v) {
  json rows = json::array();
  for (const auto& x : v.vertices()) rows.push_back(to_json(x));
  return json{{"vertices", rows}};
}

json to_json(const SymmetryGroup& g) {
  json elems = json::array();
  for (const auto& p : g.elements()) elems.push_back(p.images());
  return json{{"order", g.order()}, {"degree", g.degree()}, {"elements", elems}};
}

json to_json(const Effect& e) {
  return json{{"vector", to_json(e.vector)},
              {"evaluation", to_json(e.evaluation)},
              {"extreme_ray", e.on_extreme_ray}};
}

json to_json(const Measurement& m) {
  json elements = json::array();
  for (const auto& e : m.elements) elements.push_back(to_json(e));
  return json{{"effects", m.effects}, {"coefficients", to_json(m.coefficients)}, {"elements", elements}};
}

json to_json(const SimulationCertificate& c) {
  json vertices = json::array();
  for (const auto& v : c.vertices) vertices.push_back(v.assignment);
  return json{{"d", c.d}, {"strategies", vertices}, {"weights", to_json(c.weights)}};
}

json to_json(const SigDimReport& r) {
  json classes = json::array();
  for (const auto& c : r.classes) {
    json item{{"representative", c.representative},
              {"class_size", c.class_size},
              {"minimal_d", c.minimal_d},
              {"decided_by_bound", c.decided_by_bound}};
    if (c.representative < r.measurements.size()) item["measurement"] = to_json(r.measurements[c.representative]);
    if (c.certificate) {
      item["correlations"] = to_json(c.reduced);
      item["certificate"] = to_json(*c.certificate);
    }
    classes.push_back(std::move(item));
  }
  return json{{"sigdim", r.value},
              {"bounds", {{"lower", r.bounds.lower}, {"upper", r.bounds.upper}, {"cs", r.bounds.cs}}},
              {"planar_shortcut", r.planar_shortcut},
              {"group_order", r.group_order},
              {"n_measurements", r.measurements.size()},
              {"n_classes", r.classes.size()},
              {"classes", classes}};
}

std::string serialize_vrep(const VRep& v) { return to_json(v).dump(2) + "\n"; }

}  // namespace sigdimlab
