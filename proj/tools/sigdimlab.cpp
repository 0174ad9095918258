// sigdimlab: exact signaling dimension of polytopic state spaces.
//
// Exit codes: 0 success (for congruent: congruent), 1 computation error (for
// congruent: not congruent), 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "sigdimlab/error.hpp"
#include "sigdimlab/gpt.hpp"
#include "sigdimlab/io.hpp"
#include "sigdimlab/polytope.hpp"
#include "sigdimlab/report.hpp"
#include "sigdimlab/sigdim.hpp"
#include "sigdimlab/solids.hpp"
#include "sigdimlab/symmetry.hpp"

using namespace sigdimlab;
using nlohmann::json;

namespace {

struct Common {
  std::vector<std::string> solids;
  std::vector<std::string> inputs;
  std::string format = "table";
  bool no_symmetry = false;
  std::size_t jobs = 1;
};

struct Source {
  std::string name;
  VRep vertices;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("sigdimlab");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SIGDIMLAB_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string(env) != "off")
      spdlog::warn("SIGDIMLAB_LOG: unknown level '{}'", env);
    else
      spdlog::set_level(level);
  }
}

std::vector<Source> load_all(const Common& c) {
  std::vector<Source> out;
  for (const auto& s : c.solids) {
    const SolidSpec spec = parse_solid_spec(s);
    out.push_back({spec.name(), generate_solid(spec)});
  }
  for (const auto& path : c.inputs) out.push_back({path, parse_vrep(path)});
  return out;
}

Source load_one(const Common& c) {
  if (c.solids.size() + c.inputs.size() != 1) throw UsageError("give exactly one of --solid or --input");
  return load_all(c).front();
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string indices(const std::vector<std::size_t>& v, const char* sep) {
  std::vector<std::string> parts;
  for (auto x : v) parts.push_back(std::to_string(x));
  return join(parts, sep);
}

std::string rationals(const RationalVector& v, const char* sep) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(to_string(x));
  return join(parts, sep);
}

int cmd_symmetries(const Common& c, bool euclidean) {
  const Source src = load_one(c);
  const SymmetryGroup g =
      euclidean ? find_symmetries(src.vertices.vertices()) : state_symmetries(homogenize(src.vertices));
  switch (parse_format(c.format)) {
    case OutputFormat::Json:
      std::cout << to_json(g).dump(2) << "\n";
      break;
    case OutputFormat::Csv:
      for (const auto& p : g.elements()) std::cout << indices(p.images(), ",") << "\n";
      break;
    case OutputFormat::Table:
      std::cout << src.name << ": " << g.order() << " symmetries on " << g.degree() << " vertices\n";
      for (const auto& p : g.elements()) std::cout << "  " << indices(p.images(), " ") << "\n";
      break;
  }
  return 0;
}

int cmd_congruent(const Common& c, const std::vector<std::string>& items) {
  Common both = c;
  for (const auto& item : items) {
    try {
      parse_solid_spec(item);
      both.solids.push_back(item);
    } catch (const UsageError&) {
      both.inputs.push_back(item);
    }
  }
  const auto sources = load_all(both);
  if (sources.size() != 2) throw UsageError("congruent needs exactly two vertex sets");
  const auto sigma = congruent(sources[0].vertices.vertices(), sources[1].vertices.vertices());
  switch (parse_format(c.format)) {
    case OutputFormat::Json:
      std::cout << json{{"congruent", sigma.has_value()},
                        {"labelling", sigma ? json(sigma->images()) : json(nullptr)}}
                       .dump(2)
                << "\n";
      break;
    case OutputFormat::Csv:
      std::cout << (sigma ? "true," + indices(sigma->images(), " ") : std::string("false,")) << "\n";
      break;
    case OutputFormat::Table:
      if (sigma)
        std::cout << "congruent; labelling " << indices(sigma->images(), " ") << "\n";
      else
        std::cout << "not congruent\n";
      break;
  }
  return sigma ? 0 : 1;
}

int cmd_effects(const Common& c) {
  const Source src = load_one(c);
  const StateSpace s = homogenize(src.vertices);
  const auto effects = extremal_effects(s);
  switch (parse_format(c.format)) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (const auto& e : effects) arr.push_back(to_json(e));
      std::cout << arr.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      std::cout << "index,vector,extreme_ray\n";
      for (std::size_t i = 0; i < effects.size(); ++i)
        std::cout << i << "," << rationals(effects[i].vector, " ") << ","
                  << (effects[i].on_extreme_ray ? "true" : "false") << "\n";
      break;
    case OutputFormat::Table:
      std::cout << src.name << ": " << effects.size() << " extremal effects\n";
      for (std::size_t i = 0; i < effects.size(); ++i)
        std::cout << "  " << i << "  " << to_string(effects[i].vector)
                  << (effects[i].on_extreme_ray ? "  ray" : "") << "\n";
      break;
  }
  return 0;
}

int cmd_measurements(const Common& c) {
  const Source src = load_one(c);
  const StateSpace s = homogenize(src.vertices);
  const auto effects = extremal_effects(s);
  const auto meas = extremal_measurements(s, effects);
  std::vector<std::size_t> cls(meas.size());
  std::size_t n_classes = meas.size();
  if (c.no_symmetry) {
    for (std::size_t i = 0; i < meas.size(); ++i) cls[i] = i;
  } else {
    const auto classes = measurement_classes(s, effects, meas, state_symmetries(s));
    n_classes = classes.size();
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (auto i : classes[k].members) cls[i] = k;
  }
  switch (parse_format(c.format)) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (std::size_t i = 0; i < meas.size(); ++i) {
        json item = to_json(meas[i]);
        item["class"] = cls[i];
        arr.push_back(std::move(item));
      }
      std::cout << json{{"n_measurements", meas.size()}, {"n_classes", n_classes}, {"measurements", arr}}.dump(2)
                << "\n";
      break;
    }
    case OutputFormat::Csv:
      std::cout << "index,outcomes,effects,coefficients,class\n";
      for (std::size_t i = 0; i < meas.size(); ++i)
        std::cout << i << "," << meas[i].outcomes() << "," << indices(meas[i].effects, " ") << ","
                  << rationals(meas[i].coefficients, " ") << "," << cls[i] << "\n";
      break;
    case OutputFormat::Table:
      std::cout << src.name << ": " << meas.size() << " extremal measurements in " << n_classes << " classes\n";
      for (std::size_t i = 0; i < meas.size(); ++i)
        std::cout << "  " << i << "  class " << cls[i] << "  effects {" << indices(meas[i].effects, ", ")
                  << "}  coefficients (" << rationals(meas[i].coefficients, ", ") << ")\n";
      break;
  }
  return 0;
}

int cmd_asymmetry(const Common& c) {
  const Source src = load_one(c);
  const Polytope p(src.vertices);
  const Rational a = minkowski_asymmetry(p);
  const bool cs = central_symmetry(src.vertices).has_value();
  switch (parse_format(c.format)) {
    case OutputFormat::Json:
      std::cout << json{{"asymmetry", to_string(a)}, {"cs", cs}, {"aff_dim", p.aff_dim()}}.dump(2) << "\n";
      break;
    case OutputFormat::Csv:
      std::cout << "asymmetry,cs,aff_dim\n" << to_string(a) << "," << (cs ? "true" : "false") << ","
                << p.aff_dim() << "\n";
      break;
    case OutputFormat::Table:
      std::cout << src.name << ": asymmetry " << to_string(a) << ", " << (cs ? "" : "not ")
                << "centrally symmetric, affine dimension " << p.aff_dim() << "\n";
      break;
  }
  return 0;
}

int cmd_sigdim(const Common& c, const std::string& certificates) {
  const Source src = load_one(c);
  SigDimOptions options;
  options.use_symmetry = !c.no_symmetry;
  options.jobs = c.jobs;
  const SigDimReport r = signaling_dimension(homogenize(src.vertices), options);
  if (!certificates.empty()) {
    std::ofstream out(certificates);
    if (!out) throw UsageError("cannot write " + certificates);
    out << to_json(r).dump(2) << "\n";
  }
  switch (parse_format(c.format)) {
    case OutputFormat::Json: {
      json j = to_json(r);
      j["name"] = src.name;
      std::cout << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      std::cout << "representative,class_size,outcomes,minimal_d,decided_by_bound\n";
      for (const auto& cl : r.classes)
        std::cout << cl.representative << "," << cl.class_size << ","
                  << r.measurements[cl.representative].outcomes() << "," << cl.minimal_d << ","
                  << (cl.decided_by_bound ? "true" : "false") << "\n";
      break;
    case OutputFormat::Table:
      std::cout << src.name << ": signaling dimension " << r.value << " (bounds [" << r.bounds.lower << ", "
                << r.bounds.upper << "], " << (r.bounds.cs ? "" : "not ") << "centrally symmetric"
                << (r.planar_shortcut ? ", planar closed form" : "") << ")\n";
      for (const auto& cl : r.classes)
        std::cout << "  measurement " << cl.representative << " (" << r.measurements[cl.representative].outcomes()
                  << " outcomes, class of " << cl.class_size << "): d = " << cl.minimal_d
                  << (cl.decided_by_bound ? " by bound" : "") << "\n";
      break;
  }
  return 0;
}

int cmd_report(const Common& c, bool all) {
  std::vector<SolidSpec> specs;
  for (const auto& s : c.solids) specs.push_back(parse_solid_spec(s));
  for (const auto& path : c.inputs) specs.push_back({SolidKind::Polygon, 0, path});
  if (specs.empty() || all) {
    for (const auto& s : catalogue_solids()) specs.push_back(s);
    if (all)
      for (const auto& s : hyperoctahedra()) specs.push_back(s);
  }
  SigDimOptions options;
  options.use_symmetry = !c.no_symmetry;
  const auto rows = report(specs, options, c.jobs);
  std::cout << format_rows(rows, parse_format(c.format));
  for (const auto& r : rows)
    if (r.error) return 1;
  return 0;
}

void add_common(CLI::App* cmd, Common& c, bool source = true) {
  if (source) {
    cmd->add_option("--solid", c.solids, "Built-in solid, e.g. cube or hyperoctahedron:4");
    cmd->add_option("--input", c.inputs, "Vertex file {\"vertices\": [[\"p/q\", ...], ...]}");
  }
  cmd->add_option("--format", c.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_flag("--no-symmetry", c.no_symmetry, "Do not reduce measurements to symmetry classes");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Exact signaling dimension of polytopic state spaces"};
  app.require_subcommand(1);
  Common c;

  auto* symmetries = app.add_subcommand("symmetries", "Vertex permutations induced by symmetries");
  add_common(symmetries, c);
  bool euclidean = false;
  symmetries->add_flag("--euclidean", euclidean, "Use the plain dot product (orthogonal symmetries only)");

  auto* cong = app.add_subcommand("congruent", "Test two vertex sets for congruence");
  add_common(cong, c);
  std::vector<std::string> items;
  cong->add_option("items", items, "Solid names or vertex files");

  auto* effects = app.add_subcommand("effects", "Vertices of the effect polytope");
  add_common(effects, c);
  auto* measurements = app.add_subcommand("measurements", "Extremal measurements and their classes");
  add_common(measurements, c);
  auto* asym = app.add_subcommand("asymmetry", "Minkowski measure of asymmetry");
  add_common(asym, c);

  auto* sig = app.add_subcommand("sigdim", "Signaling dimension with per-class detail");
  add_common(sig, c);
  std::string certificates;
  sig->add_option("--certificates", certificates, "Write the full report with certificates to this JSON file");

  auto* rep = app.add_subcommand("report", "Summary table for several solids");
  add_common(rep, c);
  bool all = false;
  rep->add_flag("--all", all, "Add the built-in catalogue and hyperoctahedra of dimension 3 to 5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*symmetries) return cmd_symmetries(c, euclidean);
    if (*cong) return cmd_congruent(c, items);
    if (*effects) return cmd_effects(c);
    if (*measurements) return cmd_measurements(c);
    if (*asym) return cmd_asymmetry(c);
    if (*sig) return cmd_sigdim(c, certificates);
    if (*rep) return cmd_report(c, all);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
