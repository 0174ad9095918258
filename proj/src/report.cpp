#include "sigdimlab/report.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "sigdimlab/error.hpp"

namespace sigdimlab {

ReportRow report_row(const std::string& name, const VRep& v, const SigDimOptions& options) {
  const StateSpace s = homogenize(v);
  const SigDimReport r = signaling_dimension(s, options);
  ReportRow row;
  row.name = name;
  row.m = s.m();
  row.aff_dim = s.aff_dim;
  row.cs = r.bounds.cs;
  row.group_order = r.group_order;
  row.n_measurements = r.measurements.size();
  row.n_classes = r.classes.size();
  row.sigdim = r.value;
  return row;
}

std::vector<ReportRow> report(const std::vector<SolidSpec>& specs, const SigDimOptions& options, std::size_t jobs) {
  std::vector<ReportRow> rows(specs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      const std::string name = specs[i].name();
      try {
        spdlog::info("computing {}", name);
        rows[i] = report_row(name, generate_solid(specs[i]), options);
      } catch (const Error& e) {
        spdlog::warn("{}: {}", name, e.what());
        rows[i].name = name;
        rows[i].error = e.what();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, specs.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
  }
  return rows;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "table") return OutputFormat::Table;
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw UsageError("unknown format '" + std::string(text) + "' (expected table, json or csv)");
}

namespace {

std::vector<std::string> cells(const ReportRow& r) {
  if (r.error) return {r.name, "error: " + *r.error};
  return {r.name,
          std::to_string(r.m),
          std::to_string(r.aff_dim),
          r.cs ? "True" : "False",
          std::to_string(r.group_order),
          std::to_string(r.n_measurements),
          std::to_string(r.n_classes),
          std::to_string(r.sigdim)};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_rows(const std::vector<ReportRow>& rows, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        if (r.error) {
          arr.push_back({{"name", r.name}, {"error", *r.error}});
          continue;
        }
        arr.push_back({{"name", r.name},
                       {"m", r.m},
                       {"aff_dim", r.aff_dim},
                       {"cs", r.cs},
                       {"group_order", r.group_order},
                       {"n_measurements", r.n_measurements},
                       {"n_classes", r.n_classes},
                       {"sigdim", r.sigdim}});
      }
      out << arr.dump(2) << "\n";
      break;
    }
    case OutputFormat::Csv:
      out << "name,m,aff_dim,cs,group_order,n_measurements,n_classes,sigdim,error\n";
      for (const auto& r : rows) {
        if (r.error) {
          out << csv_field(r.name) << ",,,,,,,," << csv_field(*r.error) << "\n";
          continue;
        }
        const auto c = cells(r);
        for (const auto& f : c) out << csv_field(f) << ",";
        out << "\n";
      }
      break;
    case OutputFormat::Table: {
      const std::vector<std::string> header{"solid", "m", "aff.dim", "CS", "|G|", "|M|", "|M'|", "sig.dim"};
      std::vector<std::vector<std::string>> body;
      for (const auto& r : rows) body.push_back(cells(r));
      std::vector<std::size_t> width(header.size());
      for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
      for (const auto& b : body) {
        if (b.size() != header.size()) {
          width[0] = std::max(width[0], b[0].size());
          continue;
        }
        for (std::size_t c = 0; c < b.size(); ++c) width[c] = std::max(width[c], b[c].size());
      }
      const auto line = [&](const std::vector<std::string>& b) {
        for (std::size_t c = 0; c < b.size(); ++c) {
          if (c > 0) out << "  ";
          if (c == 0)
            out << b[c] << std::string(width[c] - std::min(width[c], b[c].size()), ' ');
          else if (c < width.size() && b.size() == header.size())
            out << std::string(width[c] - b[c].size(), ' ') << b[c];
          else
            out << b[c];
        }
        out << "\n";
      };
      line(header);
      for (const auto& b : body) line(b);
      break;
    }
  }
  return out.str();
}

}  // namespace sigdimlab
