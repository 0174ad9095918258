#pragma once

// One summary row per solid: the columns of the signaling-dimension tables.

#include <optional>
#include <string>
#include <vector>

#include "sigdimlab/sigdim.hpp"
#include "sigdimlab/solids.hpp"

namespace sigdimlab {

struct ReportRow {
  std::string name;
  std::size_t m = 0;
  std::size_t aff_dim = 0;
  bool cs = false;
  std::size_t group_order = 0;
  std::size_t n_measurements = 0;
  std::size_t n_classes = 0;
  std::size_t sigdim = 0;
  /// Set when the row could not be computed; the numeric fields are then
  /// meaningless.
  std::optional<std::string> error;
};

ReportRow report_row(const std::string& name, const VRep& v, const SigDimOptions& options = {});

/// Rows in input order. A failing spec yields a row with error set. With
/// jobs > 1 rows are computed concurrently, one spec per worker.
std::vector<ReportRow> report(const std::vector<SolidSpec>& specs, const SigDimOptions& options = {},
                              std::size_t jobs = 1);

enum class OutputFormat { Table, Json, Csv };

/// Throws UsageError for anything but "table", "json" or "csv".
OutputFormat parse_format(std::string_view text);

std::string format_rows(const std::vector<ReportRow>& rows, OutputFormat format);

}  // namespace sigdimlab
