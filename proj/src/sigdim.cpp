#include "sigdimlab/sigdim.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "sigdimlab/error.hpp"
#include "sigdimlab/lp.hpp"
#include "sigdimlab/polytope.hpp"

namespace sigdimlab {

BoundsRecord bounds(const StateSpace& s) {
  if (s.aff_dim == 0) throw DegenerateError("bounds: the state space is a single point");
  BoundsRecord b;
  b.cs = central_symmetry(s.vertices).has_value();
  if (b.cs) {
    b.lower = 2;
    b.upper = std::max<std::size_t>(2, s.aff_dim);
  } else {
    b.lower = 3;
    b.upper = std::max<std::size_t>(3, s.lin_dim);
  }
  return b;
}

BoundsRecord generic_bounds(const StateSpace& s) {
  if (s.aff_dim == 0) throw DegenerateError("bounds: the state space is a single point");
  BoundsRecord b;
  b.cs = central_symmetry(s.vertices).has_value();
  b.lower = 2;
  b.upper = std::max<std::size_t>(2, s.lin_dim);
  return b;
}

std::size_t sigdim_2d(const StateSpace& s) {
  if (s.aff_dim != 2)
    throw DimensionError("sigdim_2d needs a planar state space, got affine dimension " + std::to_string(s.aff_dim));
  return central_symmetry(s.vertices) ? 2 : 3;
}

std::size_t ClassicalVertex::image_size() const {
  std::set<std::size_t> image(assignment.begin(), assignment.end());
  return image.size();
}

RationalMatrix ClassicalVertex::matrix(std::size_t n) const {
  RationalMatrix a(assignment.size(), n);
  for (std::size_t i = 0; i < assignment.size(); ++i) a(i, assignment[i]) = 1;
  return a;
}

ClassicalVertexStream::ClassicalVertexStream(std::vector<std::vector<std::size_t>> row_supports, std::size_t d)
    : options_(std::move(row_supports)), d_(d) {
  std::size_t n = 0;
  for (auto& row : options_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty()) n = std::max(n, row.back() + 1);
  }
  pos_.assign(options_.size(), 0);
  chosen_.assign(options_.size(), 0);
  uses_.assign(n, 0);
  done_ = options_.empty();
}

bool ClassicalVertexStream::next(ClassicalVertex& out) {
  if (done_) return false;
  const std::size_t m = options_.size();
  const auto unassign = [&](std::size_t row) {
    if (--uses_[chosen_[row]] == 0) --distinct_;
  };
  if (resume_) {
    resume_ = false;
    level_ = m - 1;
    unassign(level_);
    ++pos_[level_];
  }
  while (true) {
    if (level_ == m) {
      out.assignment = chosen_;
      resume_ = true;
      return true;
    }
    if (pos_[level_] >= options_[level_].size()) {
      if (level_ == 0) {
        done_ = true;
        return false;
      }
      --level_;
      unassign(level_);
      ++pos_[level_];
      continue;
    }
    const std::size_t c = options_[level_][pos_[level_]];
    if (uses_[c] == 0 && distinct_ == d_) {
      ++pos_[level_];
      continue;
    }
    chosen_[level_] = c;
    if (uses_[c]++ == 0) ++distinct_;
    ++level_;
    if (level_ < m) pos_[level_] = 0;
  }
}

namespace {

std::vector<std::vector<std::size_t>> row_supports(const RationalMatrix& p) {
  std::vector<std::vector<std::size_t>> out(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (sgn(p(i, j)) > 0) out[i].push_back(j);
  return out;
}

void check_row_stochastic(const RationalMatrix& p) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (sgn(p(i, j)) < 0) throw DimensionError("correlation matrix has a negative entry in row " + std::to_string(i));
      sum += p(i, j);
    }
    if (sum != 1) throw DimensionError("correlation matrix row " + std::to_string(i) + " does not sum to one");
  }
}

// Splits a row-stochastic x (columns restricted to cols) into deterministic
// strategies by coupling all rows through a common uniform variable: on
// each interval between consecutive cumulative row sums every row picks a
// fixed column. Appends weight * (interval length) per strategy.
void quantile_decomposition(const RationalMatrix& x, const std::vector<std::size_t>& cols, const Rational& weight,
                            std::map<std::vector<std::size_t>, Rational>& acc) {
  const std::size_t m = x.rows();
  std::vector<std::vector<Rational>> cum(m);
  std::set<Rational> cuts;
  for (std::size_t i = 0; i < m; ++i) {
    Rational run = 0;
    for (std::size_t j : cols) {
      run += x(i, j);
      cum[i].push_back(run);
      if (sgn(run) > 0) cuts.insert(run);
    }
  }
  Rational prev = 0;
  std::vector<std::size_t> assignment(m);
  for (const Rational& t : cuts) {
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t k = 0;
      while (cum[i][k] < t) ++k;
      assignment[i] = cols[k];
    }
    acc[assignment] += weight * (t - prev);
    prev = t;
  }
}

SimulationCertificate certificate_from(const std::map<std::vector<std::size_t>, Rational>& acc, std::size_t d) {
  SimulationCertificate cert;
  cert.d = d;
  for (const auto& [assignment, w] : acc) {
    if (sgn(w) == 0) continue;
    cert.vertices.push_back({assignment});
    cert.weights.push_back(w);
  }
  return cert;
}

std::optional<SimulationCertificate> by_vertex_enumeration(const RationalMatrix& p, std::size_t d) {
  const std::size_t m = p.rows();
  const std::size_t n = p.cols();
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(p(i, j)) > 0) entries.emplace_back(i, j);
  std::vector<ClassicalVertex> columns;
  auto stream = classical_vertices(p, d);
  ClassicalVertex v;
  while (stream.next(v)) columns.push_back(v);
  if (columns.empty()) return std::nullopt;

  RationalMatrix a(entries.size() + 1, columns.size());
  RationalVector b(entries.size() + 1);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const auto [i, j] = entries[r];
    b[r] = p(i, j);
    for (std::size_t k = 0; k < columns.size(); ++k)
      if (columns[k].assignment[i] == j) a(r, k) = 1;
  }
  for (std::size_t k = 0; k < columns.size(); ++k) a(entries.size(), k) = 1;
  b[entries.size()] = 1;
  const LPOutcome out = feasible(a, b, true);
  if (!out.optimal()) return std::nullopt;
  SimulationCertificate cert;
  cert.d = d;
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (sgn(out.primal[k]) > 0) {
      cert.vertices.push_back(columns[k]);
      cert.weights.push_back(out.primal[k]);
    }
  return cert;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::optional<SimulationCertificate> by_message_subsets(const RationalMatrix& p, std::size_t d,
                                                        const std::vector<std::size_t>& cols) {
  const std::size_t m = p.rows();

  // Column subsets S, |S| = d, meeting every row support.
  std::vector<std::vector<std::size_t>> subsets;
  for_each_subset(cols.size(), d, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> s;
    for (std::size_t k : idx) s.push_back(cols[k]);
    for (std::size_t i = 0; i < m; ++i)
      if (std::none_of(s.begin(), s.end(), [&](std::size_t j) { return sgn(p(i, j)) > 0; })) return;
    subsets.push_back(std::move(s));
  });
  if (subsets.empty()) return std::nullopt;

  // Variable layout: for each subset, each row, each supported j in S.
  struct Var {
    std::size_t subset, row, col;
  };
  std::vector<Var> vars;
  for (std::size_t s = 0; s < subsets.size(); ++s)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j : subsets[s])
        if (sgn(p(i, j)) > 0) vars.push_back({s, i, j});

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> entry_row;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (sgn(p(i, j)) > 0) entry_row.emplace(std::make_pair(i, j), entry_row.size());
  const std::size_t n_entry = entry_row.size();
  const std::size_t n_rows = n_entry + subsets.size() * (m - 1);
  RationalMatrix a(n_rows, vars.size());
  RationalVector b(n_rows, Rational(0));
  for (const auto& [ij, r] : entry_row) b[r] = p(ij.first, ij.second);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const Var& x = vars[v];
    a(entry_row.at({x.row, x.col}), v) = 1;
    // mass of row i within S equals mass of row 0 within S
    const std::size_t base = n_entry + x.subset * (m - 1);
    if (x.row == 0) {
      for (std::size_t i = 1; i < m; ++i) a(base + i - 1, v) = -1;
    } else {
      a(base + x.row - 1, v) = 1;
    }
  }
  const LPOutcome out = feasible(a, b, true);
  if (!out.optimal()) return std::nullopt;

  std::map<std::vector<std::size_t>, Rational> acc;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    RationalMatrix q(m, p.cols());
    Rational mass = 0;
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v].subset == s) {
        q(vars[v].row, vars[v].col) = out.primal[v];
        if (vars[v].row == 0) mass += out.primal[v];
      }
    if (sgn(mass) == 0) continue;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j : subsets[s]) q(i, j) /= mass;
    quantile_decomposition(q, subsets[s], mass, acc);
  }
  return certificate_from(acc, d);
}

}  // namespace

ClassicalVertexStream classical_vertices(const RationalMatrix& p, std::size_t d) {
  return ClassicalVertexStream(row_supports(p), d);
}

Integer vertex_count(std::size_t m, std::size_t n, std::size_t d) {
  // stirling[i][k] = S(i, k)
  std::vector<std::vector<Integer>> stirling(m + 1, std::vector<Integer>(d + 1, Integer(0)));
  stirling[0][0] = 1;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t k = 1; k <= d; ++k)
      stirling[i][k] = Integer(static_cast<unsigned long>(k)) * stirling[i - 1][k] + stirling[i - 1][k - 1];
  Integer total = 0;
  for (std::size_t k = 1; k <= d && k <= n; ++k) {
    Integer falling = 1;  // k! C(n, k) = n (n-1) ... (n-k+1)
    for (std::size_t t = 0; t < k; ++t) falling *= static_cast<unsigned long>(n - t);
    total += falling * stirling[m][k];
  }
  return total;
}

bool SimulationCertificate::verify(const RationalMatrix& p) const {
  if (vertices.size() != weights.size()) return false;
  RationalMatrix sum(p.rows(), p.cols());
  Rational total = 0;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (sgn(weights[k]) < 0) return false;
    const auto& f = vertices[k].assignment;
    if (f.size() != p.rows() || vertices[k].image_size() > d) return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] >= p.cols()) return false;
      sum(i, f[i]) += weights[k];
    }
    total += weights[k];
  }
  return total == 1 && sum == p;
}

RationalMatrix reduce_rows(const RationalMatrix& p) {
  const auto rows = p.row_vectors();
  const auto keep = extreme_point_indices(rows);
  std::vector<RationalVector> kept;
  for (std::size_t i : keep) kept.push_back(rows[i]);
  return RationalMatrix::from_rows(kept);
}

std::optional<SimulationCertificate> simulable(const RationalMatrix& p, std::size_t d, SimulabilityMethod method) {
  if (d == 0) throw DimensionError("simulable: d must be at least 1");
  check_row_stochastic(p);
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < p.cols(); ++j)
    for (std::size_t i = 0; i < p.rows(); ++i)
      if (sgn(p(i, j)) > 0) {
        cols.push_back(j);
        break;
      }
  std::set<RationalVector> distinct;
  for (const auto& r : p.row_vectors()) distinct.insert(r);

  std::optional<SimulationCertificate> cert;
  if (method == SimulabilityMethod::VertexEnumeration) {
    cert = by_vertex_enumeration(p, d);
  } else if (d >= cols.size() || d >= distinct.size()) {
    // Identical rows receive identical strategies, and only supported
    // columns are ever chosen, so no strategy exceeds d messages.
    std::map<std::vector<std::size_t>, Rational> acc;
    quantile_decomposition(p, cols, Rational(1), acc);
    cert = certificate_from(acc, d);
  } else {
    cert = by_message_subsets(p, d, cols);
  }
  if (cert && !cert->verify(p)) throw ConsistencyError("simulation certificate failed exact verification");
  return cert;
}

namespace {

ClassResult solve_class(const StateSpace& s, const Measurement& m, const BoundsRecord& b,
                        const SigDimOptions& options) {
  ClassResult r;
  r.reduced = reduce_rows(correlation_matrix(s, m.elements).p);
  std::size_t d = b.lower;
  for (; d < b.upper; ++d) {
    auto cert = simulable(r.reduced, d, options.method);
    if (!cert) continue;
    if (options.check_monotonicity && !simulable(r.reduced, d + 1, options.method))
      throw ConsistencyError("simulable at d = " + std::to_string(d) + " but not at d + 1");
    r.certificate = std::move(cert);
    break;
  }
  r.minimal_d = d;
  r.decided_by_bound = d == b.upper;
  return r;
}

}  // namespace

SigDimReport signaling_dimension(const StateSpace& s, const SigDimOptions& options) {
  SigDimReport report;
  report.bounds = options.use_cs_bounds ? bounds(s) : generic_bounds(s);
  const SymmetryGroup group = state_symmetries(s);
  report.group_order = group.order();
  report.effects = extremal_effects(s);
  report.measurements = extremal_measurements(s, report.effects);
  spdlog::debug("{} states, {} effects, {} extremal measurements, |G| = {}", s.m(), report.effects.size(),
                report.measurements.size(), group.order());

  std::vector<MeasurementClass> classes;
  if (options.use_symmetry) {
    classes = measurement_classes(s, report.effects, report.measurements, group);
  } else {
    for (std::size_t i = 0; i < report.measurements.size(); ++i) classes.push_back({i, {i}});
  }

  if (options.planar_shortcut && s.aff_dim == 2) {
    report.planar_shortcut = true;
    report.value = sigdim_2d(s);
    for (const auto& c : classes) {
      ClassResult r;
      r.representative = c.representative;
      r.class_size = c.members.size();
      r.minimal_d = report.value;
      r.decided_by_bound = true;
      report.classes.push_back(std::move(r));
    }
  } else {
    report.classes.resize(classes.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
      for (std::size_t c = next++; c < classes.size(); c = next++) {
        try {
          ClassResult r = solve_class(s, report.measurements[classes[c].representative], report.bounds, options);
          r.representative = classes[c].representative;
          r.class_size = classes[c].members.size();
          spdlog::debug("class {} (representative {}, {} outcomes): d = {}", c, r.representative,
                        report.measurements[r.representative].outcomes(), r.minimal_d);
          report.classes[c] = std::move(r);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, classes.size()));
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> threads;
      for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    report.value = report.bounds.lower;
    for (const auto& r : report.classes) report.value = std::max(report.value, r.minimal_d);
  }

  if (report.value < report.bounds.lower || report.value > report.bounds.upper)
    throw ConsistencyError("signaling dimension " + std::to_string(report.value) + " outside [" +
                           std::to_string(report.bounds.lower) + ", " + std::to_string(report.bounds.upper) + "]");
  for (const auto& r : report.classes)
    if (r.certificate && !r.certificate->verify(r.reduced))
      throw ConsistencyError("certificate for measurement " + std::to_string(r.representative) + " does not verify");
  return report;
}

}  // namespace sigdimlab
