#pragma once

#include "minmax/config.hpp"
#include "minmax/metrics.hpp"
#include "minmax/problems.hpp"
#include "minmax/solvers.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace minmax {

/// One evaluated (or skipped) convergence bound.
/// passed <=> lhs <= rhs * (1 + slack); skipped checks count as passed.
struct BoundCheckResult {
  std::string bound_name;
  std::string problem;
  std::string solver;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool passed = true;
  bool skipped = false;
  std::string reason;
};

/// Evaluates every bound that applies to the run. Inapplicable bounds come
/// back with skipped = true and a reason; nothing is thrown for them.
std::vector<BoundCheckResult> verify_bounds(const RunTrace& trace,
                                            const SaddleProblem& problem,
                                            std::uint64_t seed = 0);

/// One output row per recorded t.
struct CellRow {
  int t = 0;
  double gap = 0.0;
  double grad_norm_residual = 0.0;
  double step_norm = 0.0;
  int inner_iters = 0;
  std::int64_t grad_calls_cumulative = 0;
};

inline constexpr const char* kCsvHeader =
    "t,gap,grad_norm_residual,step_norm,inner_iters,grad_calls_cumulative";

/// Radius of the comparator ball used for the gap column on unbounded sets:
/// ||z_0 - z*|| when the saddle is known and distinct from z_0, else 1.
double reporting_radius(const SaddleProblem& problem, const Vector& z0);

/// gap column value at z_hat: global gap on bounded sets or with a gap
/// oracle, restricted gap around z0 otherwise.
GapReport reporting_gap(const SaddleProblem& problem, const Vector& z_hat,
                        const Vector& z0, std::uint64_t seed);

std::vector<CellRow> trace_rows(const RunTrace& trace,
                                const SaddleProblem& problem,
                                std::uint64_t seed = 0);

/// %.17g
std::string format_real(double value);

std::string rows_to_csv(const std::vector<CellRow>& rows);

struct RateFitEntry {
  std::string series;
  double slope = 0.0;
  double r2 = 0.0;
};

struct CellResult {
  std::string problem;
  std::string solver;
  std::string output_file;
  RunTrace trace;
  std::vector<CellRow> rows;
  std::vector<BoundCheckResult> checks;
  std::vector<MetricSeries> series;
  std::vector<RateFitEntry> fits;
  std::string error;  ///< set when the cell could not run at all
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  std::vector<std::string> files;  ///< every file written, summary last

  std::vector<BoundCheckResult> checks() const;
  bool all_checks_passed() const;
  bool any_cell_failed() const;
};

/// Effective cell parallelism: MINMAX_THREADS if set and positive, else the
/// hardware concurrency, never more than `cells`.
int worker_count(std::size_t cells);

/// Runs every (problem, solver) cell, writes one CSV or JSON file per cell,
/// series.csv with the plot series and summary.json with the checks and rate
/// fits. Validates the config first.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Long-format CSV `series_name,t,value`, rows sorted by (series_name, t).
void emit_plot_data(const std::vector<MetricSeries>& series,
                    const std::string& path);

/// Fixed-width text table of the checks, one line per result.
std::string summary_table(const std::vector<BoundCheckResult>& checks);

}  // namespace minmax
