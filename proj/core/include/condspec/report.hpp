#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condspec/analysis.hpp"
#include "condspec/environment.hpp"
#include "condspec/shooting.hpp"

namespace condspec {

// One convergence-study row: a single (n, seed) environment solved for modes
// 1..max_mode and compared against the cosine profiles.
struct SweepRow {
  int n = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string message;

  double lambda1 = 0.0;
  double gap_ratio = 0.0;                 // n^2 lambda_1 / pi^2
  std::vector<double> lambda_ratios;      // n^2 lambda_j / (j^2 pi^2), j>=1
  std::vector<double> sup_shape_modes;    // sup|g_j - h_j|, j >= 1
  double sup_shape = 0.0;                 // mode 1
  double sup_deriv = 0.0;                 // mode 1, n-weighted gradient
  double delta0 = 0.0;
  double delta1 = 0.0;
  double wall_seconds = 0.0;
};

// Solves every (n, seed) pair on a small worker pool (row order in the
// result is by n then seed regardless of jobs). Failures mark the row and
// do not abort the sweep.
std::vector<SweepRow> run_sweep(const Distribution& dist,
                                std::span<const int> n_list,
                                std::span<const std::uint64_t> seeds,
                                int max_mode, double tol, int jobs);

// CSV per the convergence-report schema; header row, comma separator, LF
// endings, shortest round-trip decimals. Timings are deliberately not
// included so reruns are byte-identical.
std::string sweep_csv(std::span<const SweepRow> rows, int max_mode);

struct SolveRow {
  int mode = 0;
  double lambda = 0.0;
  double lambda_ratio = 0.0;
  int extrema_count = 0;
  double sup_shape = 0.0;
  double sup_deriv = 0.0;
  double residual = 0.0;
  std::optional<double> oracle_dev;
};

std::vector<SolveRow> build_solve_rows(const Environment& env,
                                       std::span<const EigenPair> pairs,
                                       bool with_oracle, double tol);
std::string solve_csv(std::span<const SolveRow> rows);
std::string solve_json(const Environment& env, std::span<const SolveRow> rows);

std::string trajectory_csv(const TrajectoryReport& report);

double median(std::vector<double> values);

// Least-squares slope of log y against log x. Requires at least two points
// with positive coordinates.
double loglog_slope(std::span<const double> x, std::span<const double> y);

// Median gap per n, then the log-log slope across n: the heavy-tail scaling
// summary. Failed rows are skipped.
double heavy_tail_slope(std::span<const SweepRow> rows);

}  // namespace condspec
