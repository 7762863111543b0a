#include "condspec/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "condspec/numeric.hpp"
#include "condspec/oracle.hpp"

namespace condspec {

namespace {

constexpr double kPi = std::numbers::pi;

SweepRow compute_row(const Distribution& dist, int n, std::uint64_t seed,
                     int max_mode, double tol) {
  SweepRow row;
  row.n = n;
  row.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Environment env = std::holds_alternative<HomogeneousDist>(dist)
                                ? make_homogeneous(n)
                                : make_iid(n, dist, seed);
    const int top = std::min(max_mode, n - 1);

    std::vector<EigenPair> pairs;
    pairs.reserve(std::size_t(top) + 1);
    EigenPair ground;
    ground.mode = 0;
    ground.values.assign(std::size_t(n), 1.0);
    pairs.push_back(std::move(ground));
    for (int j = 1; j <= top; ++j) {
      pairs.push_back(solve_eigenvalue(env, j, tol));
    }

    const ShapeReport shapes = shape_report(env, pairs, top);
    const double nd = static_cast<double>(n);
    for (int j = 1; j <= top; ++j) {
      const double lam = pairs[std::size_t(j)].lambda;
      row.lambda_ratios.push_back(nd * nd * lam / (j * j * kPi * kPi));
      row.sup_shape_modes.push_back(shapes.sup_shape[std::size_t(j)]);
    }
    if (top >= 1) {
      row.lambda1 = pairs[1].lambda;
      row.gap_ratio = row.lambda_ratios[0];
      row.sup_shape = shapes.first_mode_shape;
      row.sup_deriv = shapes.first_mode_deriv;
    }
    if (n >= 2) {
      const LlnDiagnostics lln = lln_diagnostics(env);
      row.delta0 = lln.delta0;
      row.delta1 = lln.delta1;
    }
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.message = e.what();
  }
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return row;
}

std::string csv_sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

}  // namespace

std::vector<SweepRow> run_sweep(const Distribution& dist,
                                std::span<const int> n_list,
                                std::span<const std::uint64_t> seeds,
                                int max_mode, double tol, int jobs) {
  std::vector<std::pair<int, std::uint64_t>> grid;
  for (int n : n_list) {
    for (std::uint64_t s : seeds) grid.emplace_back(n, s);
  }
  std::sort(grid.begin(), grid.end());

  std::vector<SweepRow> rows(grid.size());
  if (jobs < 1) jobs = 1;
  const int workers =
      std::min<int>(jobs, static_cast<int>(grid.size() ? grid.size() : 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      rows[i] = compute_row(dist, grid[i].first, grid[i].second, max_mode, tol);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows, int max_mode) {
  std::ostringstream os;
  os << "n,seed,lambda1,gap_ratio";
  for (int j = 2; j <= max_mode; ++j) os << ",lambda_ratio_" << j;
  os << ",sup_shape,sup_deriv,delta0,delta1,status\n";
  for (const SweepRow& row : rows) {
    os << row.n << ',' << row.seed << ',' << format_double(row.lambda1) << ','
       << format_double(row.gap_ratio);
    for (int j = 2; j <= max_mode; ++j) {
      const std::size_t idx = std::size_t(j - 1);
      os << ','
         << (idx < row.lambda_ratios.size()
                 ? format_double(row.lambda_ratios[idx])
                 : std::string{});
    }
    os << ',' << format_double(row.sup_shape) << ','
       << format_double(row.sup_deriv) << ',' << format_double(row.delta0)
       << ',' << format_double(row.delta1) << ','
       << (row.ok ? "ok" : "failed:" + csv_sanitize(row.message)) << '\n';
  }
  return os.str();
}

std::vector<SolveRow> build_solve_rows(const Environment& env,
                                       std::span<const EigenPair> pairs,
                                       bool with_oracle, double tol) {
  const int n = env.n();
  const double nd = static_cast<double>(n);

  std::vector<OracleEigenPair> reference;
  if (with_oracle) reference = oracle_spectrum(env, tol);

  std::vector<SolveRow> rows;
  rows.reserve(pairs.size());
  for (const EigenPair& pair : pairs) {
    SolveRow row;
    row.mode = pair.mode;
    row.lambda = pair.lambda;
    row.lambda_ratio =
        pair.mode == 0
            ? 0.0
            : nd * nd * pair.lambda / (pair.mode * pair.mode * kPi * kPi);
    if (n >= 2) {
      row.extrema_count = count_extrema(pair.values).count;
    }
    const std::vector<double> h = cosine_mode(n, pair.mode);
    double sup = 0.0;
    for (int x = 0; x < n; ++x) {
      sup = std::max(sup, std::abs(pair.values[std::size_t(x)] -
                                   h[std::size_t(x)]));
    }
    row.sup_shape = sup;
    double supd = 0.0;
    for (int x = 2; x <= n; ++x) {
      const double wg = nd * env.conductance(x - 1) *
                        (pair.values[std::size_t(x - 1)] -
                         pair.values[std::size_t(x - 2)]);
      const double wh = nd * (h[std::size_t(x - 1)] - h[std::size_t(x - 2)]);
      supd = std::max(supd, std::abs(wg - wh));
    }
    row.sup_deriv = supd;
    row.residual = pair.residual;
    if (with_oracle && std::size_t(pair.mode) < reference.size()) {
      row.oracle_dev =
          std::abs(pair.lambda - reference[std::size_t(pair.mode)].lambda);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string solve_csv(std::span<const SolveRow> rows) {
  std::ostringstream os;
  os << "mode,lambda,lambda_ratio,extrema_count,sup_shape,sup_deriv,residual,"
        "oracle_dev\n";
  for (const SolveRow& r : rows) {
    os << r.mode << ',' << format_double(r.lambda) << ','
       << format_double(r.lambda_ratio) << ',' << r.extrema_count << ','
       << format_double(r.sup_shape) << ',' << format_double(r.sup_deriv)
       << ',' << format_double(r.residual) << ','
       << (r.oracle_dev ? format_double(*r.oracle_dev) : std::string{})
       << '\n';
  }
  return os.str();
}

std::string solve_json(const Environment& env,
                       std::span<const SolveRow> rows) {
  nlohmann::ordered_json j;
  j["n"] = env.n();
  j["label"] = env.label();
  auto& modes = j["modes"] = nlohmann::json::array();
  for (const SolveRow& r : rows) {
    nlohmann::ordered_json m;
    m["mode"] = r.mode;
    m["lambda"] = r.lambda;
    m["lambda_ratio"] = r.lambda_ratio;
    m["extrema_count"] = r.extrema_count;
    m["sup_shape"] = r.sup_shape;
    m["sup_deriv"] = r.sup_deriv;
    m["residual"] = r.residual;
    if (r.oracle_dev) {
      m["oracle_dev"] = *r.oracle_dev;
    } else {
      m["oracle_dev"] = nullptr;
    }
    modes.push_back(std::move(m));
  }
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const TrajectoryReport& report) {
  std::ostringstream os;
  os << "x,B,A,segment,profile_value,deviation\n";
  const auto ext = [](const ExtReal& v) {
    return v.is_infinite() ? std::string("inf") : format_double(v.value());
  };
  for (std::size_t i = 0; i < report.bvals.size(); ++i) {
    os << (i + 1) << ',' << ext(report.bvals[i]) << ',' << ext(report.avals[i])
       << ',' << report.segment[i] << ',';
    if (report.segment[i] != 0) {
      os << format_double(report.profile[i]) << ','
         << format_double(report.deviation[i]);
    } else {
      os << ',';
    }
    os << '\n';
  }
  return os.str();
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m]
                                : 0.5 * (values[m - 1] + values[m]);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need >= 2 paired points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("loglog_slope: coordinates must be > 0");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(x.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

double heavy_tail_slope(std::span<const SweepRow> rows) {
  std::map<int, std::vector<double>> gaps;
  for (const SweepRow& row : rows) {
    if (row.ok && row.lambda1 > 0.0) gaps[row.n].push_back(row.lambda1);
  }
  std::vector<double> ns, medians;
  for (auto& [n, g] : gaps) {
    ns.push_back(static_cast<double>(n));
    medians.push_back(median(std::move(g)));
  }
  return loglog_slope(ns, medians);
}

}  // namespace condspec
