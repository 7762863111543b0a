// condspec: spectra and eigenfunctions of conductance chains on a segment.
//
// Verbs: gen | solve | sweep | trajectory. Exit codes: 0 ok, 2 usage,
// 3 I/O, 4 solver failure. Flags override --config JSON, which overrides
// built-in defaults.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "condspec/analysis.hpp"
#include "condspec/environment.hpp"
#include "condspec/report.hpp"
#include "condspec/shooting.hpp"
#include "svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitSolver = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json load_config(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
  }
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ValidationError("config", e.what());
  }
  if (!j.is_object()) throw CLI::ValidationError("config", "must be an object");
  return j;
}

template <typename T>
void from_config(const nlohmann::json& cfg, const char* key, T& out) {
  if (cfg.contains(key)) out = cfg[key].get<T>();
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + *out_path);
    out << text;
    if (!out) throw IoError("write failed: " + *out_path);
  } else {
    std::cout << text;
  }
}

condspec::Environment load_env_or_die(const std::string& path) {
  try {
    return condspec::load_environment(path);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw CLI::ValidationError("--n-list", "no sizes given");
  return out;
}

double ext_or_nan(const condspec::ExtReal& v) {
  return v.is_infinite() ? std::numeric_limits<double>::quiet_NaN() : v.value();
}

void write_sweep_plots(const std::string& dir,
                       const std::vector<condspec::SweepRow>& rows,
                       const condspec::Distribution& dist, double tol) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  std::map<int, std::vector<double>> ratio_by_n, shape_by_n;
  for (const auto& row : rows) {
    if (!row.ok) continue;
    ratio_by_n[row.n].push_back(row.gap_ratio);
    shape_by_n[row.n].push_back(row.sup_shape);
  }
  condspec::svg::Series ratio_series{"median over seeds", {}};
  condspec::svg::Series shape_series{"median over seeds", {}};
  for (auto& [n, v] : ratio_by_n) {
    ratio_series.points.emplace_back(n, condspec::median(v));
  }
  for (auto& [n, v] : shape_by_n) {
    shape_series.points.emplace_back(n, condspec::median(v));
  }

  condspec::svg::ChartSpec gap_spec;
  gap_spec.title = "n^2 lambda_1 / pi^2 vs n";
  gap_spec.x_label = "n (log scale)";
  gap_spec.y_label = "gap ratio";
  gap_spec.log_x = true;
  condspec::svg::write_text_file(
      (fs::path(dir) / "gap_ratio_vs_n.svg").string(),
      condspec::svg::line_chart(gap_spec, {ratio_series}));

  condspec::svg::ChartSpec shape_spec;
  shape_spec.title = "sup |g_1 - h| vs n";
  shape_spec.x_label = "n (log scale)";
  shape_spec.y_label = "sup deviation";
  shape_spec.log_x = true;
  condspec::svg::write_text_file(
      (fs::path(dir) / "sup_shape_vs_n.svg").string(),
      condspec::svg::line_chart(shape_spec, {shape_series}));

  // Overlay of the first eigenfunction against the cosine profile at the
  // largest environment in the sweep.
  int n_max = 0;
  std::uint64_t seed0 = 0;
  for (const auto& row : rows) {
    if (row.ok && row.n > n_max) {
      n_max = row.n;
      seed0 = row.seed;
    }
  }
  if (n_max >= 2) {
    const condspec::Environment env =
        std::holds_alternative<condspec::HomogeneousDist>(dist)
            ? condspec::make_homogeneous(n_max)
            : condspec::make_iid(n_max, dist, seed0);
    const condspec::EigenPair g1 = condspec::solve_eigenvalue(env, 1, tol);
    const std::vector<double> h = condspec::cosine_mode(n_max, 1);
    condspec::svg::Series gs{"g_1", {}}, hs{"h", {}};
    for (int x = 1; x <= n_max; ++x) {
      gs.points.emplace_back(x, g1.values[std::size_t(x - 1)]);
      hs.points.emplace_back(x, h[std::size_t(x - 1)]);
    }
    condspec::svg::ChartSpec overlay;
    overlay.title = "g_1 vs cosine profile, n = " + std::to_string(n_max);
    overlay.x_label = "site";
    overlay.y_label = "value";
    condspec::svg::write_text_file(
        (fs::path(dir) / "eigenfunction_overlay.svg").string(),
        condspec::svg::line_chart(overlay, {gs, hs}));
  }
}

void write_trajectory_plots(const std::string& dir,
                            const condspec::TrajectoryReport& rep) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  condspec::svg::Series b{"B(x)", {}}, a{"A(x)", {}}, prof{"profile", {}};
  for (std::size_t i = 0; i < rep.bvals.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    b.points.emplace_back(x, ext_or_nan(rep.bvals[i]));
    a.points.emplace_back(x, ext_or_nan(rep.avals[i]));
    if (rep.segment[i] == 1 || rep.segment[i] == 3) {
      prof.points.emplace_back(x, rep.profile[i]);
    }
  }
  condspec::svg::ChartSpec spec;
  spec.title = "rescaled shooting ratio and tangent profile";
  spec.x_label = "site";
  spec.y_label = "B, A";
  condspec::svg::write_text_file((fs::path(dir) / "trajectory.svg").string(),
                                 condspec::svg::line_chart(spec, {b, a, prof}));
}

}  // namespace

int main(int argc, char** argv) {
  using condspec::Distribution;

  CLI::App app{"spectra of conductance chains on a line segment"};
  app.require_subcommand(1);

  nlohmann::json cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // gen
  struct {
    int n = 8;
    std::string dist = "homog";
    std::uint64_t seed = 0;
    std::optional<std::string> out;
  } gen;
  from_config(cfg, "n", gen.n);
  from_config(cfg, "dist", gen.dist);
  from_config(cfg, "seed", gen.seed);
  auto* gen_cmd = app.add_subcommand("gen", "generate an environment file");
  gen_cmd->add_option("--n", gen.n, "number of sites");
  gen_cmd->add_option("--dist", gen.dist,
                      "homog | uniform:a,b | lognormal:m,s | pareto:alpha");
  gen_cmd->add_option("--seed", gen.seed, "rng seed");
  gen_cmd->add_option("--out", gen.out, "output path (default stdout)");
  gen_cmd->add_option("--config", "JSON config file (flags take precedence)");

  // solve
  struct {
    std::string env_path;
    int modes = -1;
    double tol = 1e-12;
    bool oracle = false;
    std::string format = "csv";
    std::optional<std::string> out;
  } solve;
  from_config(cfg, "env", solve.env_path);
  from_config(cfg, "modes", solve.modes);
  from_config(cfg, "tol", solve.tol);
  from_config(cfg, "oracle", solve.oracle);
  from_config(cfg, "format", solve.format);
  auto* solve_cmd =
      app.add_subcommand("solve", "full spectrum of an environment");
  solve_cmd->add_option("--env", solve.env_path, "environment JSON file")
      ->required();
  solve_cmd->add_option("--modes", solve.modes,
                        "number of modes to emit (default all)");
  solve_cmd->add_option("--tol", solve.tol, "relative bisection tolerance");
  solve_cmd->add_flag("--oracle", solve.oracle,
                      "cross-check against the Sturm oracle");
  solve_cmd->add_option("--format", solve.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  solve_cmd->add_option("--out", solve.out, "output path (default stdout)");
  solve_cmd->add_option("--config", "JSON config file");

  // sweep
  struct {
    std::string dist = "uniform:0.5,1.5";
    std::string n_list = "128,256,512,1024,2048,4096,8192";
    int seeds = 5;
    int modes = 5;
    double tol = 1e-12;
    int jobs = 1;
    std::optional<std::string> plot;
    std::optional<std::string> out;
  } sweep;
  from_config(cfg, "dist", sweep.dist);
  from_config(cfg, "n-list", sweep.n_list);
  from_config(cfg, "seeds", sweep.seeds);
  from_config(cfg, "modes", sweep.modes);
  from_config(cfg, "tol", sweep.tol);
  from_config(cfg, "jobs", sweep.jobs);
  auto* sweep_cmd =
      app.add_subcommand("sweep", "convergence study over n and seeds");
  sweep_cmd->add_option("--dist", sweep.dist, "resistance law");
  sweep_cmd->add_option("--n-list", sweep.n_list, "comma-separated sizes");
  sweep_cmd->add_option("--seeds", sweep.seeds, "number of seeds (1..S)");
  sweep_cmd->add_option("--modes", sweep.modes, "highest mode to track");
  sweep_cmd->add_option("--tol", sweep.tol, "relative bisection tolerance");
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads");
  sweep_cmd->add_option("--plot", sweep.plot, "directory for SVG charts");
  sweep_cmd->add_option("--out", sweep.out, "CSV path (default stdout)");
  sweep_cmd->add_option("--config", "JSON config file");

  // trajectory
  struct {
    std::string env_path;
    double alpha = std::numbers::pi * std::numbers::pi;
    std::optional<std::string> plot;
    std::optional<std::string> out;
  } traj;
  from_config(cfg, "env", traj.env_path);
  from_config(cfg, "alpha", traj.alpha);
  auto* traj_cmd = app.add_subcommand(
      "trajectory", "rescaled shooting ratio against tangent profiles");
  traj_cmd->add_option("--env", traj.env_path, "environment JSON file")
      ->required();
  traj_cmd->add_option("--alpha", traj.alpha, "rescaled rate (lambda n^2)");
  traj_cmd->add_option("--plot", traj.plot, "directory for SVG charts");
  traj_cmd->add_option("--out", traj.out, "CSV path (default stdout)");
  traj_cmd->add_option("--config", "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      if (gen.n < 1) {
        std::cerr << "error: n must be >= 1\n";
        return kExitUsage;
      }
      Distribution dist;
      try {
        dist = condspec::parse_distribution(gen.dist);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      const condspec::Environment env =
          std::holds_alternative<condspec::HomogeneousDist>(dist)
              ? condspec::make_homogeneous(gen.n)
              : condspec::make_iid(gen.n, dist, gen.seed);
      emit(gen.out, condspec::serialize_environment(env) + "\n");
      return kExitOk;
    }

    if (solve_cmd->parsed()) {
      const condspec::Environment env = load_env_or_die(solve.env_path);
      std::vector<condspec::EigenPair> pairs;
      std::vector<condspec::SolveRow> rows;
      try {
        const int top = solve.modes < 0
                            ? env.n() - 1
                            : std::min(solve.modes - 1, env.n() - 1);
        if (top >= 0) {
          condspec::EigenPair ground;
          ground.mode = 0;
          ground.values.assign(std::size_t(env.n()), 1.0);
          pairs.push_back(std::move(ground));
        }
        for (int j = 1; j <= top; ++j) {
          pairs.push_back(condspec::solve_eigenvalue(env, j, solve.tol));
        }
        rows = condspec::build_solve_rows(env, pairs, solve.oracle, solve.tol);
      } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
      }
      emit(solve.out, solve.format == "json"
                          ? condspec::solve_json(env, rows)
                          : condspec::solve_csv(rows));
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      Distribution dist;
      try {
        dist = condspec::parse_distribution(sweep.dist);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      const std::vector<int> n_list = parse_n_list(sweep.n_list);
      if (sweep.seeds < 1) {
        std::cerr << "error: --seeds must be >= 1\n";
        return kExitUsage;
      }
      std::vector<std::uint64_t> seeds;
      for (int s = 1; s <= sweep.seeds; ++s) seeds.push_back(std::uint64_t(s));

      const std::vector<condspec::SweepRow> rows = condspec::run_sweep(
          dist, n_list, seeds, sweep.modes, sweep.tol, sweep.jobs);

      std::size_t failed = 0;
      for (const auto& row : rows) {
        if (!row.ok) {
          ++failed;
          std::cerr << "warning: n=" << row.n << " seed=" << row.seed
                    << " failed: " << row.message << '\n';
        } else {
          std::cerr << "n=" << row.n << " seed=" << row.seed << " done in "
                    << row.wall_seconds << " s\n";
        }
      }
      emit(sweep.out, condspec::sweep_csv(rows, sweep.modes));
      if (std::holds_alternative<condspec::ParetoDist>(dist) &&
          n_list.size() >= 2) {
        std::cerr << "heavy-tail log-log slope of median gap vs n: "
                  << condspec::heavy_tail_slope(rows) << '\n';
      }
      if (sweep.plot) {
        // Plots are best-effort and never change the exit code.
        try {
          write_sweep_plots(*sweep.plot, rows, dist, sweep.tol);
        } catch (const std::exception& e) {
          std::cerr << "warning: plot emission failed: " << e.what() << '\n';
        }
      }
      if (failed == rows.size() && !rows.empty()) {
        std::cerr << "error: every sweep row failed\n";
        return kExitSolver;
      }
      return kExitOk;
    }

    if (traj_cmd->parsed()) {
      const condspec::Environment env = load_env_or_die(traj.env_path);
      condspec::TrajectoryReport rep;
      try {
        rep = condspec::b_trajectory(env, traj.alpha);
      } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
      }
      emit(traj.out, condspec::trajectory_csv(rep));
      if (traj.plot) {
        try {
          write_trajectory_plots(*traj.plot, rep);
        } catch (const std::exception& e) {
          std::cerr << "warning: plot emission failed: " << e.what() << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}
