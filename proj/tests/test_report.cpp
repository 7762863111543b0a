#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <stdexcept>
#include <vector>

#include "condspec/environment.hpp"
#include "condspec/report.hpp"
#include "condspec/shooting.hpp"

using namespace condspec;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("median and log-log slope") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(median({}), std::invalid_argument);

  std::vector<double> xs, ys;
  for (double n : {128.0, 256.0, 512.0, 1024.0}) {
    xs.push_back(n);
    ys.push_back(7.5 * std::pow(n, -3.0));
  }
  CHECK(loglog_slope(xs, ys) == doctest::Approx(-3.0).epsilon(1e-12));
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(loglog_slope(one, one), std::invalid_argument);
}

TEST_CASE("sweep over a homogeneous ladder matches the closed form") {
  const std::vector<int> ns{8, 16};
  const std::vector<std::uint64_t> seeds{1, 2};
  const auto rows = run_sweep(HomogeneousDist{}, ns, seeds, 2, 1e-12, 2);
  REQUIRE(rows.size() == 4);

  for (const SweepRow& row : rows) {
    CHECK(row.ok);
    const double nd = row.n;
    const double expected =
        nd * nd * 2.0 * (1.0 - std::cos(kPi / nd)) / (kPi * kPi);
    CHECK(row.gap_ratio == doctest::Approx(expected).epsilon(1e-11));
    CHECK(row.delta0 == 0.0);
    CHECK(row.lambda_ratios.size() == 2);
    CHECK(row.wall_seconds >= 0.0);
  }
  // Sorted by (n, seed) whatever the worker count.
  CHECK(rows[0].n == 8);
  CHECK(rows[0].seed == 1);
  CHECK(rows[3].n == 16);
  CHECK(rows[3].seed == 2);

  // gap_ratio increases towards one along the ladder.
  CHECK(rows[2].gap_ratio > rows[0].gap_ratio);
  CHECK(rows[2].gap_ratio < 1.0);

  // At n = 4096 the ratio is 1 - pi^2/(12 n^2) + O(n^-4), inside 1e-5 of 1.
  const std::vector<int> big{4096};
  const std::vector<std::uint64_t> one_seed{1};
  const auto big_rows = run_sweep(HomogeneousDist{}, big, one_seed, 1, 1e-12, 1);
  REQUIRE(big_rows.size() == 1);
  CHECK(std::abs(big_rows[0].gap_ratio - 1.0) <= 1e-5);
  const double taylor = 1.0 - kPi * kPi / (12.0 * 4096.0 * 4096.0);
  CHECK(big_rows[0].gap_ratio == doctest::Approx(taylor).epsilon(1e-10));
}

TEST_CASE("sweep CSV is deterministic and survives reruns") {
  const std::vector<int> ns{4, 8};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto a = run_sweep(UniformDist{0.5, 1.5}, ns, seeds, 3, 1e-12, 3);
  const auto b = run_sweep(UniformDist{0.5, 1.5}, ns, seeds, 3, 1e-12, 1);
  CHECK(sweep_csv(a, 3) == sweep_csv(b, 3));

  const auto rows_lines = lines_of(sweep_csv(a, 3));
  REQUIRE(rows_lines.size() == 7);
  CHECK(rows_lines[0] ==
        "n,seed,lambda1,gap_ratio,lambda_ratio_2,lambda_ratio_3,sup_shape,"
        "sup_deriv,delta0,delta1,status");
  // Every numeric field parses back to the exact double it came from.
  const auto fields = split(rows_lines[1], ',');
  REQUIRE(fields.size() == 11);
  CHECK(std::strtod(fields[2].c_str(), nullptr) == a[0].lambda1);
  CHECK(std::strtod(fields[3].c_str(), nullptr) == a[0].gap_ratio);
  CHECK(std::strtod(fields[8].c_str(), nullptr) == a[0].delta0);
  CHECK(fields[10] == "ok");
}

TEST_CASE("failed sweep rows are marked and do not abort") {
  const std::vector<int> ns{0, 8};
  const std::vector<std::uint64_t> seeds{1};
  const auto rows = run_sweep(UniformDist{0.5, 1.5}, ns, seeds, 1, 1e-12, 1);
  REQUIRE(rows.size() == 2);
  CHECK(!rows[0].ok);
  CHECK(!rows[0].message.empty());
  CHECK(rows[1].ok);
  const std::string csv = sweep_csv(rows, 1);
  CHECK(csv.find("failed:") != std::string::npos);
}

TEST_CASE("heavy-tail slope from sweep rows") {
  std::vector<SweepRow> rows;
  for (int n : {128, 256, 512}) {
    for (int s = 1; s <= 3; ++s) {
      SweepRow row;
      row.n = n;
      row.seed = std::uint64_t(s);
      row.ok = true;
      row.lambda1 = (1.0 + 0.1 * s) * std::pow(double(n), -2.5);
      rows.push_back(row);
    }
  }
  CHECK(heavy_tail_slope(rows) == doctest::Approx(-2.5).epsilon(1e-12));
}

TEST_CASE("solve rows carry the per-mode diagnostics") {
  const Environment env = make_homogeneous(4);
  const auto pairs = full_spectrum(env, 1e-12);
  const auto rows = build_solve_rows(env, pairs, true, 1e-12);
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].mode == 0);
  CHECK(rows[0].lambda == 0.0);
  CHECK(rows[0].lambda_ratio == 0.0);
  CHECK(rows[0].extrema_count == 0);
  CHECK(rows[0].sup_shape == 0.0);

  for (int j = 1; j < 4; ++j) {
    CHECK(rows[std::size_t(j)].extrema_count == j - 1);
    REQUIRE(rows[std::size_t(j)].oracle_dev.has_value());
    CHECK(*rows[std::size_t(j)].oracle_dev <= 1e-10);
    const double expected = 16.0 * pairs[std::size_t(j)].lambda /
                            (j * j * kPi * kPi);
    CHECK(rows[std::size_t(j)].lambda_ratio ==
          doctest::Approx(expected).epsilon(1e-14));
  }

  const std::string csv = solve_csv(rows);
  const auto ls = lines_of(csv);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] ==
        "mode,lambda,lambda_ratio,extrema_count,sup_shape,sup_deriv,residual,"
        "oracle_dev");
  const auto f1 = split(ls[2], ',');
  CHECK(std::strtod(f1[1].c_str(), nullptr) == pairs[1].lambda);

  // Without the oracle the last column stays empty.
  const auto plain = build_solve_rows(env, pairs, false, 1e-12);
  CHECK(!plain[1].oracle_dev.has_value());
  const auto pl = lines_of(solve_csv(plain));
  CHECK(pl[1].back() == ',');

  const std::string json = solve_json(env, rows);
  CHECK(json.find("\"modes\"") != std::string::npos);
  CHECK(json.find("\"lambda\"") != std::string::npos);
}

TEST_CASE("trajectory CSV layout") {
  const Environment env = make_homogeneous(64);
  const TrajectoryReport rep = b_trajectory(env, kPi * kPi);
  const auto ls = lines_of(trajectory_csv(rep));
  REQUIRE(ls.size() == std::size_t(64) + 2);
  CHECK(ls[0] == "x,B,A,segment,profile_value,deviation");
  const auto row1 = split(ls[1], ',');
  CHECK(row1[0] == "1");
  CHECK(row1[1] == "0");
  CHECK(row1[2] == "inf");
  const auto row2 = split(ls[2], ',');
  CHECK(std::strtod(row2[1].c_str(), nullptr) == kPi * kPi / 64.0);
}
