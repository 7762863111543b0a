#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "condspec/environment.hpp"
#include "condspec/operator.hpp"
#include "condspec/oracle.hpp"
#include "condspec/rng.hpp"

using namespace condspec;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_vector(int n, SplitMix64& rng) {
  std::vector<double> f(static_cast<std::size_t>(n));
  for (double& v : f) v = 2.0 * rng.next_u01() - 1.0;
  return f;
}

std::vector<double> cosine(int n, int mode) {
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) {
    h[std::size_t(x - 1)] = std::cos(mode * kPi * (x - 0.5) / n);
  }
  return h;
}

}  // namespace

TEST_CASE("tridiagonal assembly") {
  const Environment env(3, {2.0, 4.0}, "");
  const TridiagonalOperator op = build_operator(env);
  CHECK(op.diag == std::vector<double>{2.0, 6.0, 4.0});
  CHECK(op.offdiag == std::vector<double>{-2.0, -4.0});
  CHECK(gershgorin_upper(env) == 12.0);

  // -L applied to the constant vector vanishes: row sums are zero.
  const std::vector<double> ones(3, 1.0);
  for (double v : apply_generator(env, ones)) CHECK(v == 0.0);
}

TEST_CASE("generator on pinned examples") {
  SUBCASE("constants are harmonic") {
    const Environment env = make_iid(9, LognormalDist{0.0, 1.0}, 4);
    for (double v : apply_generator(env, std::vector<double>(9, 1.0))) {
      CHECK(v == 0.0);
    }
  }
  SUBCASE("three-point stencil by hand") {
    const auto out =
        apply_generator(make_homogeneous(4), std::vector<double>{1, 0, 0, 0});
    CHECK(out == std::vector<double>{-1.0, 1.0, 0.0, 0.0});
  }
  SUBCASE("homogeneous eigenfunctions") {
    const int n = 16;
    const Environment env = make_homogeneous(n);
    const std::vector<double> h1 = cosine(n, 1);
    const double lambda = 2.0 * (1.0 - std::cos(kPi / n));
    const auto out = apply_generator(env, h1);
    for (int x = 0; x < n; ++x) {
      CHECK(out[std::size_t(x)] ==
            doctest::Approx(-lambda * h1[std::size_t(x)]).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(
      apply_generator(make_homogeneous(4), std::vector<double>{1, 2}),
      std::invalid_argument);
}

TEST_CASE("dirichlet form on pinned examples") {
  CHECK(dirichlet_form(make_homogeneous(5), std::vector<double>(5, 3.0)) ==
        0.0);
  CHECK(dirichlet_form(make_homogeneous(2), std::vector<double>{0, 1}) == 0.5);
  // n=3, c=(2,4), f=(0,1,3): (1/3)(2*1 + 4*4) = 6.
  CHECK(dirichlet_form(Environment(3, {2.0, 4.0}, ""),
                       std::vector<double>{0, 1, 3}) ==
        doctest::Approx(6.0).epsilon(1e-15));
  CHECK_THROWS_AS(
      dirichlet_form(make_homogeneous(3), std::vector<double>{1, 2}),
      std::invalid_argument);
}

TEST_CASE("dirichlet form equals -<f, Lf>") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 60);
    const Environment env =
        make_iid(n, UniformDist{0.2, 3.0}, rng.next());
    const std::vector<double> f = random_vector(n, rng);
    const auto lf = apply_generator(env, f);
    const double direct = dirichlet_form(env, f);
    const double via_inner = -mu_inner(f, lf);
    CHECK(direct == doctest::Approx(via_inner).epsilon(1e-12));
    CHECK(direct >= 0.0);  // nonpositivity of <f, Lf>
  }
}

TEST_CASE("generator is self-adjoint under the uniform weight") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 60);
    const Environment env = make_iid(n, LognormalDist{0.0, 0.7}, rng.next());
    const std::vector<double> f = random_vector(n, rng);
    const std::vector<double> g = random_vector(n, rng);
    const double a = mu_inner(f, apply_generator(env, g));
    const double b = mu_inner(apply_generator(env, f), g);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("rayleigh quotient on pinned examples") {
  SUBCASE("first cosine mode attains the gap") {
    for (int n : {4, 16, 64}) {
      const Environment env = make_homogeneous(n);
      const double expected = 2.0 * (1.0 - std::cos(kPi / n));
      CHECK(rayleigh_quotient(env, cosine(n, 1)) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("n=2 hand computation") {
    CHECK(rayleigh_quotient(make_homogeneous(2), std::vector<double>{1, -1}) ==
          doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("constant input has zero variance") {
    CHECK_THROWS_WITH_AS(
        rayleigh_quotient(make_homogeneous(3), std::vector<double>(3, 2.0)),
        "zero variance", std::domain_error);
  }
}

TEST_CASE("rayleigh quotient dominates the spectral gap") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 63);
    const Environment env = make_iid(n, UniformDist{0.5, 1.5}, rng.next());
    const double lambda1 = oracle_spectrum(env, 1e-12)[1].lambda;
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> f = random_vector(n, rng);
      if (mu_variance(f) == 0.0) continue;
      CHECK(rayleigh_quotient(env, f) >= lambda1 - 1e-9);
    }
  }
}
