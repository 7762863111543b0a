#include "condspec/operator.hpp"

#include <algorithm>
#include <stdexcept>

#include "condspec/numeric.hpp"

namespace condspec {

namespace {

void check_length(const Environment& env, std::span<const double> f) {
  if (static_cast<int>(f.size()) != env.n()) {
    throw std::invalid_argument("vector length must equal n");
  }
}

}  // namespace

TridiagonalOperator build_operator(const Environment& env) {
  const int n = env.n();
  TridiagonalOperator op;
  op.diag.resize(std::size_t(n));
  op.offdiag.resize(std::size_t(n - 1));
  for (int x = 1; x <= n; ++x) {
    op.diag[std::size_t(x - 1)] =
        env.conductance_or_zero(x - 1) + env.conductance_or_zero(x);
  }
  for (int x = 1; x < n; ++x) {
    op.offdiag[std::size_t(x - 1)] = -env.conductance(x);
  }
  return op;
}

double gershgorin_upper(const Environment& env) {
  double max_row = 0.0;
  for (int x = 1; x <= env.n(); ++x) {
    max_row = std::max(
        max_row, env.conductance_or_zero(x - 1) + env.conductance_or_zero(x));
  }
  return 2.0 * max_row;
}

std::vector<double> apply_generator(const Environment& env,
                                    std::span<const double> f) {
  check_length(env, f);
  const int n = env.n();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) {
    const double right =
        x < n ? env.conductance(x) * (f[std::size_t(x)] - f[std::size_t(x - 1)])
              : 0.0;
    const double left =
        x > 1
            ? env.conductance(x - 1) * (f[std::size_t(x - 1)] - f[std::size_t(x - 2)])
            : 0.0;
    out[std::size_t(x - 1)] = right - left;
  }
  return out;
}

double mu_inner(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("vector lengths must match");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < f.size(); ++i) acc.add(f[i] * g[i]);
  return acc.value() / static_cast<double>(f.size());
}

double mu_mean(std::span<const double> f) {
  return compensated_sum(f) / static_cast<double>(f.size());
}

double mu_variance(std::span<const double> f) {
  // Two-pass form of <f,f> - <f,1>^2; exact zero on constant input.
  const double m = mu_mean(f);
  CompensatedSum acc;
  for (double v : f) acc.add((v - m) * (v - m));
  return acc.value() / static_cast<double>(f.size());
}

double dirichlet_form(const Environment& env, std::span<const double> f) {
  check_length(env, f);
  const int n = env.n();
  CompensatedSum acc;
  for (int x = 1; x < n; ++x) {
    const double d = f[std::size_t(x)] - f[std::size_t(x - 1)];
    acc.add(env.conductance(x) * d * d);
  }
  return acc.value() / n;
}

double rayleigh_quotient(const Environment& env, std::span<const double> f) {
  check_length(env, f);
  const double var = mu_variance(f);
  if (var <= 0.0) throw std::domain_error("zero variance");
  return dirichlet_form(env, f) / var;
}

}  // namespace condspec
