#include "condspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "condspec/rng.hpp"

namespace condspec {

namespace {

constexpr int kMaxBisection = 200;
constexpr int kMaxInverseIterations = 50;

double pivot_floor(const TridiagonalOperator& op) {
  double max_e2 = 1.0;
  for (double e : op.offdiag) max_e2 = std::max(max_e2, e * e);
  return std::numeric_limits<double>::min() * max_e2;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double matrix_norm(const TridiagonalOperator& op) {
  const std::size_t n = op.diag.size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(op.diag[i]);
    if (i > 0) row += std::abs(op.offdiag[i - 1]);
    if (i + 1 < n) row += std::abs(op.offdiag[i]);
    m = std::max(m, row);
  }
  return m;
}

// Solves (T - sigma I) x = rhs by Gaussian elimination with partial pivoting;
// row swaps fill in one extra superdiagonal. Pivots are floored in magnitude
// at pivmin so the solve survives a near-exact shift.
std::vector<double> solve_shifted(const TridiagonalOperator& op, double sigma,
                                  std::vector<double> rhs, double pivmin) {
  const std::size_t n = op.diag.size();
  std::vector<double> d(n), u1(n, 0.0), u2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = op.diag[i] - sigma;
  for (std::size_t i = 0; i + 1 < n; ++i) u1[i] = op.offdiag[i];

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double sub = op.offdiag[k];  // entry (k+1, k), untouched so far
    if (std::abs(d[k]) >= std::abs(sub)) {
      double piv = d[k];
      if (std::abs(piv) < pivmin) piv = std::copysign(pivmin, piv == 0.0 ? 1.0 : piv);
      d[k] = piv;
      const double mult = sub / piv;
      d[k + 1] -= mult * u1[k];
      u1[k + 1] -= mult * u2[k];
      rhs[k + 1] -= mult * rhs[k];
    } else {
      // Swap rows k and k+1; the old pivot row becomes row k+1.
      const double old_d = d[k], old_u1 = u1[k], old_u2 = u2[k];
      d[k] = sub;
      u1[k] = d[k + 1];
      u2[k] = u1[k + 1];
      std::swap(rhs[k], rhs[k + 1]);
      const double mult = old_d / sub;
      d[k + 1] = old_u1 - mult * u1[k];
      u1[k + 1] = old_u2 - mult * u2[k];
      rhs[k + 1] -= mult * rhs[k];
    }
  }

  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double piv = d[ii];
    if (std::abs(piv) < pivmin) piv = std::copysign(pivmin, piv == 0.0 ? 1.0 : piv);
    double acc = rhs[ii];
    if (ii + 1 < n) acc -= u1[ii] * x[ii + 1];
    if (ii + 2 < n) acc -= u2[ii] * x[ii + 2];
    x[ii] = acc / piv;
  }
  return x;
}

std::vector<double> alternating_ramp(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ramp = 1.0 + static_cast<double>(i) / static_cast<double>(n);
    v[i] = (i % 2 == 0) ? ramp : -ramp;
  }
  return v;
}

std::vector<double> inverse_iteration(const TridiagonalOperator& op,
                                      double sigma, double pivmin) {
  const std::size_t n = op.diag.size();
  const double norm_t = matrix_norm(op);
  const double target = 1e-10 * std::max(norm_t, 1e-300);

  std::vector<double> v = alternating_ramp(n);
  {
    const double s = inf_norm(v);
    for (double& x : v) x /= s;
  }

  std::vector<double> best;
  double best_resid = std::numeric_limits<double>::infinity();
  SplitMix64 reseed(0x5EEDu);

  for (int iter = 1; iter <= kMaxInverseIterations; ++iter) {
    std::vector<double> w = solve_shifted(op, sigma, v, pivmin);
    const double growth = inf_norm(w);
    // (T - sigma) w = v and |v| = 1, so the residual of w/|w| is 1/growth.
    const double resid = 1.0 / growth;
    for (double& x : w) x /= growth;
    v = std::move(w);
    if (resid < best_resid) {
      best_resid = resid;
      best = v;
    }
    if (best_resid <= target) break;
    if (iter % 5 == 0) {
      // Stagnating: restart from a random direction.
      for (double& x : v) x = 2.0 * reseed.next_u01() - 1.0;
      const double s = inf_norm(v);
      for (double& x : v) x /= s;
    }
  }

  if (!(best_resid <= 1e-8 * std::max(norm_t, 1e-300))) {
    throw std::runtime_error("oracle: inverse iteration did not converge");
  }
  if (best[0] == 0.0) {
    throw std::runtime_error("oracle: eigenvector has zero first component");
  }
  const double scale = best[0];
  for (double& x : best) x /= scale;
  return best;
}

}  // namespace

SturmCount sturm_count(const TridiagonalOperator& op, double lambda) {
  const std::size_t n = op.diag.size();
  const double pivmin = pivot_floor(op);
  SturmCount out;
  out.lambda = lambda;
  double d = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = i == 0 ? 0.0 : op.offdiag[i - 1] * op.offdiag[i - 1];
    d = (op.diag[i] - lambda) - e2 / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++out.negcount;
  }
  return out;
}

std::vector<OracleEigenPair> oracle_spectrum(const Environment& env,
                                             double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("oracle_spectrum: tol > 0");
  const int n = env.n();
  if (n == 1) return {OracleEigenPair{0.0, {1.0}}};

  const TridiagonalOperator op = build_operator(env);
  const double pivmin = pivot_floor(op);
  const double lambda_max = gershgorin_upper(env);
  const double width = tol * lambda_max;

  std::vector<OracleEigenPair> out;
  out.reserve(std::size_t(n));
  for (int j = 0; j < n; ++j) {
    double lo = -lambda_max * 1e-3 - 1e-300;
    double hi = lambda_max * (1.0 + 1e-12);
    int iters = 0;
    while (hi - lo > width) {
      if (++iters > kMaxBisection) {
        throw std::runtime_error("oracle: bisection iteration limit");
      }
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(op, mid).negcount >= j + 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    OracleEigenPair pair;
    pair.lambda = 0.5 * (lo + hi);
    pair.values = inverse_iteration(op, pair.lambda, pivmin);
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace condspec
