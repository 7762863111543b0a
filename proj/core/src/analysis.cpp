#include "condspec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace condspec {

namespace {

constexpr double kPi = std::numbers::pi;

ExtReal trajectory_step(ExtReal b, double r, double n, double alpha_over_n) {
  if (b.is_infinite()) return ExtReal(-n / r + alpha_over_n);
  const double denom = 1.0 - r * b.value() / n;
  if (denom == 0.0) return ExtReal::infinity();
  return ExtReal(b.value() / denom + alpha_over_n);
}

ExtReal reciprocal(ExtReal b) {
  if (b.is_infinite()) return ExtReal(0.0);
  if (b.value() == 0.0) return ExtReal::infinity();
  return ExtReal(1.0 / b.value());
}

}  // namespace

ExtremaReport count_extrema(std::span<const double> f, double plateau_tol) {
  if (f.size() < 2) throw std::invalid_argument("count_extrema: length >= 2");
  if (plateau_tol < 0.0) {
    throw std::invalid_argument("count_extrema: plateau_tol >= 0");
  }

  // Two neighbours are equal when their difference is below plateau_tol
  // times the larger of their magnitudes. The scale is local: eigenvectors
  // normalized at the left endpoint can span many orders of magnitude, and
  // a global-max scale would erase genuine small-amplitude extrema.
  std::vector<std::pair<int, int>> moves;  // (diff index, sign)
  for (int d = 1; d < static_cast<int>(f.size()); ++d) {
    const double a = f[std::size_t(d - 1)];
    const double b = f[std::size_t(d)];
    const double eq = plateau_tol * std::max(std::abs(a), std::abs(b));
    const double step = b - a;
    if (step > eq) {
      moves.emplace_back(d, +1);
    } else if (step < -eq) {
      moves.emplace_back(d, -1);
    }
  }

  ExtremaReport report;
  for (std::size_t i = 0; i + 1 < moves.size(); ++i) {
    const auto [d1, s1] = moves[i];
    const auto [d2, s2] = moves[i + 1];
    if (s1 == s2) continue;
    Plateau p;
    p.first = d1 + 1;
    p.last = d2;
    p.is_max = s1 > 0;
    report.extrema.push_back(p);
  }
  report.count = static_cast<int>(report.extrema.size());
  report.monotone_degree = report.count + 1;
  return report;
}

std::vector<double> cosine_mode(int n, int mode) {
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) {
    h[std::size_t(x - 1)] = std::cos(mode * kPi * (x - 0.5) / n);
  }
  return h;
}

TrajectoryReport b_trajectory(const Environment& env, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("b_trajectory: alpha > 0");
  const int n = env.n();
  if (n < 2) throw std::invalid_argument("b_trajectory: n >= 2 required");
  const double nd = static_cast<double>(n);
  const double sqrt_a = std::sqrt(alpha);

  TrajectoryReport rep;
  rep.alpha = alpha;
  rep.lambda = alpha / (nd * nd);

  // Resistance prefix sums r(1,x) = sum over edges 1..x-1, x = 1..n+1.
  std::vector<double> rsum(std::size_t(n) + 1, 0.0);
  for (int x = 2; x <= n + 1; ++x) {
    rsum[std::size_t(x - 1)] =
        rsum[std::size_t(x - 2)] + (x - 1 <= n - 1 ? env.resistance(x - 1) : 0.0);
  }

  rep.bvals.reserve(std::size_t(n) + 1);
  rep.bvals.push_back(ExtReal(0.0));
  for (int x = 1; x <= n; ++x) {
    const double r = x == 1 ? 1.0 : env.resistance(x - 1);
    rep.bvals.push_back(trajectory_step(rep.bvals.back(), r, nd, alpha / nd));
  }
  rep.avals.reserve(rep.bvals.size());
  for (const ExtReal& b : rep.bvals) rep.avals.push_back(reciprocal(b));

  for (int x = 1; x <= n; ++x) {
    const double q = sqrt_a * rsum[std::size_t(x - 1)] / nd;
    if (!rep.tau1 && q >= kPi / 4.0) rep.tau1 = x;
    if (q <= 3.0 * kPi / 4.0) rep.tau2 = x;
  }
  for (int x = 1; x <= n; ++x) {
    const ExtReal& a = rep.avals[std::size_t(x - 1)];
    if (!a.is_infinite() && a.value() <= -2.0 / sqrt_a) {
      rep.tau = x - 1;
      break;
    }
  }
  if (rep.tau2) {
    for (int x = *rep.tau2; x <= n + 1; ++x) {
      const ExtReal& b = rep.bvals[std::size_t(x - 1)];
      if (!b.is_infinite() && b.value() <= 2.0 * sqrt_a) rep.tau_prime = x;
    }
  }

  rep.segment.assign(std::size_t(n) + 1, 0);
  rep.profile.assign(std::size_t(n) + 1, 0.0);
  rep.deviation.assign(std::size_t(n) + 1, 0.0);

  // Segment 1: B against sqrt(a) tan(sqrt(a) u), u = (x-1)/n, kept away from
  // the tangent pole by the cutoff sqrt(a) u <= pi/2 - 0.1.
  if (rep.tau1) {
    bool any = false;
    for (int x = 1; x <= *rep.tau1; ++x) {
      const double u = (x - 1) / nd;
      if (sqrt_a * u > kPi / 2.0 - 0.1) continue;
      const ExtReal& b = rep.bvals[std::size_t(x - 1)];
      if (b.is_infinite()) {
        rep.pole_before_tau1 = true;
        continue;
      }
      const double prof = sqrt_a * std::tan(sqrt_a * u);
      const double dev = std::abs(b.value() - prof);
      rep.segment[std::size_t(x - 1)] = 1;
      rep.profile[std::size_t(x - 1)] = prof;
      rep.deviation[std::size_t(x - 1)] = dev;
      rep.sup_dev_seg1 = std::max(rep.sup_dev_seg1, dev);
      any = true;
    }
    rep.seg1_empty = !any;
  } else {
    rep.seg1_empty = true;
  }

  // Segment 2: A against tan(pi/2 - (x-1) sqrt(a)/n) / sqrt(a), between tau1
  // and tau2 (capped at tau when the crossing exists).
  const int seg2_end =
      rep.tau2 ? (rep.tau ? std::min(*rep.tau2, *rep.tau) : *rep.tau2) : 0;
  if (rep.tau1 && seg2_end >= *rep.tau1) {
    bool any = false;
    for (int x = *rep.tau1; x <= seg2_end; ++x) {
      const ExtReal& a = rep.avals[std::size_t(x - 1)];
      if (a.is_infinite()) continue;
      const double prof =
          std::tan(kPi / 2.0 - (x - 1) * sqrt_a / nd) / sqrt_a;
      const double dev = std::abs(a.value() - prof);
      if (rep.segment[std::size_t(x - 1)] == 0) {
        rep.segment[std::size_t(x - 1)] = 2;
        rep.profile[std::size_t(x - 1)] = prof;
        rep.deviation[std::size_t(x - 1)] = dev;
      }
      rep.sup_dev_seg2 = std::max(rep.sup_dev_seg2, dev);
      any = true;
    }
    rep.seg2_empty = !any;
  } else {
    rep.seg2_empty = true;
  }

  // Segment 3: B against sqrt(a) tan(sqrt(a) r(1,x-1)/n) on [tau2, tau'].
  if (rep.tau2 && rep.tau_prime && *rep.tau_prime >= *rep.tau2) {
    bool any = false;
    for (int x = *rep.tau2; x <= *rep.tau_prime; ++x) {
      const ExtReal& b = rep.bvals[std::size_t(x - 1)];
      if (b.is_infinite()) continue;
      // r(1, x-1) is the empty sum at x = 1 (tau2 can sit there when the
      // first resistance already crosses the 3pi/4 quantile).
      const double rs = x >= 2 ? rsum[std::size_t(x - 2)] : 0.0;
      const double prof = sqrt_a * std::tan(sqrt_a * rs / nd);
      const double dev = std::abs(b.value() - prof);
      if (rep.segment[std::size_t(x - 1)] == 0) {
        rep.segment[std::size_t(x - 1)] = 3;
        rep.profile[std::size_t(x - 1)] = prof;
        rep.deviation[std::size_t(x - 1)] = dev;
      }
      rep.sup_dev_seg3 = std::max(rep.sup_dev_seg3, dev);
      any = true;
    }
    rep.seg3_empty = !any;
  } else {
    rep.seg3_empty = true;
  }

  return rep;
}

ShapeReport shape_report(const Environment& env,
                         std::span<const EigenPair> pairs, int max_mode) {
  const int n = env.n();
  if (max_mode < 0 || max_mode >= n) {
    throw std::invalid_argument("shape_report: require 0 <= max_mode < n");
  }
  if (static_cast<int>(pairs.size()) <= max_mode) {
    throw std::invalid_argument("shape_report: modes 0..max_mode required");
  }

  ShapeReport rep;
  rep.max_mode = max_mode;
  for (int j = 0; j <= max_mode; ++j) {
    const auto& g = pairs[std::size_t(j)].values;
    if (pairs[std::size_t(j)].mode != j ||
        static_cast<int>(g.size()) != n) {
      throw std::invalid_argument("shape_report: pair/mode mismatch");
    }
    const std::vector<double> h = cosine_mode(n, j);
    const double h1 = h[0];

    double sup = 0.0, sup_rescaled = 0.0;
    for (int x = 0; x < n; ++x) {
      sup = std::max(sup, std::abs(g[std::size_t(x)] - h[std::size_t(x)]));
      sup_rescaled = std::max(
          sup_rescaled, std::abs(g[std::size_t(x)] * h1 - h[std::size_t(x)]));
    }

    double supd = 0.0;
    for (int x = 2; x <= n; ++x) {
      const double wg = n * env.conductance(x - 1) *
                        (g[std::size_t(x - 1)] - g[std::size_t(x - 2)]);
      const double wh = n * (h[std::size_t(x - 1)] - h[std::size_t(x - 2)]);
      supd = std::max(supd, std::abs(wg - wh));
    }

    rep.sup_shape.push_back(sup);
    rep.sup_shape_rescaled.push_back(sup_rescaled);
    rep.sup_deriv.push_back(supd);
  }
  if (max_mode >= 1) {
    rep.first_mode_shape = rep.sup_shape[1];
    rep.first_mode_deriv = rep.sup_deriv[1];
  }
  return rep;
}

std::vector<double> reconstruct_from_ratio(const Environment& env,
                                           double lambda) {
  const int n = env.n();
  std::vector<double> g(std::size_t(n), 0.0);
  g[0] = 1.0;
  // b(lambda, 2) = lambda; the step from b(lambda,x) to b(lambda,x+1) and the
  // ratio factor at site x both use the edge {x-1, x}.
  ExtReal b = xi_step(1.0, lambda, ExtReal(0.0));
  for (int x = 2; x <= n; ++x) {
    if (b.is_infinite()) {
      throw std::runtime_error("reconstruct_from_ratio: pole at x=" +
                               std::to_string(x));
    }
    g[std::size_t(x - 1)] =
        (1.0 - env.resistance(x - 1) * b.value()) * g[std::size_t(x - 2)];
    if (x < n) b = xi_step(env.conductance(x - 1), lambda, b);
  }
  return g;
}

}  // namespace condspec
