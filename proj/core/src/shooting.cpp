#include "condspec/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "condspec/operator.hpp"

namespace condspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisectionIterations = 200;

double arctan_residual(const ExtReal& b) {
  return b.is_infinite() ? kPi / 2.0 : std::atan(b.value());
}

bool in_fixed_interval(double c, double lambda, const ExtReal& b) {
  if (b.is_infinite()) return false;
  const auto interval = fixed_interval(c, lambda);
  if (!interval) return false;
  return interval->first <= b.value() && b.value() <= interval->second;
}

[[noreturn]] void inconsistency(const char* what, double lambda,
                                const AngleState& state) {
  std::ostringstream os;
  os << "shooting internal consistency failure (" << what
     << "): lambda=" << lambda << " branch=" << state.branch << " b=";
  if (state.b.is_infinite()) {
    os << "infinity";
  } else {
    os << state.b.value();
  }
  throw std::runtime_error(os.str());
}

// theta(lambda, n+1) without storing the profile.
AngleState terminal_state(const Environment& env, double lambda) {
  AngleState state;  // theta(lambda, 1) = 0
  state = phi_step(1.0, lambda, state);  // arbitrary c(0,1) fixed to 1
  for (int x = 2; x <= env.n(); ++x) {
    state = phi_step(env.conductance(x - 1), lambda, state);
  }
  return state;
}

// theta(lambda, n+1) >= mode * pi.
bool reaches_mode(const AngleState& end, int mode) {
  if (end.branch != mode) return end.branch > mode;
  return end.b.is_infinite() || end.b.value() >= 0.0;
}

// Eigenvector at the converged lambda, via the pivot form of the shooting
// recursion run from both boundaries. The forward pivots are the ratio
// dynamics itself, d+(x) = c(x,x+1) f(x+1)/f(x); pure left-to-right
// reconstruction locks onto the exponentially growing companion solution
// past the localization peak of high disordered modes, so the two pivot
// sweeps are matched at the index where the twisted pivot gamma is smallest
// and the vector is built outward from there (each side then follows its
// stable direction). Identical to the one-sided ratio recursion wherever
// that recursion is well conditioned.
void reconstruct(const Environment& env, double lambda, EigenPair& pair) {
  const int n = env.n();
  pair.values.assign(std::size_t(n), 0.0);
  if (n == 1) {
    pair.values[0] = 1.0;
    pair.residual = std::abs(lambda);
    pair.terminal_defect = std::abs(lambda);
    return;
  }

  const TridiagonalOperator op = build_operator(env);
  double pivmin = 1.0;
  for (double e : op.offdiag) pivmin = std::max(pivmin, e * e);
  pivmin *= std::numeric_limits<double>::min();
  const auto floor_pivot = [pivmin](double d) {
    if (std::abs(d) < pivmin) return d < 0.0 ? -pivmin : pivmin;
    return d;
  };

  const auto un = static_cast<std::size_t>(n);
  std::vector<double> dplus(un), dminus(un);
  dplus[0] = floor_pivot(op.diag[0] - lambda);
  for (int x = 1; x < n; ++x) {
    const double e = op.offdiag[std::size_t(x - 1)];
    dplus[std::size_t(x)] =
        floor_pivot((op.diag[std::size_t(x)] - lambda) -
                    e * e / dplus[std::size_t(x - 1)]);
  }
  dminus[std::size_t(n - 1)] = floor_pivot(op.diag[std::size_t(n - 1)] - lambda);
  for (int x = n - 2; x >= 0; --x) {
    const double e = op.offdiag[std::size_t(x)];
    dminus[std::size_t(x)] =
        floor_pivot((op.diag[std::size_t(x)] - lambda) -
                    e * e / dminus[std::size_t(x + 1)]);
  }

  int match = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int x = 0; x < n; ++x) {
    const double gamma = dplus[std::size_t(x)] + dminus[std::size_t(x)] -
                         (op.diag[std::size_t(x)] - lambda);
    if (std::abs(gamma) < best) {
      best = std::abs(gamma);
      match = x;
    }
  }

  pair.values[std::size_t(match)] = 1.0;
  for (int x = match - 1; x >= 0; --x) {
    pair.values[std::size_t(x)] = -op.offdiag[std::size_t(x)] *
                                  pair.values[std::size_t(x + 1)] /
                                  dplus[std::size_t(x)];
  }
  for (int x = match + 1; x < n; ++x) {
    pair.values[std::size_t(x)] = -op.offdiag[std::size_t(x - 1)] *
                                  pair.values[std::size_t(x - 1)] /
                                  dminus[std::size_t(x)];
  }

  const double left = pair.values[0];
  if (left == 0.0 || !std::isfinite(left)) {
    inconsistency("eigenvector vanished at the left boundary", lambda,
                  AngleState{});
  }
  for (double& v : pair.values) v /= left;

  // b(lambda, n+1) = -d+(n) once the arbitrary right edge is attached, so
  // the distance of the terminal angle from a pi multiple is |d+(n)|.
  pair.terminal_defect = std::abs(dplus[std::size_t(n - 1)]);

  const auto lg = apply_generator(env, pair.values);
  double res = 0.0;
  for (int x = 0; x < n; ++x) {
    res = std::max(res, std::abs(lg[std::size_t(x)] +
                                 lambda * pair.values[std::size_t(x)]));
  }
  pair.residual = res;
}

}  // namespace

double theta_value(const AngleState& state) {
  return state.branch * kPi + arctan_residual(state.b);
}

bool angle_less(const AngleState& a, const AngleState& b) {
  if (a.branch != b.branch) return a.branch < b.branch;
  return ext_less(a.b, b.b);
}

ExtReal xi_step(double c, double lambda, ExtReal b) {
  if (!(c > 0.0)) throw std::invalid_argument("xi_step: c must be > 0");
  if (b.is_infinite()) return ExtReal(lambda - c);
  const double denom = 1.0 - b.value() / c;
  if (denom == 0.0) return ExtReal::infinity();
  return ExtReal(b.value() / denom + lambda);
}

std::optional<std::pair<double, double>> fixed_interval(double c,
                                                        double lambda) {
  if (!(c > 0.0)) throw std::invalid_argument("fixed_interval: c must be > 0");
  if (lambda < 0.0) {
    throw std::invalid_argument("fixed_interval: lambda must be >= 0");
  }
  if (lambda == 0.0) return std::pair{0.0, 0.0};
  if (lambda < 4.0 * c) return std::nullopt;
  // Roots of b^2 - lambda b + lambda c; the smaller one via the product to
  // avoid cancellation when lambda >> c.
  const double sq = std::sqrt(lambda * (lambda - 4.0 * c));
  const double b2 = 0.5 * (lambda + sq);
  const double b1 = sq == 0.0 ? b2 : lambda * c / b2;
  return std::pair{b1, b2};
}

AngleState phi_step(double c, double lambda, const AngleState& state) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("phi_step: lambda must be > 0");
  }
  const bool forced_jump = in_fixed_interval(c, lambda, state.b);
  AngleState next;
  next.b = xi_step(c, lambda, state.b);
  next.branch = state.branch + (forced_jump ? 1 : 0) +
                (ext_less(next.b, state.b) ? 1 : 0);
  return next;
}

std::vector<AngleState> angle_profile(const Environment& env, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("angle_profile: lambda must be > 0");
  }
  std::vector<AngleState> profile;
  profile.reserve(std::size_t(env.n()) + 1);
  profile.push_back(AngleState{});
  profile.push_back(phi_step(1.0, lambda, profile.back()));
  for (int x = 2; x <= env.n(); ++x) {
    profile.push_back(phi_step(env.conductance(x - 1), lambda, profile.back()));
  }
  return profile;
}

TerminalAngle terminal_angle(const Environment& env, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("terminal_angle: lambda must be > 0");
  }
  const AngleState end = terminal_state(env, lambda);
  TerminalAngle out;
  out.theta_end = theta_value(end);
  // Eigenvalues in (0, lambda): branches fully below theta_end; an exact
  // multiple of pi (b == 0) marks lambda itself as an eigenvalue and is not
  // counted.
  int count = end.branch;
  if (!end.b.is_infinite() && end.b.value() <= 0.0) count -= 1;
  out.count = std::max(count, 0);
  return out;
}

EigenPair solve_eigenvalue(const Environment& env, int mode, double tol) {
  const int n = env.n();
  if (mode < 1 || mode > n - 1) {
    throw std::invalid_argument("solve_eigenvalue: mode must be in [1, n-1]");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("solve_eigenvalue: tol > 0");

  double lo = 0.0;
  double hi = gershgorin_upper(env);
  // All eigenvalues lie in [0, hi]; nudge the bound if the terminal angle
  // falls a rounding error short at hi.
  {
    int attempts = 0;
    while (!reaches_mode(terminal_state(env, hi), mode)) {
      hi *= 1.0 + 1e-12;
      if (++attempts > 8) {
        inconsistency("Gershgorin bound does not bracket the mode", hi,
                      terminal_state(env, hi));
      }
    }
  }

  int iterations = 0;
  while (hi - lo > tol * hi) {
    if (++iterations > kMaxBisectionIterations) {
      inconsistency("bisection iteration limit", 0.5 * (lo + hi),
                    terminal_state(env, 0.5 * (lo + hi)));
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    if (reaches_mode(terminal_state(env, mid), mode)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  EigenPair pair;
  pair.mode = mode;
  pair.lambda = 0.5 * (lo + hi);
  reconstruct(env, pair.lambda, pair);
  return pair;
}

std::vector<EigenPair> full_spectrum(const Environment& env, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("full_spectrum: tol > 0");
  const int n = env.n();
  std::vector<EigenPair> spectrum;
  spectrum.reserve(std::size_t(n));

  EigenPair ground;
  ground.mode = 0;
  ground.lambda = 0.0;
  ground.values.assign(std::size_t(n), 1.0);
  spectrum.push_back(std::move(ground));

  for (int j = 1; j < n; ++j) {
    spectrum.push_back(solve_eigenvalue(env, j, tol));
    if (spectrum[std::size_t(j)].lambda <= spectrum[std::size_t(j - 1)].lambda) {
      inconsistency("eigenvalues not strictly increasing",
                    spectrum[std::size_t(j)].lambda, AngleState{});
    }
  }
  return spectrum;
}

}  // namespace condspec
