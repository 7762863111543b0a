#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "condspec/environment.hpp"
#include "condspec/extended.hpp"

namespace condspec {

// Prufer-style phase of the shooting recursion, stored as the tangent ratio b
// plus the tangent-branch index rather than as a raw angle. theta is
// recovered as branch*pi + arctan(b), with arctan of the infinity being pi/2,
// so each branch covers (k*pi - pi/2, k*pi + pi/2]. Keeping the pair avoids
// cancellation near branch boundaries; theta is materialized for reports only.
struct AngleState {
  ExtReal b{0.0};
  int branch = 0;
};

double theta_value(const AngleState& state);
bool angle_less(const AngleState& a, const AngleState& b);

// One Mobius step of the ratio: b / (1 - b/c) + lambda. The pole b == c maps
// to the infinity; the infinity maps to lambda - c. Requires c > 0.
ExtReal xi_step(double c, double lambda, ExtReal b);

// Closed interval between the fixed points of b -> xi_step(c, lambda, b):
// roots of b^2 - lambda b + lambda c. Empty when 0 < lambda < 4c; the
// degenerate [0,0] when lambda == 0. Requires c > 0, lambda >= 0.
std::optional<std::pair<double, double>> fixed_interval(double c,
                                                        double lambda);

// Angle update: b' = xi_step(c, lambda, b), and the new branch is the
// smallest one placing theta' at or above theta + pi*[b in I(lambda,c)].
// Requires c > 0 and lambda > 0 (the lambda == 0 angle is identically zero).
AngleState phi_step(double c, double lambda, const AngleState& state);

// theta(lambda, x) for x = 1..n+1 (profile[0] is the zero angle at x = 1).
// The first step uses the arbitrary boundary conductance c(0,1) := 1.
std::vector<AngleState> angle_profile(const Environment& env, double lambda);

struct TerminalAngle {
  double theta_end = 0.0;  // theta(lambda, n+1)
  int count = 0;           // eigenvalues in the open interval (0, lambda)
};

// Requires lambda > 0. lambda is the k-th positive eigenvalue exactly when
// theta_end is k*pi; count is derived from the terminal branch and ratio.
TerminalAngle terminal_angle(const Environment& env, double lambda);

struct EigenPair {
  int mode = 0;
  double lambda = 0.0;
  std::vector<double> values;   // g(1..n), normalized g(1) = 1
  double residual = 0.0;        // sup-norm of Lg + lambda*g
  double terminal_defect = 0.0; // |b(lambda, n+1)|, distance from a pi multiple
};

// Bisection on the terminal angle over (0, Gershgorin bound], predicate
// theta(lambda, n+1) >= j*pi, run until hi - lo <= tol * hi; the eigenvector
// is rebuilt at the converged lambda. Requires 1 <= j <= n-1.
EigenPair solve_eigenvalue(const Environment& env, int mode,
                           double tol = 1e-12);

// Mode 0 is (0, constant one) exactly; modes 1..n-1 are solved. Strictly
// increasing in lambda.
std::vector<EigenPair> full_spectrum(const Environment& env,
                                     double tol = 1e-12);

}  // namespace condspec
