#pragma once

#include <optional>
#include <span>
#include <vector>

#include "condspec/environment.hpp"
#include "condspec/extended.hpp"
#include "condspec/shooting.hpp"

namespace condspec {

// A local extremum is a maximal constant run [first,last] inside the open
// interior 2..n-1 with strict moves of opposite sign on both sides.
struct Plateau {
  int first = 0;
  int last = 0;
  bool is_max = false;
};

struct ExtremaReport {
  std::vector<Plateau> extrema;  // disjoint, ordered, tags alternating
  int count = 0;
  int monotone_degree = 1;  // count + 1
};

// Two neighbouring values are treated as equal when they differ by at most
// plateau_tol times the larger of their magnitudes; endpoints are never
// extrema.
ExtremaReport count_extrema(std::span<const double> f,
                            double plateau_tol = 1e-9);

// h_j(x) = cos(j*pi*(x - 1/2) / n) for x = 1..n: the homogeneous
// eigenfunctions and the reference profiles for the disordered ones.
std::vector<double> cosine_mode(int n, int mode);

// Rescaled shooting ratio B(x) = n * b(lambda, x) run at lambda = alpha/n^2,
// with the segment decomposition given by the resistance-quantile indices
// and the sup deviations from the three tangent profiles.
struct TrajectoryReport {
  double alpha = 0.0;
  double lambda = 0.0;               // alpha / n^2
  std::vector<ExtReal> bvals;        // index i is B(x) at x = i+1, x = 1..n+1
  std::vector<ExtReal> avals;        // A(x) = 1/B(x)
  std::optional<int> tau1;           // first x with sqrt(a) r(1,x)/n >= pi/4
  std::optional<int> tau2;           // last x with sqrt(a) r(1,x)/n <= 3pi/4
  std::optional<int> tau;            // (first x with A(x) <= -2/sqrt(a)) - 1
  std::optional<int> tau_prime;      // last x in [tau2, n+1] with B <= 2 sqrt(a)
  double sup_dev_seg1 = 0.0;
  double sup_dev_seg2 = 0.0;
  double sup_dev_seg3 = 0.0;
  bool seg1_empty = false;
  bool seg2_empty = false;
  bool seg3_empty = false;
  bool pole_before_tau1 = false;     // off the vanishing-deviation regime

  // Per-site reporting: segment id (0 when x belongs to none), the profile
  // value compared at x, and the pointwise deviation.
  std::vector<int> segment;
  std::vector<double> profile;
  std::vector<double> deviation;
};

TrajectoryReport b_trajectory(const Environment& env, double alpha);

// Sup distances of the computed eigenfunctions (g(1) = 1) to the cosine
// profiles, and of the weighted discrete derivative n*c(x-1,x)*[g(x)-g(x-1)]
// to n*[h(x)-h(x-1)] over x = 2..n; boundary gradients are zero on both
// sides and compared as such.
struct ShapeReport {
  int max_mode = 0;
  std::vector<double> sup_shape;           // per mode 0..max_mode
  std::vector<double> sup_shape_rescaled;  // g rescaled to match h at x = 1
  std::vector<double> sup_deriv;
  double first_mode_shape = 0.0;  // sup_shape[1] when present
  double first_mode_deriv = 0.0;
};

// pairs must hold modes 0..max_mode in order; requires max_mode < n.
ShapeReport shape_report(const Environment& env,
                         std::span<const EigenPair> pairs, int max_mode);

// Route-B eigenfunction: the multiplicative recursion
// g(x) = [1 - r(x-1,x) b(lambda,x)] g(x-1) with b from the Mobius recursion.
// Throws if the ratio hits the pole exactly (b infinite).
std::vector<double> reconstruct_from_ratio(const Environment& env,
                                           double lambda);

}  // namespace condspec
