#pragma once

#include <vector>

#include "condspec/environment.hpp"
#include "condspec/operator.hpp"

namespace condspec {

struct SturmCount {
  double lambda = 0.0;
  int negcount = 0;  // eigenvalues of the tridiagonal strictly below lambda
};

// Sign-change count of the Sturm sequence d_1 = diag(1) - lambda,
// d_x = (diag(x) - lambda) - offdiag(x-1)^2 / d_{x-1}, with pivots smaller
// than pivmin = DBL_MIN * max(1, max offdiag^2) replaced by -pivmin.
SturmCount sturm_count(const TridiagonalOperator& op, double lambda);

struct OracleEigenPair {
  double lambda = 0.0;
  std::vector<double> values;  // normalized so values[0] == 1
};

// Independent eigensolver for -L: eigenvalues by bisection on sturm_count
// (terminating at tol * Gershgorin bound), eigenvectors by inverse iteration
// on the shifted tridiagonal. Cross-check for the shooting solver; no code
// shared with it beyond the matrix assembly.
std::vector<OracleEigenPair> oracle_spectrum(const Environment& env,
                                             double tol = 1e-12);

}  // namespace condspec
