#pragma once

#include <span>
#include <vector>

#include "condspec/environment.hpp"

namespace condspec {

// Symmetric tridiagonal matrix of -L, where L is the conductance generator
// (Lf)(x) = c(x,x+1)[f(x+1)-f(x)] - c(x-1,x)[f(x)-f(x-1)] with zero boundary
// conductances. diag(x) = c(x-1,x)+c(x,x+1); offdiag(x) = -c(x,x+1).
// Row sums vanish, so the constant vector is in the kernel.
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;
};

TridiagonalOperator build_operator(const Environment& env);

// Gershgorin upper bound for the spectrum of -L: 2 max_x row sum.
double gershgorin_upper(const Environment& env);

// (Lf)(x); Neumann-type boundary (missing edges contribute zero).
std::vector<double> apply_generator(const Environment& env,
                                    std::span<const double> f);

// Inner product, mean and variance under the uniform weight 1/N.
double mu_inner(std::span<const double> f, std::span<const double> g);
double mu_mean(std::span<const double> f);
double mu_variance(std::span<const double> f);

// E(f) = sum_x (1/N) c(x,x+1) [f(x+1)-f(x)]^2  =  -<f, Lf>.
double dirichlet_form(const Environment& env, std::span<const double> f);

// E(f) / Var(f); throws std::domain_error("zero variance") on constant f.
double rayleigh_quotient(const Environment& env, std::span<const double> f);

}  // namespace condspec
