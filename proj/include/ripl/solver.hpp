#pragma once

#include <cstdint>
#include <optional>

#include "ripl/operators.hpp"
#include "ripl/pattern.hpp"

namespace ripl {

struct SolveOptions {
  int max_iters = 50000;
  double tol_primal = 1e-8;
  double tol_dual = 1e-8;
  double tol_feas = 1e-8;
  double step_scale = 0.99;     // fraction of 1/||U|| used for both step sizes
  double overrelax = 1.0;       // extrapolation parameter of the primal iterate
  int norm_power_iters = 20;    // power-iteration count for the step-size estimate
  std::uint64_t seed = 0;       // reserved for randomized variants
  int check_every = 10;         // residual test cadence

  void validate() const;
};

struct SolveResult {
  cvec x;
  double objective = 0.0;             // l1 (or weighted l1) value of x
  double feasibility_residual = 0.0;  // max(0, ||Ux - y||_2 - eps)
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

/// Operator norm estimate by power iteration on U*U with a fixed,
/// seed-derived start vector. Deterministic.
double estimate_operator_norm(const SensingOperator& U, int iters = 20);

/// min ||x||_1 subject to Ux = y.
SolveResult solve_bp(const SensingOperator& U, const cvec& y, const SolveOptions& opts = {});

/// min ||x||_1 subject to ||Ux - y||_2 <= eps.
SolveResult solve_bpdn(const SensingOperator& U, const cvec& y, double eps,
                       const SolveOptions& opts = {});

/// min sum_j w_j |x_j| subject to ||Ux - y||_2 <= eps.
SolveResult solve_weighted_l1(const SensingOperator& U, const cvec& y, const Weights& w,
                              double eps, const SolveOptions& opts = {});

}  // namespace ripl
