#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ripl/certify.hpp"
#include "ripl/pattern.hpp"

namespace ripl {

struct CounterexampleParams {
  int a = 1;
  int C = 4;
  double rho = 0.5;
  double tau = 0.0;     // sharpness family only
  double lambda = 0.0;  // normalization of the kernel direction
  int omega = 0;        // sharpness family only
};

/// A concrete matrix with a sparsity pattern, distinguished vectors and a
/// list of named claims that verify() evaluates numerically.
struct CounterexampleInstance {
  std::string name;
  rmat U;
  SparsityPattern pattern{{1}, {0, 1}};
  rvec x1;      // the distinguished sparse vector of the construction
  rvec kernel;  // unit vector spanning the nullspace of U
  rvec z1, z2;  // competing vectors where applicable (z2 may be empty)
  CounterexampleParams params;
  std::vector<std::string> claims;
};

/// The two small instances showing that both covering conditions are needed:
/// a zero budget and a pattern that stops short of the last column.
std::pair<CounterexampleInstance, CounterexampleInstance> covering_counterexamples();

/// Two-level pattern with budget ratio C^2 whose matrix has a tiny constant
/// yet fails l1 recovery of a pattern-sparse vector.
CounterexampleInstance construct_eta_dependence(int a, int C);

/// Same matrix viewed through C^2+1 unit levels with ratio constant 1.
CounterexampleInstance construct_l_dependence(int a, int C);

enum class SharpnessVariant { Eta, Levels };

/// The projection-type family showing the l2 error estimate is tight: all
/// mass of the kernel direction sits in a wide flat tail so the structured
/// approximation error stays small while the l2 gap is 1.
CounterexampleInstance construct_l2_sharpness(int a, int C, double rho, SharpnessVariant variant,
                                              double tau = 0.0 /* 0 = sqrt(2) */);

struct ClaimCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::string instance;
  std::vector<ClaimCheck> claims;
  bool all_pass = false;
};

struct VerifyOptions {
  int nsp_trials = 100000;
  int nsp_halved_rho_trials = 1000;
  int lower_bound_budget = 32;
  std::uint64_t seed = 7;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  bool run_solver_checks = true;  // iterative solver agreement (slower)
};

/// Evaluates every claim of the instance with the certification machinery,
/// the exact oracle and (optionally) the iterative solver.
VerificationReport verify(const CounterexampleInstance& instance, const VerifyOptions& opts = {});

/// Operator whose output norm equals ||U v||_2 for every v but whose action
/// is O(n): the main constructions are scaled projections along the kernel,
/// so ||Uv||_2 = scale * ||v - <kernel,v> kernel||_2. Only valid for norm
/// based uses (nullspace property searches); the covering instances fall
/// back to the dense matrix. The scale is sqrt(2)/tau for the sharpness
/// family and 1 otherwise.
SensingOperator instance_norm_operator(const CounterexampleInstance& instance);

}  // namespace ripl
