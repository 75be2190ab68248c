#pragma once

#include "ripl/pattern.hpp"

namespace ripl {

/// Exact small-scale reference for basis pursuit over the reals.
struct OracleResult {
  enum class Method { RationalLp, KernelLine, Injective };

  rvec x;
  double objective = 0.0;
  bool unique = false;  // certified unique minimizer
  Method method = Method::RationalLp;
};

inline constexpr int kOracleLpMaxDim = 16;

/// min ||x||_1 subject to Ux = y, solved exactly:
///  - n <= 16: LP reformulation (positive/negative split) with exact
///    rational pivoting, so the answer is exact for the given doubles;
///  - larger n with nullspace dimension <= 1: direct search along the
///    kernel line (all breakpoints of the piecewise-linear objective);
///  - throws TooLarge otherwise and Infeasible when y is not in the range.
OracleResult oracle_bp(const rmat& U, const rvec& y);

}  // namespace ripl
