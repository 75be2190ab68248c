#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ripl/errors.hpp"

namespace ripl {

using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

/// Level structure for structured sparsity: strictly increasing boundaries
/// M (M[0] = 0) and one non-negative budget per level, budget <= level width.
/// Coordinates are 1-based; level i covers indices (M[i-1], M[i]].
class SparsityPattern {
public:
  SparsityPattern(std::vector<int> budgets, std::vector<int> boundaries);

  int levels() const { return static_cast<int>(budgets_.size()); }
  int dimension() const { return boundaries_.back(); }
  const std::vector<int>& budgets() const { return budgets_; }
  const std::vector<int>& boundaries() const { return boundaries_; }

  int budget(int level) const { return budgets_[level - 1]; }
  int level_begin(int level) const { return boundaries_[level - 1] + 1; }  // 1-based inclusive
  int level_end(int level) const { return boundaries_[level]; }            // 1-based inclusive
  int level_width(int level) const { return boundaries_[level] - boundaries_[level - 1]; }

  /// Level containing 1-based index j.
  int level_of(int j) const;

  bool operator==(const SparsityPattern& other) const = default;
  std::string describe() const;

private:
  std::vector<int> budgets_;
  std::vector<int> boundaries_;
};

SparsityPattern make_pattern(const std::vector<int>& s, const std::vector<int>& M);

/// Largest budget ratio max_{i,j} s_i/s_j, kept as an exact reduced fraction;
/// infinite as soon as one budget is zero.
struct RatioConstant {
  bool infinite = false;
  long long num = 1;
  long long den = 1;

  double value() const { return infinite ? std::numeric_limits<double>::infinity() : static_cast<double>(num) / static_cast<double>(den); }
  bool finite() const { return !infinite; }
};

RatioConstant ratio_constant(const SparsityPattern& p);

/// Total budget across levels.
int num_elements(const SparsityPattern& p);

/// A pattern covers dimension n when its ratio constant is finite and the
/// last boundary reaches n.
bool covers(const SparsityPattern& p, int n);

/// Budgets multiplied by a and clamped at the level widths.
SparsityPattern scale_pattern(const SparsityPattern& p, int a);

/// Per-coordinate weights, each >= 1.
class Weights {
public:
  explicit Weights(rvec w);
  static Weights ones(int n) { return Weights(rvec::Ones(n)); }
  /// Weight 2^i for every coordinate of level i.
  static Weights per_level_pow2(const SparsityPattern& p);

  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int j0) const { return w_[j0]; }  // 0-based
  const rvec& values() const { return w_; }

private:
  rvec w_;
};

/// Sorted 1-based support satisfying the per-level budget condition of a
/// pattern (checked on construction).
class LevelSupport {
public:
  LevelSupport(std::vector<int> indices, const SparsityPattern& pattern);

  const std::vector<int>& indices() const { return indices_; }
  const SparsityPattern& pattern() const { return pattern_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool contains(int j) const;

private:
  std::vector<int> indices_;
  SparsityPattern pattern_;
};

/// Membership test with exact-zero support by default; `threshold` is an
/// absolute magnitude cutoff for empirical data.
bool is_sm_sparse(const cvec& x, const SparsityPattern& p, double threshold = 0.0);

struct BestApprox {
  LevelSupport support;
  double sigma_l1 = 0.0;  // l1 mass dropped by the best structured approximation
};

/// Best structured approximation: keeps the s_i largest-magnitude entries per
/// level (ties to the lowest index) and reports the l1 error of what is
/// dropped.
BestApprox best_sm_approx(const cvec& x, const SparsityPattern& p);

/// Per-level counts of the smallest head of coefficients (by magnitude, ties
/// to the lowest index) whose l2 norm reaches the fraction eps of ||w||_2.
std::vector<int> sk_epsilon(const cvec& w, const SparsityPattern& p, double eps);

struct WeightedNorms {
  double l0 = 0.0;  // sum of squared weights over the support
  double l1 = 0.0;  // sum of w_j |x_j|
};

WeightedNorms weighted_norms(const cvec& x, const Weights& w);

/// Smallest X such that every pattern-sparse vector has weighted l0 norm at
/// most X: per level the s_i largest squared weights, summed over levels.
double max_weighted_l0_over_pattern(const SparsityPattern& p, const Weights& w);

}  // namespace ripl
