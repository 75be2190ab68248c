#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ripl/operators.hpp"
#include "ripl/pattern.hpp"
#include "ripl/solver.hpp"

namespace ripl {

/// A permutation of {1..n} with provenance. Level-preserving kinds map each
/// pattern level onto itself, so they fix the class of pattern-sparse
/// vectors by construction.
class Permutation {
public:
  enum class Kind { Identity, GlobalReverse, LevelReverse, LevelRandom, Custom };

  static Permutation identity(int n);
  static Permutation global_reverse(int n);
  static Permutation level_reverse(const SparsityPattern& p);
  static Permutation level_random(const SparsityPattern& p, std::uint64_t seed);
  /// map[i] is the 0-based source of target position i: (Qx)[i] = x[map[i]].
  static Permutation custom(std::vector<int> map);

  int size() const { return static_cast<int>(map_.size()); }
  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<int>& map() const { return map_; }

  cvec apply(const cvec& x) const;
  cvec apply_inverse(const cvec& y) const;
  Permutation inverse() const;

  /// True when every level of the pattern is mapped onto itself.
  bool preserves_levels(const SparsityPattern& p) const;

  std::string kind_name() const;

private:
  Permutation(Kind kind, std::vector<int> map, std::uint64_t seed)
      : kind_(kind), map_(std::move(map)), seed_(seed) {}

  Kind kind_;
  std::vector<int> map_;
  std::uint64_t seed_ = 0;
};

/// Paired recovery errors of an original and a permuted (or otherwise
/// modified) ground truth, both measured against the same original after
/// undoing the modification.
struct FlipReport {
  double err_original_l1 = 0.0;
  double err_original_l2 = 0.0;
  double err_flipped_l1 = 0.0;
  double err_flipped_l2 = 0.0;
  std::string permutation_kind;
  std::uint64_t permutation_seed = 0;
  int permutation_index = 0;
  int iterations_original = 0;
  int iterations_flipped = 0;
  bool converged_original = false;
  bool converged_flipped = false;
};

/// Recover x1 from U x1 and Q x1 from U Q x1, un-permute the second
/// reconstruction and report both relative errors.
FlipReport run_flip_test(const SensingOperator& U, const cvec& x1, const Permutation& perm,
                         const SolveOptions& opts = {}, double eps = 0.0);

struct SweepSummary {
  double max_err = 0.0;     // of the flipped relative l2 errors
  double min_err = 0.0;
  double mean_err = 0.0;
  double stddev_err = 0.0;
  int count = 0;
};

struct SweepResult {
  std::vector<FlipReport> reports;  // ordered by permutation index
  SweepSummary summary;
};

/// `count` independent level-random permutations; reports are deterministic
/// given the master seed and ordered by index regardless of thread count.
SweepResult permutation_sweep(const SensingOperator& U, const cvec& x1, const SparsityPattern& p,
                              int count, std::uint64_t seed, const SolveOptions& opts = {},
                              double eps = 0.0);

/// Where to concentrate the moved support. level 0 picks the finest level
/// that allows a strict count increase within the weighted budget; level -1
/// keeps the support unchanged (control runs); count 0 maximizes the count.
struct MoverSpec {
  int level = 0;
  int count = 0;
};

struct GeneralizedFlipConfig {
  std::vector<double> thresholds;  // ascending absolute thresholds; empty = geometric default
  double recovered_tol = 1e-4;     // relative l2 defining "perfectly recovered"
  MoverSpec mover;
};

struct GeneralizedFlipReport {
  FlipReport flip;  // original = binarized support w1, flipped = moved vector w2
  double threshold_used = 0.0;
  double weighted_budget = 0.0;  // weighted l0 norm of w1 (and upper bound for w2)
  int mover_level = 0;
  int mover_count = 0;
  cvec w1, w2;
};

/// The weighted-sparsity diagnostic: threshold w until it is exactly
/// recovered, binarize the support, then build a second vector of no larger
/// weighted l0 norm whose support crowds a single level, and compare the two
/// recoveries.
GeneralizedFlipReport generalized_flip_test(const SensingOperator& U, const cvec& w,
                                            const Weights& omega, const SparsityPattern& p,
                                            const GeneralizedFlipConfig& config,
                                            const SolveOptions& opts = {}, double eps = 0.0);

}  // namespace ripl
