#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ripl/operators.hpp"
#include "ripl/pattern.hpp"

namespace ripl {

struct CertificateReport {
  enum class Kind { Rip, RipLevels, NspL2, NspL1, KernelExactRecovery };
  enum class Method { ExactEnumeration, RandomizedSearch, Analytic };

  Kind kind = Kind::RipLevels;
  Method method = Method::ExactEnumeration;
  double value = 0.0;          // constant, bound, ratio or violation margin
  bool is_lower_bound = false; // true when value only bounds the constant from below
  bool satisfied = true;       // verdict for pass/fail style certificates
  std::optional<std::vector<int>> witness_support;  // 1-based indices
  std::optional<cvec> witness_vector;
  std::uint64_t work = 0;  // subproblems examined
  std::string note;
};

const char* to_string(CertificateReport::Kind kind);
const char* to_string(CertificateReport::Method method);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Largest spectral deviation max(lmax-1, 1-lmin) of the Gram matrix over
/// all maximal pattern-sparse supports (non-maximal supports are dominated
/// by eigenvalue interlacing). Witness is the lexicographically smallest
/// attaining support; results are identical for the serial and parallel
/// variants.
CertificateReport ripl_exact(const cmat& A, const SparsityPattern& p,
                             std::uint64_t cap = kDefaultEnumerationCap);
CertificateReport ripl_exact_serial(const cmat& A, const SparsityPattern& p,
                                    std::uint64_t cap = kDefaultEnumerationCap);

/// Classical RIP constant of order s: the single-level reduction.
CertificateReport rip_exact(const cmat& A, int s, std::uint64_t cap = kDefaultEnumerationCap);

/// Randomized lower bound: leverage-score support proposals plus greedy
/// one-swap improvement. Never exceeds the exact constant.
CertificateReport ripl_lower_bound(const cmat& A, const SparsityPattern& p, int budget,
                                   std::uint64_t seed);
CertificateReport ripl_lower_bound(const SensingOperator& A, const SparsityPattern& p, int budget,
                                   std::uint64_t seed,
                                   std::int64_t materialize_cap = kDefaultMaterializeCap);

/// Right-hand side of the recovery condition on the order-2s constant:
/// 1 / sqrt(l (sqrt(eta) + 1/4)^2 + 1). Throws InfiniteRatio.
double recovery_threshold(const SparsityPattern& p);

struct RecoveryCheck {
  bool satisfied = false;
  bool certified = false;  // false when enumeration was infeasible and search was inconclusive
  double threshold = 0.0;
  std::string reason;
  CertificateReport report;
};

/// Compares the (exact or bounded) order-2s constant against the recovery
/// threshold and checks the covering conditions.
RecoveryCheck check_recovery_condition(const cmat& A, const SparsityPattern& p,
                                       std::uint64_t cap = kDefaultEnumerationCap);

/// Exact recovery verdict for matrices with a one-dimensional nullspace
/// spanned by h: all pattern-sparse vectors are recovered by l1 minimization
/// iff ||h_S||_1 < ||h_{S^c}||_1 for the worst maximal support S. Larger
/// nullspaces fall back to randomized falsification.
CertificateReport kernel_exact_recovery_check(const cmat& A, const SparsityPattern& p,
                                              int trials = 2000, std::uint64_t seed = 1);

/// Randomized search for a violation of
///   ||v_S||_2 <= rho/sqrt(s~) ||v_{S^c}||_1 + tau ||Uv||_2.
/// Proposals mix Gaussian vectors with kernel-aligned ones; for a fixed v the
/// adversarial S is the per-level greedy support, so each trial is decisive
/// for its vector. Reports the first violation or the largest margin seen.
CertificateReport nsp_falsify(const SensingOperator& U, const SparsityPattern& p, double rho,
                              double tau, int trials, std::uint64_t seed,
                              const std::optional<cmat>& kernel_basis = std::nullopt);
CertificateReport nsp_falsify_serial(const SensingOperator& U, const SparsityPattern& p,
                                     double rho, double tau, int trials, std::uint64_t seed,
                                     const std::optional<cmat>& kernel_basis = std::nullopt);

struct NspConstants {
  double rho = 0.5;
  double tau = 1.0;
  double tau_l1 = 0.0;  // constant of the l1 variant, tau * sqrt(s~) when derived
};

struct ErrorBounds {
  double A1 = 0, C1 = 0, A2 = 0, B2 = 0, C2 = 0, D2 = 0;
  double bound_l1 = 0;
  double bound_l2 = 0;
};

/// Explicit reconstruction error constants of the robust-nullspace recovery
/// guarantee, evaluated at best approximation error sigma and noise level eps.
ErrorBounds error_bounds(const NspConstants& nsp, const SparsityPattern& p, double sigma,
                         double eps);

/// Both sides of the sorted-vector norm inequality
///   ||v||_2 <= ||v||_1/sqrt(s) + (sqrt(s)/4)(v_1 - v_s).
/// Input must be non-increasing and non-negative.
std::pair<double, double> lemma_norm_bound(const rvec& v);

/// Spectral deviation of one support (0-based columns) of a dense matrix.
double spectral_deviation(const cmat& A, const std::vector<int>& cols0);

/// Greedy maximal support (1-based) taking the s_i largest-magnitude entries
/// of v per level, ties to the lowest index. This is the adversarial support
/// for both the NSP inequality and the kernel recovery check. A positive
/// tie_quantum buckets magnitudes at that relative resolution so entries
/// equal up to rounding tie deterministically.
std::vector<int> greedy_max_support(const cvec& v, const SparsityPattern& p,
                                    double tie_quantum = 0.0);

}  // namespace ripl
