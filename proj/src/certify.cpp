#include "ripl/certify.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ripl/rng.hpp"

namespace ripl {

const char* to_string(CertificateReport::Kind kind) {
  switch (kind) {
    case CertificateReport::Kind::Rip: return "RIP";
    case CertificateReport::Kind::RipLevels: return "RIP_L";
    case CertificateReport::Kind::NspL2: return "NSP_L2";
    case CertificateReport::Kind::NspL1: return "NSP_L1";
    case CertificateReport::Kind::KernelExactRecovery: return "kernel-exact-recovery";
  }
  return "?";
}

const char* to_string(CertificateReport::Method method) {
  switch (method) {
    case CertificateReport::Method::ExactEnumeration: return "exact-enumeration";
    case CertificateReport::Method::RandomizedSearch: return "randomized-search";
    case CertificateReport::Method::Analytic: return "analytic";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kCountSaturated = ~std::uint64_t{0};

std::uint64_t binom_saturating(int w, int k) {
  if (k < 0 || k > w) return 0;
  k = std::min(k, w - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(w - k + i);
    if (r > kCountSaturated / num) return kCountSaturated;
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

// Lexicographic unranking of a k-combination of {0..w-1}.
void unrank_combination(int w, int k, std::uint64_t rank, std::vector<int>& out) {
  int c = 0;
  for (int pos = 0; pos < k; ++pos) {
    for (;; ++c) {
      const std::uint64_t block = binom_saturating(w - c - 1, k - pos - 1);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(c++);
  }
}

// Enumerates all maximal pattern-sparse supports in lexicographic order.
class SupportEnumerator {
public:
  explicit SupportEnumerator(const SparsityPattern& p) : p_(p) {
    counts_.resize(p.levels());
    total_ = 1;
    for (int i = 1; i <= p.levels(); ++i) {
      counts_[i - 1] = binom_saturating(p.level_width(i), p.budget(i));
      if (counts_[i - 1] == kCountSaturated || total_ > kCountSaturated / counts_[i - 1]) {
        total_ = kCountSaturated;
        return;
      }
      total_ *= counts_[i - 1];
    }
  }

  std::uint64_t total() const { return total_; }

  // 0-based ascending column indices of the support with flat index t; the
  // first level is the most significant digit, so flat order is lex order.
  void decode(std::uint64_t t, std::vector<int>& out) const {
    out.clear();
    std::vector<std::uint64_t> digit(p_.levels());
    for (int i = p_.levels(); i >= 1; --i) {
      digit[i - 1] = t % counts_[i - 1];
      t /= counts_[i - 1];
    }
    std::vector<int> local;
    for (int i = 1; i <= p_.levels(); ++i) {
      local.clear();
      unrank_combination(p_.level_width(i), p_.budget(i), digit[i - 1], local);
      const int base = p_.level_begin(i) - 1;
      for (int c : local) out.push_back(base + c);
    }
  }

private:
  SparsityPattern p_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 1;
};

struct BestSupport {
  double deviation = -1.0;
  std::vector<int> support;  // 0-based

  // Strict total order: larger deviation wins, ties go to the
  // lexicographically smaller support. Merging is order-independent.
  bool better_than(const BestSupport& other) const {
    if (deviation != other.deviation) return deviation > other.deviation;
    return support < other.support;
  }
};

std::vector<int> to_one_based(const std::vector<int>& cols0) {
  std::vector<int> out(cols0.size());
  for (std::size_t i = 0; i < cols0.size(); ++i) out[i] = cols0[i] + 1;
  return out;
}

CertificateReport ripl_scan(const cmat& A, const SparsityPattern& p, std::uint64_t cap,
                            bool parallel) {
  (void)parallel;
  require(p.dimension() <= A.cols(), ErrorCode::DimensionMismatch,
          "pattern extends past the matrix columns");
  SupportEnumerator en(p);
  require(en.total() <= cap, ErrorCode::EnumerationTooLarge,
          "support enumeration exceeds the cap");
  const std::int64_t total = static_cast<std::int64_t>(en.total());

  BestSupport best;
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
  {
    BestSupport local;
    std::vector<int> cols;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64) nowait
#endif
    for (std::int64_t t = 0; t < total; ++t) {
      en.decode(static_cast<std::uint64_t>(t), cols);
      BestSupport cand{spectral_deviation(A, cols), cols};
      if (cand.better_than(local)) local = std::move(cand);
    }
#ifdef _OPENMP
#pragma omp critical(ripl_scan_merge)
#endif
    if (local.better_than(best)) best = std::move(local);
  }

  CertificateReport rep;
  rep.kind = CertificateReport::Kind::RipLevels;
  rep.method = CertificateReport::Method::ExactEnumeration;
  rep.value = std::max(best.deviation, 0.0);
  rep.witness_support = to_one_based(best.support);
  rep.work = en.total();
  return rep;
}

rvec leverage_weights(const cmat& A, const SparsityPattern& p) {
  rvec w = rvec::Zero(p.dimension());
  double mean = 0.0;
  for (int j = 0; j < p.dimension(); ++j) {
    w[j] = A.col(j).squaredNorm();
    mean += w[j];
  }
  mean /= std::max(1, p.dimension());
  for (int j = 0; j < p.dimension(); ++j) w[j] += 0.25 * mean + 1e-12;
  return w;
}

// Weighted sampling without replacement (exponential-keys scheme): the k
// items with the largest u^(1/w) keys.
std::vector<int> weighted_sample(Rng& rng, const rvec& w, int lo0, int width, int k) {
  std::vector<std::pair<double, int>> keys(width);
  for (int i = 0; i < width; ++i) {
    double u = rng.next_double();
    while (u <= 0.0) u = rng.next_double();
    keys[i] = {std::log(u) / w[lo0 + i], lo0 + i};
  }
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) out[i] = keys[i].second;
  std::sort(out.begin(), out.end());
  return out;
}

// Deviation by Hermitian power iteration on Gram - I for big supports;
// always a lower estimate, which keeps lower-bound semantics.
double deviation_estimate(const cmat& A, const std::vector<int>& cols0, Rng& rng) {
  const int k = static_cast<int>(cols0.size());
  if (k == 0) return 0.0;
  if (k <= 256) return spectral_deviation(A, cols0);
  cmat As(A.rows(), k);
  for (int i = 0; i < k; ++i) As.col(i) = A.col(cols0[i]);
  cmat G = As.adjoint() * As;
  G = 0.5 * (G + cmat(G.adjoint()));
  for (int i = 0; i < k; ++i) G(i, i) -= 1.0;
  cvec v(k);
  for (int i = 0; i < k; ++i) v[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  v /= v.norm();
  double lambda = 0.0;
  for (int it = 0; it < 48; ++it) {
    cvec u = G * v;
    const double norm = u.norm();
    if (norm == 0.0) return 0.0;
    lambda = norm;
    v = u / norm;
  }
  return lambda;
}

}  // namespace

double spectral_deviation(const cmat& A, const std::vector<int>& cols0) {
  const int k = static_cast<int>(cols0.size());
  if (k == 0) return 0.0;
  cmat As(A.rows(), k);
  for (int i = 0; i < k; ++i) As.col(i) = A.col(cols0[i]);
  cmat G = As.adjoint() * As;
  G = 0.5 * (G + cmat(G.adjoint()));
  Eigen::SelfAdjointEigenSolver<cmat> es(G, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  return std::max(lmax - 1.0, 1.0 - lmin);
}

std::vector<int> greedy_max_support(const cvec& v, const SparsityPattern& p, double tie_quantum) {
  require(v.size() >= p.dimension(), ErrorCode::DimensionMismatch,
          "vector shorter than the pattern range");
  // With a positive tie_quantum, magnitudes are bucketed at that relative
  // resolution so that analytically equal entries (differing only by
  // rounding, e.g. out of an SVD) tie deterministically by index.
  const double vmax = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  const double q = tie_quantum > 0.0 && vmax > 0.0 ? tie_quantum * vmax : 0.0;
  auto key = [&](int j0) { return q > 0.0 ? std::floor(std::abs(v[j0]) / q) : std::abs(v[j0]); };
  std::vector<int> support;
  std::vector<int> idx;
  for (int i = 1; i <= p.levels(); ++i) {
    idx.clear();
    for (int j = p.level_begin(i); j <= p.level_end(i); ++j) idx.push_back(j - 1);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      const double ma = key(a), mb = key(b);
      if (ma != mb) return ma > mb;
      return a < b;
    });
    for (int r = 0; r < p.budget(i); ++r) support.push_back(idx[r] + 1);
  }
  std::sort(support.begin(), support.end());
  return support;
}

CertificateReport ripl_exact(const cmat& A, const SparsityPattern& p, std::uint64_t cap) {
  return ripl_scan(A, p, cap, true);
}

CertificateReport ripl_exact_serial(const cmat& A, const SparsityPattern& p, std::uint64_t cap) {
  return ripl_scan(A, p, cap, false);
}

CertificateReport rip_exact(const cmat& A, int s, std::uint64_t cap) {
  const int n = static_cast<int>(A.cols());
  require(s >= 0 && s <= n, ErrorCode::ParameterOrder, "rip order must lie in 0..n");
  CertificateReport rep = ripl_exact(A, SparsityPattern({s}, {0, n}), cap);
  rep.kind = CertificateReport::Kind::Rip;
  return rep;
}

CertificateReport ripl_lower_bound(const cmat& A, const SparsityPattern& p, int budget,
                                   std::uint64_t seed) {
  require(budget >= 1, ErrorCode::ParameterOrder, "budget must be >= 1");
  require(p.dimension() <= A.cols(), ErrorCode::DimensionMismatch,
          "pattern extends past the matrix columns");
  const rvec lev = leverage_weights(A, p);

  BestSupport best;
  std::uint64_t work = 0;
  for (int b = 0; b < budget; ++b) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(b)));
    std::vector<int> cols;
    for (int i = 1; i <= p.levels(); ++i) {
      const auto picked =
          weighted_sample(rng, lev, p.level_begin(i) - 1, p.level_width(i), p.budget(i));
      cols.insert(cols.end(), picked.begin(), picked.end());
    }
    double dev = deviation_estimate(A, cols, rng);
    ++work;

    // greedy one-swap improvement, first-improvement policy
    int swaps_left = 128;
    bool improved = true;
    while (improved && swaps_left > 0) {
      improved = false;
      for (int i = 1; i <= p.levels() && swaps_left > 0; ++i) {
        for (int j = p.level_begin(i) - 1; j < p.level_end(i) && swaps_left > 0; ++j) {
          if (std::binary_search(cols.begin(), cols.end(), j)) continue;
          for (std::size_t pos = 0; pos < cols.size() && swaps_left > 0; ++pos) {
            if (cols[pos] < p.level_begin(i) - 1 || cols[pos] > p.level_end(i) - 1) continue;
            std::vector<int> cand = cols;
            cand[pos] = j;
            std::sort(cand.begin(), cand.end());
            --swaps_left;
            const double cdev = deviation_estimate(A, cand, rng);
            ++work;
            if (cdev > dev) {
              cols = std::move(cand);
              dev = cdev;
              improved = true;
              break;
            }
          }
        }
      }
    }
    BestSupport cand{dev, cols};
    if (cand.better_than(best)) best = std::move(cand);
  }

  CertificateReport rep;
  rep.kind = CertificateReport::Kind::RipLevels;
  rep.method = CertificateReport::Method::RandomizedSearch;
  rep.value = std::max(best.deviation, 0.0);
  rep.is_lower_bound = true;
  rep.witness_support = to_one_based(best.support);
  rep.work = work;
  return rep;
}

CertificateReport ripl_lower_bound(const SensingOperator& A, const SparsityPattern& p, int budget,
                                   std::uint64_t seed, std::int64_t materialize_cap) {
  return ripl_lower_bound(materialize(A, materialize_cap), p, budget, seed);
}

double recovery_threshold(const SparsityPattern& p) {
  const RatioConstant eta = ratio_constant(p);
  require(eta.finite(), ErrorCode::InfiniteRatio, "threshold needs a finite ratio constant");
  const double l = p.levels();
  const double root = std::sqrt(eta.value()) + 0.25;
  return 1.0 / std::sqrt(l * root * root + 1.0);
}

RecoveryCheck check_recovery_condition(const cmat& A, const SparsityPattern& p,
                                       std::uint64_t cap) {
  RecoveryCheck out;
  const RatioConstant eta = ratio_constant(p);
  if (!eta.finite()) {
    out.satisfied = false;
    out.certified = true;
    out.reason = "InfiniteRatio: some level budget is zero";
    return out;
  }
  if (p.dimension() < A.cols()) {
    out.satisfied = false;
    out.certified = true;
    out.reason = "pattern does not reach the last column";
    return out;
  }
  out.threshold = recovery_threshold(p);
  const SparsityPattern doubled = scale_pattern(p, 2);
  try {
    out.report = ripl_exact(A, doubled, cap);
    out.satisfied = out.report.value < out.threshold;
    out.certified = true;
    out.reason = out.satisfied ? "exact constant below threshold"
                               : "exact constant at or above threshold";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EnumerationTooLarge) throw;
    out.report = ripl_lower_bound(A, doubled, 64, 0);
    if (out.report.value >= out.threshold) {
      out.satisfied = false;
      out.certified = true;
      out.reason = "lower bound already at or above threshold";
    } else {
      out.satisfied = false;
      out.certified = false;
      out.reason = "enumeration infeasible and search inconclusive";
    }
  }
  return out;
}

CertificateReport kernel_exact_recovery_check(const cmat& A, const SparsityPattern& p, int trials,
                                              std::uint64_t seed) {
  require(p.dimension() <= A.cols(), ErrorCode::DimensionMismatch,
          "pattern extends past the matrix columns");
  Eigen::JacobiSVD<cmat> svd(A, Eigen::ComputeFullV);
  const double tol =
      1e-12 * (svd.singularValues().size() ? svd.singularValues()[0] : 0.0) *
      std::max(A.rows(), A.cols());
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++rank;
  const int kdim = static_cast<int>(A.cols()) - rank;

  CertificateReport rep;
  rep.kind = CertificateReport::Kind::KernelExactRecovery;

  if (kdim == 0) {
    rep.method = CertificateReport::Method::Analytic;
    rep.satisfied = true;
    rep.value = 0.0;
    rep.note = "trivial kernel";
    return rep;
  }

  auto check_vector = [&](const cvec& h) {
    const auto support = greedy_max_support(h, p, 1e-9);
    double on = 0.0;
    for (int j : support) on += std::abs(h[j - 1]);
    const double total = h.cwiseAbs().sum();
    const double off = total - on;
    return std::tuple<double, double, std::vector<int>>(on, off, support);
  };

  if (kdim == 1) {
    const cvec h = svd.matrixV().col(A.cols() - 1);
    auto [on, off, support] = check_vector(h);
    rep.method = CertificateReport::Method::ExactEnumeration;
    rep.value = off > 0.0 ? on / off : std::numeric_limits<double>::infinity();
    rep.satisfied = on < off;
    rep.work = 1;
    if (!rep.satisfied) {
      rep.witness_support = support;
      rep.witness_vector = h;
    }
    return rep;
  }

  // KernelTooLarge: fall back to randomized falsification over the kernel.
  rep.method = CertificateReport::Method::RandomizedSearch;
  rep.note = "KernelTooLarge: kernel dimension " + std::to_string(kdim) +
             ", randomized falsification only";
  const cmat kernel = svd.matrixV().rightCols(kdim);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    cvec coeff(kdim);
    for (int i = 0; i < kdim; ++i)
      coeff[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    const cvec h = kernel * coeff;
    auto [on, off, support] = check_vector(h);
    const double ratio = off > 0.0 ? on / off : std::numeric_limits<double>::infinity();
    worst = std::max(worst, ratio);
    if (on >= off) {
      rep.value = ratio;
      rep.satisfied = false;
      rep.witness_support = support;
      rep.witness_vector = h;
      rep.work = static_cast<std::uint64_t>(t) + 1;
      return rep;
    }
  }
  rep.value = worst;
  rep.satisfied = true;  // not falsified; not a proof
  rep.work = static_cast<std::uint64_t>(trials);
  return rep;
}

namespace {

CertificateReport nsp_falsify_impl(const SensingOperator& U, const SparsityPattern& p, double rho,
                                   double tau, int trials, std::uint64_t seed,
                                   const std::optional<cmat>& kernel_basis, bool parallel) {
  (void)parallel;
  require(trials >= 1, ErrorCode::ParameterOrder, "trials must be >= 1");
  require(rho > 0.0 && rho < 1.0, ErrorCode::RhoOutOfRange, "rho must lie in (0,1)");
  require(tau > 0.0, ErrorCode::RhoOutOfRange, "tau must be positive");
  require(p.dimension() <= U.n_in(), ErrorCode::DimensionMismatch,
          "pattern extends past the operator input");

  const int n = U.n_in();
  const double sqrt_st = std::sqrt(static_cast<double>(num_elements(p)));
  const int kdim = kernel_basis ? static_cast<int>(kernel_basis->cols()) : 0;

  struct TrialResult {
    bool violated = false;
    double margin = -std::numeric_limits<double>::infinity();
  };

  auto run_trial = [&](int t, cvec& v_out, std::vector<int>& support_out) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    cvec v(n);
    if (t < kdim) {
      v = kernel_basis->col(t);  // pure kernel directions first
    } else {
      const int mode = kdim > 0 ? t % 3 : 0;
      for (int j = 0; j < n; ++j)
        v[j] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
      if (mode == 1 || mode == 2) {
        cvec coeff(kdim);
        for (int i = 0; i < kdim; ++i)
          coeff[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
        const cvec k = (*kernel_basis) * coeff;
        if (mode == 2)
          v = k;  // exact kernel direction
        else
          v = k + 0.05 * k.norm() / v.norm() * v;  // kernel direction plus small noise
      }
    }
    const auto support = greedy_max_support(v, p);
    double on2 = 0.0, total1 = v.cwiseAbs().sum(), on1 = 0.0;
    for (int j : support) {
      on2 += std::norm(v[j - 1]);
      on1 += std::abs(v[j - 1]);
    }
    const double lhs = std::sqrt(on2);
    const double rhs = rho / sqrt_st * (total1 - on1) + tau * U.forward(v).norm();
    TrialResult r;
    r.margin = lhs - rhs;
    r.violated = lhs > rhs + 1e-10 * (1.0 + rhs);
    if (r.violated) {
      v_out = v;
      support_out = support;
    }
    return r;
  };

  CertificateReport rep;
  rep.kind = CertificateReport::Kind::NspL2;
  rep.method = CertificateReport::Method::RandomizedSearch;

  double max_margin = -std::numeric_limits<double>::infinity();
  int first_violation = -1;
  cvec witness_v;
  std::vector<int> witness_s;

  const int chunk = 2048;
  for (int base = 0; base < trials && first_violation < 0; base += chunk) {
    const int end = std::min(trials, base + chunk);
    int local_first = -1;
    cvec local_v;
    std::vector<int> local_s;
    double local_margin = max_margin;
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
    {
      int my_first = -1;
      cvec my_v;
      std::vector<int> my_s;
      double my_margin = -std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16) nowait
#endif
      for (int t = base; t < end; ++t) {
        cvec v;
        std::vector<int> s;
        const TrialResult r = run_trial(t, v, s);
        my_margin = std::max(my_margin, r.margin);
        if (r.violated && (my_first < 0 || t < my_first)) {
          my_first = t;
          my_v = std::move(v);
          my_s = std::move(s);
        }
      }
#ifdef _OPENMP
#pragma omp critical(nsp_merge)
#endif
      {
        local_margin = std::max(local_margin, my_margin);
        if (my_first >= 0 && (local_first < 0 || my_first < local_first)) {
          local_first = my_first;
          local_v = std::move(my_v);
          local_s = std::move(my_s);
        }
      }
    }
    max_margin = local_margin;
    if (local_first >= 0) {
      first_violation = local_first;
      witness_v = std::move(local_v);
      witness_s = std::move(local_s);
    }
  }

  rep.value = max_margin;
  if (first_violation >= 0) {
    rep.satisfied = false;
    rep.witness_support = witness_s;
    rep.witness_vector = witness_v;
    rep.work = static_cast<std::uint64_t>(first_violation) + 1;
    rep.note = "violation at trial " + std::to_string(first_violation);
  } else {
    rep.satisfied = true;
    rep.work = static_cast<std::uint64_t>(trials);
    rep.note = "no violation found";
  }
  return rep;
}

}  // namespace

CertificateReport nsp_falsify(const SensingOperator& U, const SparsityPattern& p, double rho,
                              double tau, int trials, std::uint64_t seed,
                              const std::optional<cmat>& kernel_basis) {
  return nsp_falsify_impl(U, p, rho, tau, trials, seed, kernel_basis, true);
}

CertificateReport nsp_falsify_serial(const SensingOperator& U, const SparsityPattern& p,
                                     double rho, double tau, int trials, std::uint64_t seed,
                                     const std::optional<cmat>& kernel_basis) {
  return nsp_falsify_impl(U, p, rho, tau, trials, seed, kernel_basis, false);
}

ErrorBounds error_bounds(const NspConstants& nsp, const SparsityPattern& p, double sigma,
                         double eps) {
  require(nsp.rho > 0.0 && nsp.rho < 1.0, ErrorCode::RhoOutOfRange, "rho must lie in (0,1)");
  require(nsp.tau > 0.0, ErrorCode::RhoOutOfRange, "tau must be positive");
  require(sigma >= 0.0 && eps >= 0.0, ErrorCode::ParameterOrder,
          "sigma and eps must be non-negative");
  const RatioConstant eta = ratio_constant(p);
  require(eta.finite(), ErrorCode::InfiniteRatio, "error bounds need a finite ratio constant");

  const double rho = nsp.rho, tau = nsp.tau;
  ErrorBounds b;
  b.A1 = (2.0 + 2.0 * rho) / (1.0 - rho);
  b.C1 = 4.0 * tau / (1.0 - rho);
  b.A2 = (2.0 * rho + 2.0 * rho * rho) / (1.0 - rho);
  b.B2 = (2.0 * std::sqrt(rho) + 1.0) * (1.0 + rho) / (1.0 - rho);
  b.C2 = (rho * tau + tau) / (1.0 - rho);
  b.D2 = (4.0 * std::sqrt(rho) * tau + 3.0 * tau - rho * tau) / (2.0 - 2.0 * rho);

  const double st = static_cast<double>(num_elements(p));
  const double leta = std::pow(p.levels() * eta.value(), 0.25);
  b.bound_l1 = b.A1 * sigma + b.C1 * eps * std::sqrt(st);
  b.bound_l2 = sigma / std::sqrt(st) * (b.A2 + b.B2 * leta) + 2.0 * eps * (b.C2 + b.D2 * leta);
  return b;
}

std::pair<double, double> lemma_norm_bound(const rvec& v) {
  const int s = static_cast<int>(v.size());
  require(s >= 1, ErrorCode::DimensionMismatch, "empty vector");
  for (int i = 0; i + 1 < s; ++i)
    require(v[i] >= v[i + 1], ErrorCode::NotSorted, "vector must be non-increasing");
  require(v[s - 1] >= 0.0, ErrorCode::NotSorted, "vector must be non-negative");
  const double lhs = v.norm();
  const double rhs = v.sum() / std::sqrt(static_cast<double>(s)) +
                     std::sqrt(static_cast<double>(s)) / 4.0 * (v[0] - v[s - 1]);
  return {lhs, rhs};
}

}  // namespace ripl
