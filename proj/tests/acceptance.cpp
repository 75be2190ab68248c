// Acceptance suite: one line per criterion, strict tolerances pinned in code.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ripl/certify.hpp"
#include "ripl/counterexamples.hpp"
#include "ripl/fliptest.hpp"
#include "ripl/operators.hpp"
#include "ripl/oracle.hpp"
#include "ripl/rng.hpp"
#include "ripl/solver.hpp"

using namespace ripl;

namespace {

struct Criterion {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

cmat random_gaussian(Rng& rng, int m, int n, double scale) {
  cmat A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      A(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian()) * scale;
  return A;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

Criterion criterion1_threshold() {
  Criterion c;
  const double got = recovery_threshold(SparsityPattern({1}, {0, 2}));
  const double expect = 4.0 / std::sqrt(41.0);
  c.require(std::abs(got - expect) <= 1e-12, "threshold differs from 4/sqrt(41)");
  c.note("|got - 4/sqrt(41)| = " + fmt(std::abs(got - expect)));
  return c;
}

Criterion criterion2_covering() {
  Criterion c;
  auto [a, b] = covering_counterexamples();

  for (const auto* inst : {&a, &b}) {
    const auto cert = ripl_exact(inst->U.cast<std::complex<double>>(), inst->pattern);
    c.require(cert.value <= 1e-12, inst->name + ": constant not zero");
    const auto oracle = oracle_bp(inst->U, inst->U * inst->x1);
    c.require((oracle.x - inst->z2).norm() == 0.0, inst->name + ": oracle minimizer mismatch");
    c.require(oracle.unique, inst->name + ": oracle lost uniqueness");
    const auto solve = solve_bp(dense_operator(inst->U.cast<std::complex<double>>()),
                                (inst->U * inst->x1).cast<std::complex<double>>());
    c.require((solve.x - inst->z2.cast<std::complex<double>>()).norm() <= 1e-6,
              inst->name + ": iterative solver disagrees");
  }
  return c;
}

Criterion run_dependence_instance(const CounterexampleInstance& inst, double delta_cap) {
  Criterion c;
  c.require((inst.U * inst.kernel).norm() < 1e-10, "kernel residual too large");

  const long long C = inst.params.C;
  c.require(inst.z1.cwiseAbs().sum() == static_cast<double>(C * C + C), "||z1||_1 wrong");
  c.require(inst.z2.cwiseAbs().sum() == static_cast<double>(C * C - C), "||z2||_1 wrong");

  const cmat Uc = inst.U.cast<std::complex<double>>();
  const auto exact = ripl_exact(Uc, inst.pattern, 1000000);
  const auto lower = ripl_lower_bound(Uc, inst.pattern, 32, 7);
  c.require(lower.value <= exact.value, "lower bound exceeds the exact constant");
  c.require(exact.value <= delta_cap + 1e-9, "exact constant exceeds the analytic cap");
  c.note("delta = " + fmt(exact.value) + " <= " + fmt(delta_cap) + " over " +
         std::to_string(exact.work) + " supports");

  const auto kr = kernel_exact_recovery_check(Uc, inst.pattern);
  c.require(!kr.satisfied, "kernel recovery check unexpectedly passed");
  c.require(kr.witness_support.has_value(), "no witness support reported");
  if (kr.witness_support) {
    std::vector<int> z1_support;
    for (int j = 0; j < inst.z1.size(); ++j)
      if (inst.z1[j] != 0.0) z1_support.push_back(j + 1);
    c.require(*kr.witness_support == z1_support, "witness is not the support of z1");
  }
  return c;
}

Criterion criterion3_eta_dependence() {
  const auto inst = construct_eta_dependence(1, 10);
  Criterion c = run_dependence_instance(inst, 2.0 / 11.0);
  const auto eta = ratio_constant(inst.pattern);
  c.require(eta.value() == 100.0, "ratio constant is not C^2");
  return c;
}

Criterion criterion4_l_dependence() {
  const auto inst = construct_l_dependence(1, 4);
  Criterion c = run_dependence_instance(inst, 2.0 / 5.0);
  c.require(inst.pattern.levels() == 17, "level count is not C^2+1");
  c.require(ratio_constant(inst.pattern).value() == 1.0, "ratio constant is not one");
  return c;
}

Criterion criterion5_sharpness() {
  Criterion c;
  VerifyOptions opts;
  opts.nsp_trials = 100000;
  opts.nsp_halved_rho_trials = 1000;
  opts.lower_bound_budget = 8;
  for (int C : {8, 16, 32}) {
    const auto inst = construct_l2_sharpness(1, C, 0.5, SharpnessVariant::Eta);
    const auto rep = verify(inst, opts);
    for (const auto& claim : rep.claims)
      c.require(claim.pass, "C=" + std::to_string(C) + " claim '" + claim.name + "' failed (" +
                                fmt(claim.measured) + " vs " + fmt(claim.expected) + ")");

    const auto approx = best_sm_approx(inst.z1.cast<std::complex<double>>(), inst.pattern);
    const double ratio =
        inst.z1.norm() * std::sqrt(double(num_elements(inst.pattern))) / approx.sigma_l1;
    const double floor_val = std::sqrt(0.5 * C / 3.0);  // sqrt(rho sqrt(eta) / 3)
    c.require(ratio >= 0.99 * floor_val, "C=" + std::to_string(C) + " sharpness ratio too small");
    if (C == 32) c.note("ratio(C=32) = " + fmt(ratio) + " >= " + fmt(0.99 * floor_val));
  }
  return c;
}

Criterion criterion6_block_diagonality() {
  Criterion c;
  const int n = 64;
  const int levels = 6;
  const auto bands = wavelet_boundaries(n, levels);

  const cmat had = materialize(compose(wht(n), idwt(WaveletSpec{WaveletFamily::Haar, 1, levels}, n)));
  double max_off = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool inside = false;
      for (std::size_t b = 0; b + 1 < bands.size(); ++b)
        inside |= i >= bands[b] && i < bands[b + 1] && j >= bands[b] && j < bands[b + 1];
      if (!inside) max_off = std::max(max_off, std::abs(had(i, j)));
    }
  c.require(max_off < 1e-12, "Hadamard-Haar off-block entry " + fmt(max_off));
  c.note("max off-block (wht.ihaar) = " + fmt(max_off));

  const cmat four = materialize(
      compose(dft(n, FreqOrder::Centered), idwt(WaveletSpec{WaveletFamily::Daubechies, 2, levels}, n)));
  double on = 0.0;
  for (std::size_t b = 0; b + 1 < bands.size(); ++b)
    on += four.block(bands[b], bands[b], bands[b + 1] - bands[b], bands[b + 1] - bands[b])
              .squaredNorm();
  const double off_fraction = (four.squaredNorm() - on) / four.squaredNorm();
  c.require(off_fraction < 0.5, "Fourier-db2 off-block energy " + fmt(off_fraction));
  c.note("off-block energy (dft.idb2) = " + fmt(off_fraction));
  return c;
}

// Dyadic frequency bands of the centered-order DFT are the contiguous
// intervals (M[j-1], M[j]].
std::vector<Band> centered_dyadic_bands(const std::vector<int>& M) {
  std::vector<Band> bands;
  for (std::size_t j = 0; j + 1 < M.size(); ++j) bands.push_back(Band{M[j] + 1, M[j + 1]});
  return bands;
}

Criterion criterion7_flip_signature() {
  Criterion c;
  const int n = 256, levels = 7;
  const auto M = wavelet_boundaries(n, levels);  // 0,2,4,8,16,32,64,128,256
  const WaveletSpec haar{WaveletFamily::Haar, 1, levels};

  // 100% of the two coarsest bands, 15% of the rest
  const auto bands = centered_dyadic_bands(M);
  std::vector<int> m(bands.size());
  for (std::size_t j = 0; j < bands.size(); ++j) {
    const int w = bands[j].width();
    m[j] = j < 2 ? w : std::max(1, static_cast<int>(std::lround(0.15 * w)));
  }
  const auto scheme = multilevel_scheme(bands, m, 2024);
  const auto U = subsample(compose(dft(n, FreqOrder::Centered), idwt(haar, n)), scheme);

  // exactly pattern-sparse ground truth, budgets thinned with the sampling
  const SparsityPattern p({2, 2, 1, 1, 2, 3, 4, 5}, M);
  Rng rng(99);
  cvec x = cvec::Zero(n);
  for (int lvl = 1; lvl <= p.levels(); ++lvl) {
    const auto idx = rng.sample_without_replacement(p.level_begin(lvl) - 1, p.level_width(lvl),
                                                    p.budget(lvl));
    for (int j : idx) {
      const double phase = rng.next_double() * 2.0 * std::numbers::pi;
      x[j] = std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }

  SolveOptions opts;
  const auto flip = run_flip_test(U, x, Permutation::global_reverse(n), opts);
  c.require(flip.err_original_l2 < 1e-4,
            "original recovery error " + fmt(flip.err_original_l2));
  c.require(flip.err_flipped_l2 >= 10.0 * flip.err_original_l2,
            "global flip only " + fmt(flip.err_flipped_l2 / std::max(1e-300, flip.err_original_l2)) +
                "x worse");
  c.note("orig = " + fmt(flip.err_original_l2) + ", global flip = " + fmt(flip.err_flipped_l2));

  const auto sweep = permutation_sweep(U, x, p, 100, 515, opts);
  c.require(sweep.summary.stddev_err < 0.2 * sweep.summary.mean_err,
            "sweep stddev " + fmt(sweep.summary.stddev_err) + " vs mean " +
                fmt(sweep.summary.mean_err));
  c.note("sweep mean = " + fmt(sweep.summary.mean_err) + ", stddev = " +
         fmt(sweep.summary.stddev_err) + ", max = " + fmt(sweep.summary.max_err));
  return c;
}

Criterion criterion8_generalized_flip() {
  Criterion c;
  const int n = 256, levels = 6;
  const auto M = wavelet_boundaries(n, levels);  // 0,4,8,16,32,64,128,256
  const WaveletSpec db3{WaveletFamily::Daubechies, 3, levels};

  // the piecewise test signal with two jumps
  cvec f(n);
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n;
    double v = 0.0;
    if (t <= 0.3) v = std::sin(t);
    else if (t <= 0.8) v = -10.0 * std::cos(t);
    else v = 9.0;
    f[i] = v;
  }
  const cvec w = wavelet_forward(f, db3);

  const auto bands = centered_dyadic_bands(M);
  std::vector<int> m(bands.size());
  for (std::size_t j = 0; j < bands.size(); ++j) {
    const int width = bands[j].width();
    m[j] = j < 3 ? width : std::max(2, static_cast<int>(std::lround(0.25 * width)));
  }
  const auto U = subsample(compose(dft(n, FreqOrder::Centered), idwt(db3, n)),
                           multilevel_scheme(bands, m, 33));

  SparsityPattern p(std::vector<int>(M.size() - 1, 0), M);
  {
    std::vector<int> full(M.size() - 1);
    for (std::size_t i = 0; i + 1 < M.size(); ++i) full[i] = M[i + 1] - M[i];
    p = SparsityPattern(full, M);
  }

  GeneralizedFlipConfig cfg;  // weights 2^i per level, default mover
  const auto rep = generalized_flip_test(U, w, Weights::per_level_pow2(p), p, cfg);
  c.require(rep.flip.err_original_l2 < 1e-4,
            "binarized signal not recovered: " + fmt(rep.flip.err_original_l2));
  c.require(rep.flip.err_flipped_l2 > 0.1,
            "moved vector unexpectedly recovered: " + fmt(rep.flip.err_flipped_l2));
  c.note("w1 err = " + fmt(rep.flip.err_original_l2) + ", w2 err = " +
         fmt(rep.flip.err_flipped_l2) + ", mover level " + std::to_string(rep.mover_level) +
         " count " + std::to_string(rep.mover_count));
  return c;
}

Criterion criterion9_oracle_equivalence() {
  Criterion c;
  Rng rng(1912);
  int solver_checked = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 6 + static_cast<int>(rng.next_below(7));  // 6..12
    const int m = n / 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1 - n / 2 + 1)));
    rmat U(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) U(i, j) = rng.next_gaussian();
    rvec x0 = rvec::Zero(n);
    for (int k = 0; k < std::max(1, m / 2); ++k)
      x0[rng.next_below(static_cast<std::uint64_t>(n))] = rng.next_gaussian();
    const rvec y = U * x0;

    const auto exact = oracle_bp(U, y);
    const auto iter = solve_bp(dense_operator(U.cast<std::complex<double>>()),
                               y.cast<std::complex<double>>());
    const double rel = std::abs(exact.objective - iter.objective) / (1.0 + exact.objective);
    c.require(iter.converged, "solver did not converge on instance " + std::to_string(t));
    c.require(rel <= 1e-5, "objective mismatch " + fmt(rel) + " on instance " + std::to_string(t));
    ++solver_checked;
  }
  c.note(std::to_string(solver_checked) + " solver/oracle matches");

  for (int t = 0; t < 20; ++t) {
    const cmat A = random_gaussian(rng, 8, 16, 1.0 / std::sqrt(8.0));
    const auto rep = rip_exact(A, 2);
    // independent closed-form scan over index pairs
    double best = -1.0;
    std::vector<int> witness;
    for (int a0 = 0; a0 < 16; ++a0)
      for (int b0 = a0 + 1; b0 < 16; ++b0) {
        const double paa = A.col(a0).squaredNorm();
        const double pbb = A.col(b0).squaredNorm();
        const double pab2 = std::norm(A.col(a0).dot(A.col(b0)));
        const double tr = paa + pbb;
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - (paa * pbb - pab2)));
        const double dev = std::max(tr / 2.0 + disc - 1.0, 1.0 - (tr / 2.0 - disc));
        if (dev > best) {
          best = dev;
          witness = {a0 + 1, b0 + 1};
        }
      }
    c.require(std::abs(rep.value - best) <= 1e-10, "scan deviation differs " + fmt(std::abs(rep.value - best)));
    c.require(*rep.witness_support == witness, "scan witness differs on trial " + std::to_string(t));
  }
  return c;
}

Criterion criterion10_inequalities() {
  Criterion c;
  Rng rng(3005);

  // sorted-vector norm inequality
  for (int t = 0; t < 1000; ++t) {
    const int s = 1 + static_cast<int>(rng.next_below(16));
    rvec v(s);
    for (int i = 0; i < s; ++i) v[i] = std::abs(rng.next_gaussian());
    std::sort(v.data(), v.data() + s, std::greater<>());
    const auto [lhs, rhs] = lemma_norm_bound(v);
    c.require(lhs <= rhs + 1e-12, "norm inequality violated at trial " + std::to_string(t));
  }

  // inner-product bound on instances with known order-2s constants
  {
    const auto inst = construct_eta_dependence(1, 4);
    const cmat U = inst.U.cast<std::complex<double>>();
    const auto doubled = scale_pattern(inst.pattern, 2);
    const double delta2 = ripl_exact(U, doubled).value;
    int done = 0;
    for (int t = 0; done < 500 && t < 2000; ++t) {
      cvec x = cvec::Zero(U.cols()), y = cvec::Zero(U.cols());
      Rng sub(Rng::derive(3005, t));
      for (int lvl = 1; lvl <= inst.pattern.levels(); ++lvl) {
        const int lo = inst.pattern.level_begin(lvl) - 1;
        const int width = inst.pattern.level_width(lvl);
        const int s = inst.pattern.budget(lvl);
        if (2 * s <= width) {
          const auto idx = sub.sample_without_replacement(lo, width, 2 * s);
          for (int i = 0; i < s; ++i) {
            x[idx[i]] = std::complex<double>(sub.next_gaussian(), sub.next_gaussian());
            y[idx[s + i]] = std::complex<double>(sub.next_gaussian(), sub.next_gaussian());
          }
        } else {
          // same support, orthogonalized values keep both pattern-sparse
          const auto idx = sub.sample_without_replacement(lo, width, s);
          for (int j : idx) {
            x[j] = std::complex<double>(sub.next_gaussian(), sub.next_gaussian());
            y[j] = std::complex<double>(sub.next_gaussian(), sub.next_gaussian());
          }
        }
      }
      cvec yo = y - x * (x.dot(y) / x.squaredNorm());
      if (x.norm() == 0.0 || yo.norm() < 1e-12) continue;
      ++done;
      const double t_ratio = (U * x).squaredNorm() / x.squaredNorm() - 1.0;
      const double cap =
          std::sqrt(std::max(0.0, delta2 * delta2 - t_ratio * t_ratio)) * x.norm() * yo.norm();
      c.require(std::abs((U * x).dot(U * yo)) <= cap + 1e-9,
                "inner-product bound violated at trial " + std::to_string(t));
    }
    c.require(done == 500, "only " + std::to_string(done) + " orthogonal pairs generated");
  }

  // reconstruction error bounds dominate measured errors with injected noise
  {
    const auto inst = construct_l2_sharpness(1, 8, 0.5, SharpnessVariant::Eta);
    const auto U = dense_operator(inst.U.cast<std::complex<double>>());
    const int n = inst.U.cols();
    const NspConstants nsp{inst.params.rho, inst.params.tau};
    SolveOptions opts;

    for (double eps : {0.0, 0.01, 0.1}) {
      for (int t = 0; t < 20; ++t) {
        Rng sub(Rng::derive(77000 + static_cast<int>(eps * 1000), t));
        cvec x = cvec::Zero(n);
        for (int lvl = 1; lvl <= inst.pattern.levels(); ++lvl) {
          const auto idx = sub.sample_without_replacement(inst.pattern.level_begin(lvl) - 1,
                                                          inst.pattern.level_width(lvl),
                                                          inst.pattern.budget(lvl));
          for (int j : idx) x[j] = std::complex<double>(sub.next_gaussian(), sub.next_gaussian());
        }
        for (int j = 0; j < n; ++j)  // compressible tail
          x[j] += 0.01 * std::complex<double>(sub.next_gaussian(), sub.next_gaussian());

        cvec noise = cvec::Zero(U.n_out());
        if (eps > 0) {
          for (int i = 0; i < noise.size(); ++i)
            noise[i] = std::complex<double>(sub.next_gaussian(), sub.next_gaussian());
          noise *= eps / noise.norm();
        }
        const cvec y = U.forward(x) + noise;
        const auto res = solve_bpdn(U, y, eps, opts);

        const double sigma = best_sm_approx(x, inst.pattern).sigma_l1;
        const auto bounds = error_bounds(nsp, inst.pattern, sigma, eps);
        const double err1 = (res.x - x).cwiseAbs().sum();
        const double err2 = (res.x - x).norm();
        c.require(err1 <= bounds.bound_l1 + 1e-6,
                  "l1 bound violated (eps=" + fmt(eps) + "): " + fmt(err1) + " > " +
                      fmt(bounds.bound_l1));
        c.require(err2 <= bounds.bound_l2 + 1e-6,
                  "l2 bound violated (eps=" + fmt(eps) + "): " + fmt(err2) + " > " +
                      fmt(bounds.bound_l2));
      }
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {1, "recovery threshold constant", 0.001, criterion1_threshold},
      {2, "covering counterexamples", 1.0, criterion2_covering},
      {3, "ratio-dependence construction (C=10)", 120.0, criterion3_eta_dependence},
      {4, "level-dependence construction (C=4)", 30.0, criterion4_l_dependence},
      {5, "l2 sharpness family (C=8,16,32)", 300.0, criterion5_sharpness},
      {6, "block-diagonal compositions", 10.0, criterion6_block_diagonality},
      {7, "flip-test signature at n=256", 600.0, criterion7_flip_signature},
      {8, "generalized flip test", 300.0, criterion8_generalized_flip},
      {9, "oracle equivalence", 300.0, criterion9_oracle_equivalence},
      {10, "inequality property suites", 600.0, criterion10_inequalities},
  };

  int failures = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.pass = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > e.limit_seconds) {
      c.pass = false;
      c.detail += (c.detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    std::printf("criterion %2d: %s  %s (%.2fs < %gs)%s%s\n", e.id, c.pass ? "PASS" : "FAIL",
                e.name, elapsed, e.limit_seconds, c.detail.empty() ? "" : " -- ",
                c.detail.c_str());
    std::fflush(stdout);
    failures += c.pass ? 0 : 1;
  }
  std::printf("SUMMARY: %zu/%zu criteria pass\n", entries.size() - failures, entries.size());
  return failures;
}
