#include "ripl/fliptest.hpp"

#include <algorithm>
#include <cmath>

#include "ripl/rng.hpp"

namespace ripl {

Permutation Permutation::identity(int n) {
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) map[i] = i;
  return Permutation(Kind::Identity, std::move(map), 0);
}

Permutation Permutation::global_reverse(int n) {
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) map[i] = n - 1 - i;
  return Permutation(Kind::GlobalReverse, std::move(map), 0);
}

Permutation Permutation::level_reverse(const SparsityPattern& p) {
  std::vector<int> map(p.dimension());
  for (int lvl = 1; lvl <= p.levels(); ++lvl) {
    const int lo = p.level_begin(lvl) - 1, hi = p.level_end(lvl) - 1;
    for (int i = lo; i <= hi; ++i) map[i] = hi - (i - lo);
  }
  return Permutation(Kind::LevelReverse, std::move(map), 0);
}

Permutation Permutation::level_random(const SparsityPattern& p, std::uint64_t seed) {
  std::vector<int> map(p.dimension());
  Rng rng(seed);
  for (int lvl = 1; lvl <= p.levels(); ++lvl) {
    const int lo = p.level_begin(lvl) - 1;
    const int w = p.level_width(lvl);
    std::vector<int> idx(w);
    for (int i = 0; i < w; ++i) idx[i] = lo + i;
    for (int i = w - 1; i > 0; --i)
      std::swap(idx[i], idx[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    for (int i = 0; i < w; ++i) map[lo + i] = idx[i];
  }
  return Permutation(Kind::LevelRandom, std::move(map), seed);
}

Permutation Permutation::custom(std::vector<int> map) {
  std::vector<char> seen(map.size(), 0);
  for (int v : map) {
    require(v >= 0 && v < static_cast<int>(map.size()) && !seen[v], ErrorCode::IndexOutOfRange,
            "custom permutation must be a bijection");
    seen[v] = 1;
  }
  return Permutation(Kind::Custom, std::move(map), 0);
}

cvec Permutation::apply(const cvec& x) const {
  require(static_cast<int>(x.size()) == size(), ErrorCode::DimensionMismatch,
          "permutation size mismatch");
  cvec y(x.size());
  for (int i = 0; i < size(); ++i) y[i] = x[map_[i]];
  return y;
}

cvec Permutation::apply_inverse(const cvec& y) const {
  require(static_cast<int>(y.size()) == size(), ErrorCode::DimensionMismatch,
          "permutation size mismatch");
  cvec x(y.size());
  for (int i = 0; i < size(); ++i) x[map_[i]] = y[i];
  return x;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int i = 0; i < size(); ++i) inv[map_[i]] = i;
  return Permutation(kind_, std::move(inv), seed_);
}

bool Permutation::preserves_levels(const SparsityPattern& p) const {
  if (p.dimension() != size()) return false;
  for (int i = 0; i < size(); ++i)
    if (p.level_of(i + 1) != p.level_of(map_[i] + 1)) return false;
  return true;
}

std::string Permutation::kind_name() const {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::GlobalReverse: return "global-reverse";
    case Kind::LevelReverse: return "level-reverse";
    case Kind::LevelRandom: return "level-random";
    case Kind::Custom: return "custom";
  }
  return "?";
}

namespace {

double rel_err_l2(const cvec& truth, const cvec& est) {
  const double denom = truth.norm();
  return denom > 0 ? (truth - est).norm() / denom : (truth - est).norm();
}

double rel_err_l1(const cvec& truth, const cvec& est) {
  const double denom = truth.cwiseAbs().sum();
  const double num = (truth - est).cwiseAbs().sum();
  return denom > 0 ? num / denom : num;
}

}  // namespace

FlipReport run_flip_test(const SensingOperator& U, const cvec& x1, const Permutation& perm,
                         const SolveOptions& opts, double eps) {
  require(static_cast<int>(x1.size()) == U.n_in() && perm.size() == U.n_in(),
          ErrorCode::DimensionMismatch, "flip test dimensions are inconsistent");

  const cvec y1 = U.forward(x1);
  const SolveResult r1 = solve_bpdn(U, y1, eps, opts);

  const cvec x2 = perm.apply(x1);
  const cvec y2 = U.forward(x2);
  const SolveResult r2 = solve_bpdn(U, y2, eps, opts);
  const cvec unflipped = perm.apply_inverse(r2.x);

  FlipReport rep;
  rep.err_original_l1 = rel_err_l1(x1, r1.x);
  rep.err_original_l2 = rel_err_l2(x1, r1.x);
  rep.err_flipped_l1 = rel_err_l1(x1, unflipped);
  rep.err_flipped_l2 = rel_err_l2(x1, unflipped);
  rep.permutation_kind = perm.kind_name();
  rep.permutation_seed = perm.seed();
  rep.iterations_original = r1.iterations;
  rep.iterations_flipped = r2.iterations;
  rep.converged_original = r1.converged;
  rep.converged_flipped = r2.converged;
  return rep;
}

SweepResult permutation_sweep(const SensingOperator& U, const cvec& x1, const SparsityPattern& p,
                              int count, std::uint64_t seed, const SolveOptions& opts,
                              double eps) {
  require(count >= 1, ErrorCode::ParameterOrder, "sweep count must be >= 1");
  SweepResult out;
  out.reports.resize(count);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (int i = 0; i < count; ++i) {
    const std::uint64_t perm_seed = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const Permutation q = Permutation::level_random(p, perm_seed);
    FlipReport rep = run_flip_test(U, x1, q, opts, eps);
    rep.permutation_index = i;
    out.reports[i] = std::move(rep);
  }

  SweepSummary& s = out.summary;
  s.count = count;
  s.max_err = out.reports[0].err_flipped_l2;
  s.min_err = s.max_err;
  double sum = 0.0, sumsq = 0.0;
  for (const auto& r : out.reports) {
    s.max_err = std::max(s.max_err, r.err_flipped_l2);
    s.min_err = std::min(s.min_err, r.err_flipped_l2);
    sum += r.err_flipped_l2;
    sumsq += r.err_flipped_l2 * r.err_flipped_l2;
  }
  s.mean_err = sum / count;
  const double var = std::max(0.0, sumsq / count - s.mean_err * s.mean_err);
  s.stddev_err = std::sqrt(var);
  return out;
}

GeneralizedFlipReport generalized_flip_test(const SensingOperator& U, const cvec& w,
                                            const Weights& omega, const SparsityPattern& p,
                                            const GeneralizedFlipConfig& config,
                                            const SolveOptions& opts, double eps) {
  require(static_cast<int>(w.size()) == U.n_in(), ErrorCode::DimensionMismatch,
          "signal length does not match the operator");
  require(omega.size() == U.n_in(), ErrorCode::LengthMismatch,
          "one weight per coefficient is required");
  require(p.dimension() == U.n_in(), ErrorCode::DimensionMismatch,
          "pattern does not span the coefficient space");

  // Step 1: thresholds, smallest first, until the thresholded vector is
  // exactly recovered (verified by a solve).
  std::vector<double> thresholds = config.thresholds;
  if (thresholds.empty()) {
    const double top = w.cwiseAbs().maxCoeff();
    for (double f : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 3e-1}) thresholds.push_back(f * top);
  }
  cvec thresholded;
  double used = -1.0;
  for (double t : thresholds) {
    cvec wt = w;
    for (int j = 0; j < wt.size(); ++j)
      if (std::abs(wt[j]) < t) wt[j] = 0.0;
    if (wt.norm() == 0.0) continue;
    const SolveResult r = solve_bpdn(U, U.forward(wt), eps, opts);
    if (rel_err_l2(wt, r.x) <= config.recovered_tol) {
      thresholded = wt;
      used = t;
      break;
    }
  }
  require(used >= 0.0, ErrorCode::Infeasible,
          "no threshold in the sweep produced an exactly recovered vector");

  // Step 2: binarize the surviving support.
  cvec w1 = cvec::Zero(w.size());
  for (int j = 0; j < w.size(); ++j)
    if (thresholded[j] != std::complex<double>(0.0, 0.0)) w1[j] = 1.0;

  // Step 3: minimal weighted budget for which w1 qualifies as weighted sparse.
  const double budget = weighted_norms(w1, omega).l0;

  // Step 4: concentrate the same budget inside one level.
  std::vector<int> level_count(p.levels() + 1, 0);
  for (int j = 0; j < w1.size(); ++j)
    if (w1[j] != std::complex<double>(0.0, 0.0)) ++level_count[p.level_of(j + 1)];

  auto max_count_in_level = [&](int lvl) {
    std::vector<double> sq;
    for (int j = p.level_begin(lvl); j <= p.level_end(lvl); ++j)
      sq.push_back(omega[j - 1] * omega[j - 1]);
    std::sort(sq.begin(), sq.end());
    double acc = 0.0;
    int k = 0;
    for (double v : sq) {
      if (acc + v > budget) break;
      acc += v;
      ++k;
    }
    return k;
  };

  int mover_level = config.mover.level;
  int mover_count = config.mover.count;
  cvec w2;
  if (mover_level == -1) {
    w2 = w1;  // control: keep the support
    mover_count = static_cast<int>(std::lround(w1.cwiseAbs().sum()));
  } else {
    if (mover_level == 0) {
      for (int lvl = p.levels(); lvl >= 1; --lvl) {
        if (max_count_in_level(lvl) > level_count[lvl]) {
          mover_level = lvl;
          break;
        }
      }
      require(mover_level >= 1, ErrorCode::MoverInfeasible,
              "no level admits a strict count increase within the weighted budget");
    }
    const int feasible = max_count_in_level(mover_level);
    if (mover_count == 0) mover_count = feasible;
    require(mover_count >= 1 && mover_count <= feasible, ErrorCode::MoverInfeasible,
            "requested count exceeds the weighted budget in the chosen level");

    // Cheapest coordinates first; a uniform level is filled evenly instead to
    // avoid clustering at the left edge.
    const int lo = p.level_begin(mover_level), hi = p.level_end(mover_level);
    std::vector<int> order;
    for (int j = lo; j <= hi; ++j) order.push_back(j);
    const bool uniform = std::all_of(order.begin(), order.end(), [&](int j) {
      return omega[j - 1] == omega[lo - 1];
    });
    w2 = cvec::Zero(w.size());
    if (uniform) {
      const int width = hi - lo + 1;
      for (int t = 0; t < mover_count; ++t) {
        const int j = lo + static_cast<int>((static_cast<long long>(t) * width) / mover_count);
        w2[j - 1] = 1.0;
      }
    } else {
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return omega[a - 1] < omega[b - 1]; });
      for (int t = 0; t < mover_count; ++t) w2[order[t] - 1] = 1.0;
    }
  }

  const SolveResult r1 = solve_bpdn(U, U.forward(w1), eps, opts);
  const SolveResult r2 = solve_bpdn(U, U.forward(w2), eps, opts);

  GeneralizedFlipReport rep;
  rep.flip.err_original_l1 = rel_err_l1(w1, r1.x);
  rep.flip.err_original_l2 = rel_err_l2(w1, r1.x);
  rep.flip.err_flipped_l1 = rel_err_l1(w2, r2.x);
  rep.flip.err_flipped_l2 = rel_err_l2(w2, r2.x);
  rep.flip.permutation_kind = "generalized-mover";
  rep.flip.iterations_original = r1.iterations;
  rep.flip.iterations_flipped = r2.iterations;
  rep.flip.converged_original = r1.converged;
  rep.flip.converged_flipped = r2.converged;
  rep.threshold_used = used;
  rep.weighted_budget = budget;
  rep.mover_level = mover_level;
  rep.mover_count = mover_count;
  rep.w1 = w1;
  rep.w2 = w2;
  return rep;
}

}  // namespace ripl
