#include <doctest.h>

#include <algorithm>
#include <complex>
#include <vector>

#include "ripl/pattern.hpp"
#include "ripl/rng.hpp"

using namespace ripl;

namespace {

cvec from_reals(std::initializer_list<double> vals) {
  cvec x(static_cast<int>(vals.size()));
  int i = 0;
  for (double v : vals) x[i++] = v;
  return x;
}

cvec random_complex(Rng& rng, int n, double sparsity = 1.0) {
  cvec x = cvec::Zero(n);
  for (int i = 0; i < n; ++i)
    if (rng.next_double() < sparsity)
      x[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  return x;
}

// Enumerates every pattern-sparse support (not only maximal ones) and keeps
// the l1 mass off the support. Exponential; keep n small.
double sigma_bruteforce(const cvec& x, const SparsityPattern& p) {
  const int n = static_cast<int>(x.size());
  double best = std::numeric_limits<double>::infinity();
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<int> count(p.levels() + 1, 0);
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      if (mask & (1L << j)) ok = ++count[p.level_of(j + 1)] <= p.budget(p.level_of(j + 1));
    if (!ok) continue;
    double off = 0.0;
    for (int j = 0; j < n; ++j)
      if (!(mask & (1L << j))) off += std::abs(x[j]);
    best = std::min(best, off);
  }
  return best;
}

double max_weighted_l0_bruteforce(const SparsityPattern& p, const Weights& w) {
  const int n = w.size();
  double best = 0.0;
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<int> count(p.levels() + 1, 0);
    bool ok = true;
    double val = 0.0;
    for (int j = 0; j < n && ok; ++j)
      if (mask & (1L << j)) {
        ok = ++count[p.level_of(j + 1)] <= p.budget(p.level_of(j + 1));
        val += w[j] * w[j];
      }
    if (ok) best = std::max(best, val);
  }
  return best;
}

}  // namespace

TEST_CASE("make_pattern validates the level structure") {
  CHECK_NOTHROW(make_pattern({1, 0}, {0, 1, 2}));
  CHECK_NOTHROW(make_pattern({1}, {0, 1}));

  CHECK_THROWS_WITH_AS(make_pattern({3}, {0, 2}), doctest::Contains("BudgetExceedsLevelWidth"),
                       Error);
  CHECK_THROWS_WITH_AS(make_pattern({1}, {1, 2}), doctest::Contains("M0NotZero"), Error);
  CHECK_THROWS_WITH_AS(make_pattern({1, 1}, {0, 2, 2}),
                       doctest::Contains("BoundaryNotIncreasing"), Error);
  CHECK_THROWS_AS(make_pattern({1, 1}, {0, 2}), Error);
}

TEST_CASE("ratio constant is the exact budget ratio") {
  CHECK(ratio_constant(make_pattern({1, 100}, {0, 10, 110})).value() == 100.0);
  CHECK(ratio_constant(make_pattern({2, 2, 2}, {0, 2, 4, 6})).value() == 1.0);
  CHECK(ratio_constant(make_pattern({1, 0}, {0, 1, 2})).infinite);

  const auto r = ratio_constant(make_pattern({4, 6}, {0, 4, 10}));
  CHECK(r.num == 3);
  CHECK(r.den == 2);

  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const int l = 1 + static_cast<int>(rng.next_below(4));
    std::vector<int> s(l), M(l + 1, 0);
    bool equal = true;
    for (int i = 0; i < l; ++i) {
      s[i] = 1 + static_cast<int>(rng.next_below(5));
      M[i + 1] = M[i] + s[i] + static_cast<int>(rng.next_below(3));
      equal = equal && s[i] == s[0];
    }
    const auto eta = ratio_constant(make_pattern(s, M));
    CHECK(eta.value() >= 1.0);
    CHECK((eta.value() == 1.0) == equal);
  }
}

TEST_CASE("num_elements sums the budgets") {
  CHECK(num_elements(make_pattern({1, 100}, {0, 10, 110})) == 101);
  CHECK(num_elements(make_pattern({0, 0}, {0, 1, 2})) == 0);
  CHECK(num_elements(make_pattern({16, 1}, {0, 16, 18})) == 17);
}

TEST_CASE("covers needs a finite ratio and a long enough pattern") {
  CHECK_FALSE(covers(make_pattern({1, 0}, {0, 1, 2}), 2));
  CHECK_FALSE(covers(make_pattern({1}, {0, 1}), 3));
  CHECK(covers(make_pattern({1, 1}, {0, 1, 2}), 2));
}

TEST_CASE("scale_pattern clamps at level widths") {
  const auto p = make_pattern({1, 2}, {0, 2, 4});
  CHECK(scale_pattern(p, 3).budgets() == std::vector<int>{2, 2});
  CHECK(scale_pattern(make_pattern({1, 1}, {0, 4, 8}), 2).budgets() == std::vector<int>{2, 2});
  CHECK(scale_pattern(p, 1) == p);

  // budgets are non-decreasing in the scale factor
  for (int a = 1; a < 5; ++a) {
    const auto lo = scale_pattern(p, a), hi = scale_pattern(p, a + 1);
    for (int i = 0; i < p.levels(); ++i) CHECK(lo.budgets()[i] <= hi.budgets()[i]);
  }
}

TEST_CASE("pattern-sparsity membership counts exact nonzeros per level") {
  const int C = 10;
  const auto p = make_pattern({1, C * C}, {0, C, C + C * C});
  cvec z1 = cvec::Zero(C + C * C);
  z1[0] = C;
  for (int j = C; j < C + C * C; ++j) z1[j] = 1.0;
  CHECK(is_sm_sparse(z1, p));

  CHECK(is_sm_sparse(cvec::Zero(4), make_pattern({1, 1}, {0, 2, 4})));
  CHECK_FALSE(is_sm_sparse(from_reals({1, 1}), make_pattern({1, 0}, {0, 1, 2})));

  // thresholded membership for empirical data
  cvec noisy = from_reals({1, 1e-9});
  CHECK_FALSE(is_sm_sparse(noisy, make_pattern({1, 0}, {0, 1, 2})));
  CHECK(is_sm_sparse(noisy, make_pattern({1, 0}, {0, 1, 2}), 1e-8));
}

TEST_CASE("best structured approximation keeps per-level leaders") {
  const auto p = make_pattern({1, 1}, {0, 2, 4});
  const auto r = best_sm_approx(from_reals({3, 1, 2, 0.5}), p);
  CHECK(r.support.indices() == std::vector<int>{1, 3});
  CHECK(r.sigma_l1 == doctest::Approx(1.5).epsilon(1e-14));

  cvec sparse = from_reals({3, 0, 2, 0});
  CHECK(best_sm_approx(sparse, p).sigma_l1 == 0.0);

  CHECK_THROWS_AS(best_sm_approx(from_reals({1, 1}), make_pattern({1, 0}, {0, 1, 2})), Error);
}

TEST_CASE("best structured approximation equals exhaustive search") {
  Rng rng(404);
  for (int t = 0; t < 30; ++t) {
    const int n = 6 + static_cast<int>(rng.next_below(7));  // up to 12
    const int m1 = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
    const auto p = make_pattern({1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m1))),
                                 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - m1)))},
                                {0, m1, n});
    const cvec x = random_complex(rng, n);
    const auto fast = best_sm_approx(x, p);
    CHECK(fast.sigma_l1 == doctest::Approx(sigma_bruteforce(x, p)).epsilon(1e-12));
  }
}

TEST_CASE("sigma is zero exactly on pattern-sparse vectors") {
  Rng rng(77);
  const auto p = make_pattern({2, 1}, {0, 3, 6});
  for (int t = 0; t < 40; ++t) {
    const cvec x = random_complex(rng, 6, 0.45);
    const bool sparse = is_sm_sparse(x, p);
    const double sigma = best_sm_approx(x, p).sigma_l1;
    CHECK((sigma == 0.0) == sparse);
  }
}

TEST_CASE("sigma is invariant under level-preserving shuffles") {
  Rng rng(78);
  const auto p = make_pattern({2, 2}, {0, 4, 10});
  for (int t = 0; t < 25; ++t) {
    const cvec x = random_complex(rng, 10);
    cvec shuffled = x;
    for (int lvl = 1; lvl <= p.levels(); ++lvl) {
      const int lo = p.level_begin(lvl) - 1, w = p.level_width(lvl);
      for (int i = w - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(shuffled[lo + i], shuffled[lo + j]);
      }
    }
    CHECK(best_sm_approx(shuffled, p).sigma_l1 ==
          doctest::Approx(best_sm_approx(x, p).sigma_l1).epsilon(1e-12));
  }
}

TEST_CASE("sk_epsilon counts head coefficients per level") {
  // a constant signal has a single active scaling coefficient under Haar
  const auto p = make_pattern({1, 1, 2, 4}, {0, 1, 2, 4, 8});
  cvec w = cvec::Zero(8);
  w[0] = std::sqrt(8.0);  // what wavelet_forward of a constant produces
  CHECK(sk_epsilon(w, p, 0.9) == std::vector<int>{1, 0, 0, 0});

  Rng rng(5);
  const cvec x = random_complex(rng, 8);
  CHECK(sk_epsilon(x, p, 0.0) == std::vector<int>{0, 0, 0, 0});
  CHECK_THROWS_WITH_AS(sk_epsilon(x, p, 1.5), doctest::Contains("EpsilonOutOfRange"), Error);
}

TEST_CASE("sk_epsilon matches a sort-based oracle and is monotone") {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const int n = 8 + static_cast<int>(rng.next_below(9));  // up to 16
    const int m1 = n / 2;
    const auto p = make_pattern({m1, n - m1}, {0, m1, n});
    const cvec w = random_complex(rng, n);

    // oracle: sort by magnitude (ties by index), walk until the energy target
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (std::abs(w[a]) != std::abs(w[b])) return std::abs(w[a]) > std::abs(w[b]);
      return a < b;
    });

    double total = 0.0;
    for (int i = 0; i < n; ++i) total += std::norm(w[i]);

    std::vector<int> prev(p.levels(), 0);
    for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0}) {
      double acc = 0.0;
      int need = 0;
      while (need < n && acc < eps * eps * total) {
        acc += std::norm(w[order[need]]);
        ++need;
      }
      std::vector<int> expect(p.levels(), 0);
      for (int i = 0; i < need; ++i) ++expect[p.level_of(order[i] + 1) - 1];

      const auto got = sk_epsilon(w, p, eps);
      CHECK(got == expect);
      int total = 0;
      for (int i = 0; i < p.levels(); ++i) {
        CHECK(got[i] >= prev[i]);  // componentwise monotone in eps
        total += got[i];
      }
      CHECK(total == need);
      prev = got;
    }
  }
}

TEST_CASE("weighted norms") {
  const Weights w(rvec{{2.0, 3.0, 5.0}});
  const auto r = weighted_norms(from_reals({1, 0, 1}), w);
  CHECK(r.l0 == 29.0);  // 4 + 25
  CHECK(r.l1 == 7.0);   // 2 + 5

  const auto zero = weighted_norms(cvec::Zero(3), w);
  CHECK(zero.l0 == 0.0);
  CHECK(zero.l1 == 0.0);

  Rng rng(9);
  const cvec x = random_complex(rng, 5, 0.6);
  const auto plain = weighted_norms(x, Weights::ones(5));
  int l0 = 0;
  double l1 = 0.0;
  for (int i = 0; i < 5; ++i) {
    if (x[i] != std::complex<double>(0.0)) ++l0;
    l1 += std::abs(x[i]);
  }
  CHECK(plain.l0 == static_cast<double>(l0));
  CHECK(plain.l1 == doctest::Approx(l1).epsilon(1e-14));

  CHECK_THROWS_AS(weighted_norms(cvec::Zero(2), w), Error);
  CHECK_THROWS_WITH_AS(Weights(rvec{{0.5}}), doctest::Contains("WeightBelowOne"), Error);
}

TEST_CASE("max weighted l0 over a pattern") {
  const auto p = make_pattern({1, 1}, {0, 2, 4});
  const Weights w = Weights::per_level_pow2(p);
  CHECK(max_weighted_l0_over_pattern(p, w) == 20.0);  // 4 + 16

  CHECK(max_weighted_l0_over_pattern(p, Weights::ones(4)) == num_elements(p));

  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    const int n = 6 + static_cast<int>(rng.next_below(5));
    const int m1 = n / 2;
    const auto q =
        make_pattern({1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m1))),
                      1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - m1)))},
                     {0, m1, n});
    rvec wv(n);
    for (int i = 0; i < n; ++i) wv[i] = 1.0 + rng.next_double() * 4.0;
    const Weights ww(wv);
    CHECK(max_weighted_l0_over_pattern(q, ww) ==
          doctest::Approx(max_weighted_l0_bruteforce(q, ww)).epsilon(1e-12));
  }
}
