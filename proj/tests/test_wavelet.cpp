#include <doctest.h>

#include <cmath>

#include "ripl/operators.hpp"
#include "ripl/rng.hpp"
#include "ripl/wavelet.hpp"

using namespace ripl;

namespace {

cvec random_complex(Rng& rng, int n) {
  cvec x(n);
  for (int i = 0; i < n; ++i) x[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  return x;
}

}  // namespace

TEST_CASE("Haar on two samples") {
  WaveletSpec spec{WaveletFamily::Haar, 1, 1};
  cvec x(2);
  x << 3.0, 1.0;
  const cvec c = wavelet_forward(x, spec);
  CHECK(c[0].real() == doctest::Approx((3.0 + 1.0) / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(c[1].real() == doctest::Approx((3.0 - 1.0) / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("filter taps match the closed-form four-tap values") {
  const auto& h = daubechies_lowpass(2);
  const double s3 = std::sqrt(3.0), r = 4.0 * std::sqrt(2.0);
  REQUIRE(h.size() == 4);
  CHECK(h[0] == doctest::Approx((1 + s3) / r).epsilon(1e-13));
  CHECK(h[1] == doctest::Approx((3 + s3) / r).epsilon(1e-13));
  CHECK(h[2] == doctest::Approx((3 - s3) / r).epsilon(1e-13));
  CHECK(h[3] == doctest::Approx((1 - s3) / r).epsilon(1e-13));
}

TEST_CASE("all families are orthonormal with exact reconstruction") {
  Rng rng(21);
  for (int N = 1; N <= 10; ++N) {
    WaveletSpec spec{N == 1 ? WaveletFamily::Haar : WaveletFamily::Daubechies, N, 3};
    const cvec x = random_complex(rng, 32);
    const cvec c = wavelet_forward(x, spec);
    CHECK(c.norm() == doctest::Approx(x.norm()).epsilon(1e-10));
    CHECK((wavelet_inverse(c, spec) - x).norm() < 1e-10);
  }
}

TEST_CASE("deep decompositions stay orthonormal past the filter length") {
  Rng rng(22);
  WaveletSpec spec{WaveletFamily::Daubechies, 4, 5};  // coarsest stage has 2 samples, 8 taps
  const cvec x = random_complex(rng, 64);
  const cvec c = wavelet_forward(x, spec);
  CHECK(c.norm() == doctest::Approx(x.norm()).epsilon(1e-10));
  CHECK((wavelet_inverse(c, spec) - x).norm() < 1e-10);
}

TEST_CASE("coefficient layout is scaling block then coarse to fine") {
  CHECK(wavelet_boundaries(64, 6) == std::vector<int>{0, 1, 2, 4, 8, 16, 32, 64});
  CHECK(wavelet_boundaries(256, 3) == std::vector<int>{0, 32, 64, 128, 256});

  // a constant signal maps to the scaling block only
  WaveletSpec spec{WaveletFamily::Haar, 1, 6};
  const cvec c = wavelet_forward(cvec::Ones(64), spec);
  CHECK(std::abs(c[0]) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(c.tail(63).norm() < 1e-12);
}

TEST_CASE("spec validation") {
  WaveletSpec spec{WaveletFamily::Daubechies, 3, 2};
  CHECK_THROWS_WITH_AS(wavelet_forward(cvec::Ones(6), spec),
                       doctest::Contains("LengthNotDivisible"), Error);
  CHECK_THROWS_AS(daubechies_lowpass(11), Error);
}
