#include "ripl/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ripl/rng.hpp"

namespace ripl {

namespace {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

// In-place radix-2 DIT FFT, sign = -1 for the forward transform. Unscaled.
void fft_pow2(cvec& a, int sign) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / len;
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (int k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

cvec dft_apply(const cvec& x, int sign) {
  const int n = static_cast<int>(x.size());
  cvec y;
  if (is_pow2(n)) {
    y = x;
    fft_pow2(y, sign);
  } else {
    y = cvec::Zero(n);
    for (int k = 0; k < n; ++k) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < n; ++j) {
        const double ang = sign * 2.0 * std::numbers::pi * k * j / n;
        acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
      }
      y[k] = acc;
    }
  }
  return y / std::sqrt(static_cast<double>(n));
}

// Row position of raw frequency row r in the centered ordering
// 0, +1, -1, +2, -2, ...
int centered_position(int r, int n) {
  const int k = r <= (n - 1) / 2 ? r : r - n;
  if (k == 0) return 0;
  if (k > 0) return 2 * k - 1;
  return std::min(-2 * k, n - 1);
}

// Unscaled fast Walsh-Hadamard transform in natural (Hadamard) ordering.
void fwht(cvec& a) {
  const int n = static_cast<int>(a.size());
  for (int len = 1; len < n; len <<= 1) {
    for (int i = 0; i < n; i += 2 * len) {
      for (int k = 0; k < len; ++k) {
        const std::complex<double> u = a[i + k], v = a[i + k + len];
        a[i + k] = u + v;
        a[i + k + len] = u - v;
      }
    }
  }
}

int bit_reverse(int k, int bits) {
  int r = 0;
  for (int b = 0; b < bits; ++b) {
    r = (r << 1) | (k & 1);
    k >>= 1;
  }
  return r;
}

// Natural-order row index corresponding to row k of the requested ordering.
int hadamard_row(int k, int bits, HadamardOrder order) {
  switch (order) {
    case HadamardOrder::Natural: return k;
    case HadamardOrder::Paley: return bit_reverse(k, bits);
    case HadamardOrder::Sequency: return bit_reverse(k ^ (k >> 1), bits);
  }
  return k;
}

}  // namespace

SensingOperator::SensingOperator(int n_in, int n_out, Action forward, Action adjoint,
                                 std::string descriptor)
    : n_in_(n_in), n_out_(n_out), forward_(std::move(forward)), adjoint_(std::move(adjoint)),
      descriptor_(std::move(descriptor)) {
  require(n_in_ >= 1 && n_out_ >= 1, ErrorCode::DimensionMismatch,
          "operator dimensions must be positive");
}

cvec SensingOperator::forward(const cvec& x) const {
  require(static_cast<int>(x.size()) == n_in_, ErrorCode::DimensionMismatch,
          "forward input length mismatch for " + descriptor_);
  return forward_(x);
}

cvec SensingOperator::adjoint(const cvec& y) const {
  require(static_cast<int>(y.size()) == n_out_, ErrorCode::DimensionMismatch,
          "adjoint input length mismatch for " + descriptor_);
  return adjoint_(y);
}

SamplingScheme SamplingScheme::from_indices(std::vector<int> omega) {
  std::sort(omega.begin(), omega.end());
  require(std::adjacent_find(omega.begin(), omega.end()) == omega.end(),
          ErrorCode::IndexOutOfRange, "sampling indices must be unique");
  require(omega.empty() || omega.front() >= 1, ErrorCode::IndexOutOfRange,
          "sampling indices are 1-based");
  SamplingScheme s;
  s.omega_ = std::move(omega);
  return s;
}

SamplingScheme multilevel_scheme(const std::vector<Band>& bands, const std::vector<int>& m,
                                 std::uint64_t seed) {
  require(bands.size() == m.size(), ErrorCode::LengthMismatch,
          "one sample count per band is required");
  std::vector<int> omega;
  for (std::size_t j = 0; j < bands.size(); ++j) {
    const Band& band = bands[j];
    require(band.lo >= 1 && band.hi >= band.lo, ErrorCode::BandOverflow, "invalid band");
    require(m[j] >= 0 && m[j] <= band.width(), ErrorCode::BandOverflow,
            "band " + std::to_string(j + 1) + " cannot supply " + std::to_string(m[j]) +
                " samples");
    Rng rng(Rng::derive(seed, j));
    auto draw = rng.sample_without_replacement(band.lo, band.width(), m[j]);
    omega.insert(omega.end(), draw.begin(), draw.end());
  }
  std::sort(omega.begin(), omega.end());
  require(std::adjacent_find(omega.begin(), omega.end()) == omega.end(), ErrorCode::BandOverflow,
          "bands overlap");
  SamplingScheme s;
  s.omega_ = std::move(omega);
  s.bands_ = bands;
  s.per_band_ = m;
  s.seed_ = seed;
  return s;
}

SensingOperator identity_operator(int n) {
  auto id = [](const cvec& x) { return x; };
  return SensingOperator(n, n, id, id, "identity(" + std::to_string(n) + ")");
}

SensingOperator dense_operator(cmat A, std::string descriptor) {
  auto M = std::make_shared<cmat>(std::move(A));
  const int rows = static_cast<int>(M->rows()), cols = static_cast<int>(M->cols());
  return SensingOperator(
      cols, rows, [M](const cvec& x) -> cvec { return (*M) * x; },
      [M](const cvec& y) -> cvec { return M->adjoint() * y; }, std::move(descriptor));
}

SensingOperator dft(int n, FreqOrder order) {
  require(n >= 1, ErrorCode::DimensionMismatch, "dft size must be positive");
  if (order == FreqOrder::Natural) {
    return SensingOperator(
        n, n, [](const cvec& x) { return dft_apply(x, -1); },
        [](const cvec& y) { return dft_apply(y, +1); }, "dft(" + std::to_string(n) + ")");
  }
  auto perm = std::make_shared<std::vector<int>>(n);  // (*perm)[raw row] = centered position
  for (int r = 0; r < n; ++r) (*perm)[r] = centered_position(r, n);
  return SensingOperator(
      n, n,
      [perm](const cvec& x) {
        const cvec y = dft_apply(x, -1);
        cvec out(y.size());
        for (int r = 0; r < y.size(); ++r) out[(*perm)[r]] = y[r];
        return out;
      },
      [perm](const cvec& y) {
        cvec t(y.size());
        for (int r = 0; r < y.size(); ++r) t[r] = y[(*perm)[r]];
        return dft_apply(t, +1);
      },
      "dft-centered(" + std::to_string(n) + ")");
}

SensingOperator wht(int n, HadamardOrder order) {
  require(is_pow2(n), ErrorCode::NotPowerOfTwo, "wht size must be a power of two");
  const int bits = std::countr_zero(static_cast<unsigned>(n));
  auto perm = std::make_shared<std::vector<int>>(n);  // (*perm)[k] = natural row of ordered row k
  for (int k = 0; k < n; ++k) (*perm)[k] = hadamard_row(k, bits, order);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const char* names[] = {"natural", "paley", "sequency"};
  return SensingOperator(
      n, n,
      [perm, scale](const cvec& x) {
        cvec t = x;
        fwht(t);
        cvec out(t.size());
        for (int k = 0; k < t.size(); ++k) out[k] = t[(*perm)[k]] * scale;
        return out;
      },
      [perm, scale](const cvec& y) {
        cvec t = cvec::Zero(y.size());
        for (int k = 0; k < y.size(); ++k) t[(*perm)[k]] = y[k];
        fwht(t);
        return cvec(t * scale);
      },
      std::string("wht-") + names[static_cast<int>(order)] + "(" + std::to_string(n) + ")");
}

SensingOperator dwt(const WaveletSpec& spec, int n) {
  require(n % (1 << spec.levels) == 0, ErrorCode::LengthNotDivisible,
          "signal length must be divisible by 2^levels");
  const std::string name = "dwt(N=" + std::to_string(spec.filter_length() / 2) +
                           ",levels=" + std::to_string(spec.levels) + "," + std::to_string(n) + ")";
  return SensingOperator(
      n, n, [spec](const cvec& x) { return wavelet_forward(x, spec); },
      [spec](const cvec& c) { return wavelet_inverse(c, spec); }, name);
}

SensingOperator idwt(const WaveletSpec& spec, int n) {
  require(n % (1 << spec.levels) == 0, ErrorCode::LengthNotDivisible,
          "signal length must be divisible by 2^levels");
  const std::string name = "idwt(N=" + std::to_string(spec.filter_length() / 2) +
                           ",levels=" + std::to_string(spec.levels) + "," + std::to_string(n) + ")";
  return SensingOperator(
      n, n, [spec](const cvec& c) { return wavelet_inverse(c, spec); },
      [spec](const cvec& x) { return wavelet_forward(x, spec); }, name);
}

SensingOperator subsample(const SensingOperator& A, const SamplingScheme& scheme) {
  const auto omega = std::make_shared<std::vector<int>>(scheme.indices());
  require(!omega->empty(), ErrorCode::IndexOutOfRange, "empty sampling scheme");
  require(omega->back() <= A.n_out(), ErrorCode::IndexOutOfRange,
          "sampling index exceeds operator output size");
  const int m = static_cast<int>(omega->size());
  const int n_out = A.n_out();
  auto base = std::make_shared<SensingOperator>(A);
  return SensingOperator(
      A.n_in(), m,
      [base, omega](const cvec& x) {
        const cvec y = base->forward(x);
        cvec out(omega->size());
        for (std::size_t i = 0; i < omega->size(); ++i) out[i] = y[(*omega)[i] - 1];
        return out;
      },
      [base, omega, n_out](const cvec& z) {
        cvec y = cvec::Zero(n_out);
        for (std::size_t i = 0; i < omega->size(); ++i) y[(*omega)[i] - 1] = z[i];
        return base->adjoint(y);
      },
      "subsample(" + A.descriptor() + ",m=" + std::to_string(m) + ")");
}

SensingOperator compose(const SensingOperator& A, const SensingOperator& B) {
  require(A.n_in() == B.n_out(), ErrorCode::DimensionMismatch,
          "composition dimension mismatch: " + A.descriptor() + " . " + B.descriptor());
  auto a = std::make_shared<SensingOperator>(A);
  auto b = std::make_shared<SensingOperator>(B);
  return SensingOperator(
      B.n_in(), A.n_out(), [a, b](const cvec& x) { return a->forward(b->forward(x)); },
      [a, b](const cvec& y) { return b->adjoint(a->adjoint(y)); },
      A.descriptor() + "." + B.descriptor());
}

SensingOperator block_diagonal(const std::vector<cmat>& blocks) {
  require(!blocks.empty(), ErrorCode::DimensionMismatch, "need at least one block");
  int n = 0;
  for (const auto& b : blocks) {
    require(b.rows() == b.cols() && b.rows() >= 1, ErrorCode::DimensionMismatch,
            "blocks must be square");
    n += static_cast<int>(b.rows());
  }
  auto copy = std::make_shared<std::vector<cmat>>(blocks);
  auto apply = [copy, n](const cvec& x, bool adj) {
    cvec y(n);
    int at = 0;
    for (const auto& b : *copy) {
      const int a = static_cast<int>(b.rows());
      if (adj)
        y.segment(at, a) = b.adjoint() * x.segment(at, a);
      else
        y.segment(at, a) = b * x.segment(at, a);
      at += a;
    }
    return y;
  };
  return SensingOperator(
      n, n, [apply](const cvec& x) { return apply(x, false); },
      [apply](const cvec& y) { return apply(y, true); },
      "blockdiag(" + std::to_string(blocks.size()) + ")");
}

SensingOperator tensor2d(const SensingOperator& A) {
  require(A.n_in() == A.n_out(), ErrorCode::DimensionMismatch,
          "2D tensor product needs a square operator");
  const int side = A.n_in();
  const int n = side * side;
  auto base = std::make_shared<SensingOperator>(A);
  auto apply = [base, side](const cvec& x, bool adj) {
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        X(x.data(), side, side);
    cmat t(side, side);
    for (int c = 0; c < side; ++c)
      t.col(c) = adj ? base->adjoint(X.col(c)) : base->forward(X.col(c));
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(side,
                                                                                             side);
    for (int r = 0; r < side; ++r) {
      const cvec row = t.row(r).transpose();
      out.row(r) = (adj ? base->adjoint(row) : base->forward(row)).transpose();
    }
    return cvec(Eigen::Map<const cvec>(out.data(), side * side));
  };
  return SensingOperator(
      n, n, [apply](const cvec& x) { return apply(x, false); },
      [apply](const cvec& y) { return apply(y, true); }, "tensor2d(" + A.descriptor() + ")");
}

namespace {

cmat materialize_impl(const SensingOperator& A, std::int64_t cap, bool parallel) {
  (void)parallel;
  require(static_cast<std::int64_t>(A.n_in()) * A.n_out() <= cap, ErrorCode::TooLarge,
          "materialization exceeds the configured cap");
  cmat M(A.n_out(), A.n_in());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
  for (int j = 0; j < A.n_in(); ++j) {
    cvec e = cvec::Zero(A.n_in());
    e[j] = 1.0;
    M.col(j) = A.forward(e);
  }
  return M;
}

}  // namespace

cmat materialize(const SensingOperator& A, std::int64_t cap) {
  return materialize_impl(A, cap, true);
}

cmat materialize_serial(const SensingOperator& A, std::int64_t cap) {
  return materialize_impl(A, cap, false);
}

}  // namespace ripl
