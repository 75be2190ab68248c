#pragma once

#include <vector>

#include "ripl/pattern.hpp"

namespace ripl {

enum class WaveletFamily { Haar, Daubechies };

/// Orthonormal wavelet with periodic boundary handling. Haar is Daubechies
/// with one vanishing moment; both spellings are accepted.
struct WaveletSpec {
  WaveletFamily family = WaveletFamily::Haar;
  int vanishing_moments = 1;  // 1..10 for Daubechies
  int levels = 1;             // decomposition depth

  int filter_length() const;
};

/// Minimal-phase Daubechies lowpass filter with N vanishing moments (2N taps).
const std::vector<double>& daubechies_lowpass(int N);

/// Coefficient layout: [scaling block | wavelet levels coarse -> fine].
/// Boundaries double as level boundaries M for sparsity patterns.
std::vector<int> wavelet_boundaries(int n, int levels);

/// Full periodized analysis transform of a length-n signal (n divisible by
/// 2^levels). The inverse is the exact adjoint.
cvec wavelet_forward(const cvec& x, const WaveletSpec& spec);
cvec wavelet_inverse(const cvec& c, const WaveletSpec& spec);

}  // namespace ripl
