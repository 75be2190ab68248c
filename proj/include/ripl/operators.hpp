#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ripl/pattern.hpp"
#include "ripl/wavelet.hpp"

namespace ripl {

/// A complex linear map given by its forward and adjoint actions. Operators
/// are immutable after construction; forward/adjoint may be called
/// concurrently.
class SensingOperator {
public:
  using Action = std::function<cvec(const cvec&)>;

  SensingOperator(int n_in, int n_out, Action forward, Action adjoint, std::string descriptor);

  int n_in() const { return n_in_; }
  int n_out() const { return n_out_; }
  const std::string& descriptor() const { return descriptor_; }

  cvec forward(const cvec& x) const;
  cvec adjoint(const cvec& y) const;

private:
  int n_in_, n_out_;
  Action forward_, adjoint_;
  std::string descriptor_;
};

/// A subsampling index set, optionally recording the bands it was drawn from
/// and the seed used. Indices are 1-based, sorted and unique.
struct Band {
  int lo = 1, hi = 1;  // inclusive
  int width() const { return hi - lo + 1; }
};

class SamplingScheme {
public:
  static SamplingScheme from_indices(std::vector<int> omega);

  const std::vector<int>& indices() const { return omega_; }
  int size() const { return static_cast<int>(omega_.size()); }
  const std::vector<Band>& bands() const { return bands_; }
  const std::vector<int>& per_band() const { return per_band_; }
  std::uint64_t seed() const { return seed_; }

  friend SamplingScheme multilevel_scheme(const std::vector<Band>& bands,
                                          const std::vector<int>& m, std::uint64_t seed);

private:
  std::vector<int> omega_;
  std::vector<Band> bands_;
  std::vector<int> per_band_;
  std::uint64_t seed_ = 0;
};

/// Draws m[j] indices uniformly without replacement inside band j.
/// Deterministic given (bands, m, seed); the per-band subseed is derived from
/// the band position.
SamplingScheme multilevel_scheme(const std::vector<Band>& bands, const std::vector<int>& m,
                                 std::uint64_t seed);

enum class FreqOrder {
  Natural,   // row k is frequency k, k = 0..n-1
  Centered,  // rows ordered 0, +1, -1, +2, -2, ... (dyadic bands contiguous)
};

enum class HadamardOrder { Natural, Paley, Sequency };

SensingOperator identity_operator(int n);
SensingOperator dense_operator(cmat A, std::string descriptor = "dense");

/// Unitary DFT with 1/sqrt(n) normalization; O(n log n) for powers of two.
SensingOperator dft(int n, FreqOrder order = FreqOrder::Natural);

/// Unitary Walsh-Hadamard transform; n must be a power of two. Paley is the
/// default ordering everywhere in this project: it is the ordering under
/// which the composition with the inverse Haar transform is exactly block
/// diagonal (sequency shares this property, natural does not).
SensingOperator wht(int n, HadamardOrder order = HadamardOrder::Paley);

/// Orthonormal periodized analysis transform and its inverse.
SensingOperator dwt(const WaveletSpec& spec, int n);
SensingOperator idwt(const WaveletSpec& spec, int n);

/// Row selection: P_Omega composed with A.
SensingOperator subsample(const SensingOperator& A, const SamplingScheme& scheme);

/// A after B (apply B first).
SensingOperator compose(const SensingOperator& A, const SensingOperator& B);

/// Direct sum of square dense blocks.
SensingOperator block_diagonal(const std::vector<cmat>& blocks);

/// Separable 2D transform of a row-major flattened square input.
SensingOperator tensor2d(const SensingOperator& A);

inline constexpr std::int64_t kDefaultMaterializeCap = std::int64_t{1} << 22;

/// Dense matrix of the operator, column by column. Columns are filled in
/// parallel; each column is computed independently so the result does not
/// depend on the thread count.
cmat materialize(const SensingOperator& A, std::int64_t cap = kDefaultMaterializeCap);
cmat materialize_serial(const SensingOperator& A, std::int64_t cap = kDefaultMaterializeCap);

}  // namespace ripl
