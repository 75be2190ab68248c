#include "ripl/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ripl {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::M0NotZero: return "M0NotZero";
    case ErrorCode::BoundaryNotIncreasing: return "BoundaryNotIncreasing";
    case ErrorCode::BudgetExceedsLevelWidth: return "BudgetExceedsLevelWidth";
    case ErrorCode::PatternDoesNotCover: return "PatternDoesNotCover";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::LengthNotDivisible: return "LengthNotDivisible";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BandOverflow: return "BandOverflow";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::InfiniteRatio: return "InfiniteRatio";
    case ErrorCode::KernelTooLarge: return "KernelTooLarge";
    case ErrorCode::RhoOutOfRange: return "RhoOutOfRange";
    case ErrorCode::WeightBelowOne: return "WeightBelowOne";
    case ErrorCode::NotSorted: return "NotSorted";
    case ErrorCode::ParameterOrder: return "ParameterOrder";
    case ErrorCode::ParameterInfeasible: return "ParameterInfeasible";
    case ErrorCode::MoverInfeasible: return "MoverInfeasible";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Infeasible: return "Infeasible";
  }
  return "UnknownError";
}

SparsityPattern::SparsityPattern(std::vector<int> budgets, std::vector<int> boundaries)
    : budgets_(std::move(budgets)), boundaries_(std::move(boundaries)) {
  require(!budgets_.empty() && boundaries_.size() == budgets_.size() + 1, ErrorCode::LengthMismatch,
          "need len(M) = len(s) + 1 with non-empty s");
  require(boundaries_.front() == 0, ErrorCode::M0NotZero, "M[0] must be 0");
  for (std::size_t i = 1; i < boundaries_.size(); ++i)
    require(boundaries_[i] > boundaries_[i - 1], ErrorCode::BoundaryNotIncreasing,
            "boundaries must be strictly increasing");
  for (std::size_t i = 0; i < budgets_.size(); ++i) {
    require(budgets_[i] >= 0, ErrorCode::BudgetExceedsLevelWidth, "budgets must be non-negative");
    require(budgets_[i] <= boundaries_[i + 1] - boundaries_[i], ErrorCode::BudgetExceedsLevelWidth,
            "budget exceeds level width at level " + std::to_string(i + 1));
  }
}

int SparsityPattern::level_of(int j) const {
  require(j >= 1 && j <= dimension(), ErrorCode::IndexOutOfRange, "index outside pattern range");
  const auto it = std::lower_bound(boundaries_.begin(), boundaries_.end(), j);
  return static_cast<int>(it - boundaries_.begin());
}

std::string SparsityPattern::describe() const {
  std::ostringstream os;
  os << "s=(";
  for (int i = 0; i < levels(); ++i) os << (i ? "," : "") << budgets_[i];
  os << ") M=(";
  for (std::size_t i = 0; i < boundaries_.size(); ++i) os << (i ? "," : "") << boundaries_[i];
  os << ")";
  return os.str();
}

SparsityPattern make_pattern(const std::vector<int>& s, const std::vector<int>& M) {
  return SparsityPattern(s, M);
}

RatioConstant ratio_constant(const SparsityPattern& p) {
  RatioConstant r;
  long long mx = 0, mn = std::numeric_limits<long long>::max();
  for (int s : p.budgets()) {
    if (s == 0) {
      r.infinite = true;
      return r;
    }
    mx = std::max<long long>(mx, s);
    mn = std::min<long long>(mn, s);
  }
  const long long g = std::gcd(mx, mn);
  r.num = mx / g;
  r.den = mn / g;
  return r;
}

int num_elements(const SparsityPattern& p) {
  return std::accumulate(p.budgets().begin(), p.budgets().end(), 0);
}

bool covers(const SparsityPattern& p, int n) {
  require(n >= 1, ErrorCode::DimensionMismatch, "covered dimension must be positive");
  return ratio_constant(p).finite() && p.dimension() >= n;
}

SparsityPattern scale_pattern(const SparsityPattern& p, int a) {
  require(a >= 1, ErrorCode::ParameterOrder, "scale factor must be >= 1");
  std::vector<int> s(p.levels());
  for (int i = 1; i <= p.levels(); ++i) {
    const long long scaled = static_cast<long long>(a) * p.budget(i);
    s[i - 1] = static_cast<int>(std::min<long long>(scaled, p.level_width(i)));
  }
  return SparsityPattern(s, p.boundaries());
}

Weights::Weights(rvec w) : w_(std::move(w)) {
  for (int j = 0; j < w_.size(); ++j)
    require(w_[j] >= 1.0, ErrorCode::WeightBelowOne, "weights must be >= 1");
}

Weights Weights::per_level_pow2(const SparsityPattern& p) {
  rvec w(p.dimension());
  for (int i = 1; i <= p.levels(); ++i)
    for (int j = p.level_begin(i); j <= p.level_end(i); ++j) w[j - 1] = std::ldexp(1.0, i);
  return Weights(w);
}

LevelSupport::LevelSupport(std::vector<int> indices, const SparsityPattern& pattern)
    : indices_(std::move(indices)), pattern_(pattern) {
  std::sort(indices_.begin(), indices_.end());
  require(std::adjacent_find(indices_.begin(), indices_.end()) == indices_.end(),
          ErrorCode::IndexOutOfRange, "support indices must be distinct");
  std::vector<int> count(pattern_.levels() + 1, 0);
  for (int j : indices_) {
    require(j >= 1 && j <= pattern_.dimension(), ErrorCode::IndexOutOfRange,
            "support index outside pattern range");
    ++count[pattern_.level_of(j)];
  }
  for (int i = 1; i <= pattern_.levels(); ++i)
    require(count[i] <= pattern_.budget(i), ErrorCode::BudgetExceedsLevelWidth,
            "support exceeds budget in level " + std::to_string(i));
}

bool LevelSupport::contains(int j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

bool is_sm_sparse(const cvec& x, const SparsityPattern& p, double threshold) {
  require(x.size() <= p.dimension(), ErrorCode::DimensionMismatch,
          "vector longer than the pattern range");
  std::vector<int> count(p.levels() + 1, 0);
  for (int j0 = 0; j0 < x.size(); ++j0)
    if (std::abs(x[j0]) > threshold) ++count[p.level_of(j0 + 1)];
  for (int i = 1; i <= p.levels(); ++i)
    if (count[i] > p.budget(i)) return false;
  return true;
}

namespace {

// Indices of a level restricted to the vector length, ordered by magnitude
// descending with ties to the lowest index. 0-based output.
std::vector<int> level_order_by_magnitude(const cvec& x, const SparsityPattern& p, int level) {
  std::vector<int> idx;
  const int hi = std::min<int>(p.level_end(level), static_cast<int>(x.size()));
  for (int j = p.level_begin(level); j <= hi; ++j) idx.push_back(j - 1);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(x[a]), mb = std::abs(x[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  return idx;
}

}  // namespace

BestApprox best_sm_approx(const cvec& x, const SparsityPattern& p) {
  require(covers(p, static_cast<int>(x.size())), ErrorCode::PatternDoesNotCover,
          "pattern does not cover the vector");
  std::vector<int> keep;
  double sigma = 0.0;
  for (int i = 1; i <= p.levels(); ++i) {
    const auto order = level_order_by_magnitude(x, p, i);
    for (std::size_t r = 0; r < order.size(); ++r) {
      if (static_cast<int>(r) < p.budget(i))
        keep.push_back(order[r] + 1);
      else
        sigma += std::abs(x[order[r]]);
    }
  }
  return BestApprox{LevelSupport(std::move(keep), p), sigma};
}

std::vector<int> sk_epsilon(const cvec& w, const SparsityPattern& p, double eps) {
  require(eps >= 0.0 && eps <= 1.0, ErrorCode::EpsilonOutOfRange, "eps must lie in [0,1]");
  require(covers(p, static_cast<int>(w.size())), ErrorCode::PatternDoesNotCover,
          "pattern does not cover the vector");

  std::vector<int> order(w.size());
  for (int j = 0; j < w.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(w[a]), mb = std::abs(w[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });

  const double total = w.squaredNorm();
  const double target = eps * eps * total;
  std::vector<int> counts(p.levels(), 0);
  double acc = 0.0;
  // s(eps) = number of head entries needed; counts = their split over levels.
  for (int n = 0; n < static_cast<int>(order.size()); ++n) {
    if (acc >= target) break;
    acc += std::norm(w[order[n]]);
    ++counts[p.level_of(order[n] + 1) - 1];
  }
  if (eps == 0.0) return std::vector<int>(p.levels(), 0);
  return counts;
}

WeightedNorms weighted_norms(const cvec& x, const Weights& w) {
  require(x.size() == w.size(), ErrorCode::LengthMismatch, "vector and weights differ in length");
  WeightedNorms out;
  for (int j = 0; j < x.size(); ++j) {
    if (x[j] != std::complex<double>(0.0, 0.0)) out.l0 += w[j] * w[j];
    out.l1 += w[j] * std::abs(x[j]);
  }
  return out;
}

double max_weighted_l0_over_pattern(const SparsityPattern& p, const Weights& w) {
  require(covers(p, w.size()), ErrorCode::PatternDoesNotCover,
          "pattern does not cover the weight vector");
  double total = 0.0;
  for (int i = 1; i <= p.levels(); ++i) {
    std::vector<double> sq;
    const int hi = std::min<int>(p.level_end(i), w.size());
    for (int j = p.level_begin(i); j <= hi; ++j) sq.push_back(w[j - 1] * w[j - 1]);
    std::sort(sq.begin(), sq.end(), std::greater<>());
    const int take = std::min<int>(p.budget(i), static_cast<int>(sq.size()));
    for (int r = 0; r < take; ++r) total += sq[r];
  }
  return total;
}

}  // namespace ripl
