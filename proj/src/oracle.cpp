#include "ripl/oracle.hpp"

#include <algorithm>
#include <vector>

#include <Eigen/SVD>
#include <boost/multiprecision/cpp_int.hpp>

namespace ripl {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Dense tableau simplex with Bland's rule, exact rational arithmetic.
// Minimizes c.v subject to A v = b, v >= 0. Columns >= ncols(A) are
// artificial and never re-enter once phase 1 ends.
class Simplex {
public:
  Simplex(std::vector<std::vector<Rational>> A, std::vector<Rational> b, std::vector<Rational> c)
      : m_(A.size()), n_(c.size()), A_(std::move(A)), b_(std::move(b)), c_(std::move(c)) {}

  // Returns false when infeasible.
  bool solve() {
    for (std::size_t i = 0; i < m_; ++i)
      if (b_[i] < 0) {
        b_[i] = -b_[i];
        for (auto& v : A_[i]) v = -v;
      }
    // phase 1: artificial identity basis
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t r = 0; r < m_; ++r) A_[r].push_back(r == i ? 1 : 0);
      basis_.push_back(n_ + i);
    }
    total_ = n_ + m_;
    std::vector<Rational> phase1(total_, 0);
    for (std::size_t j = n_; j < total_; ++j) phase1[j] = 1;
    if (!run(phase1, total_)) return false;
    if (objective(phase1) != 0) return false;  // infeasible
    // phase 2 over the original columns only
    std::vector<Rational> phase2 = c_;
    phase2.resize(total_, 0);
    run(phase2, n_);
    return true;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> v(total_, 0);
    for (std::size_t i = 0; i < m_; ++i) v[basis_[i]] = b_[i];
    v.resize(n_);
    return v;
  }

  Rational objective(const std::vector<Rational>& c) const {
    Rational obj = 0;
    for (std::size_t i = 0; i < m_; ++i) obj += c[basis_[i]] * b_[i];
    return obj;
  }

  // True when every nonbasic original column has strictly positive reduced
  // cost at the final basis: a certificate that the optimum is unique.
  bool unique_certificate() const {
    const auto rc = reduced_costs();
    for (std::size_t j = 0; j < n_; ++j) {
      if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
      if (rc[j] <= 0) return false;
    }
    return true;
  }

private:
  std::vector<Rational> reduced_costs() const {
    // y = cB B^{-1} is implicit: rows are kept in canonical (B^{-1}A) form,
    // so reduced costs are c_j - sum_i cB_i A_{ij}.
    std::vector<Rational> rc(n_, 0);
    std::vector<Rational> cb(m_);
    std::vector<Rational> cfull = c_;
    cfull.resize(total_, 0);
    for (std::size_t i = 0; i < m_; ++i) cb[i] = cfull[basis_[i]];
    for (std::size_t j = 0; j < n_; ++j) {
      Rational v = cfull[j];
      for (std::size_t i = 0; i < m_; ++i) v -= cb[i] * A_[i][j];
      rc[j] = v;
    }
    return rc;
  }

  // Runs simplex for cost vector c over columns [0, allowed).
  bool run(const std::vector<Rational>& c, std::size_t allowed) {
    for (;;) {
      std::vector<Rational> cb(m_);
      for (std::size_t i = 0; i < m_; ++i) cb[i] = c[basis_[i]];
      // Bland: lowest-index entering column with negative reduced cost
      std::size_t enter = total_;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        Rational rc = c[j];
        for (std::size_t i = 0; i < m_; ++i) rc -= cb[i] * A_[i][j];
        if (rc < 0) {
          enter = j;
          break;
        }
      }
      if (enter == total_) return true;  // optimal
      // Bland leaving rule: min ratio, ties by lowest basis index
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (A_[i][enter] <= 0) continue;
        const Rational ratio = b_[i] / A_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;  // unbounded (cannot happen for l1 objectives)
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = A_[row][col];
    for (auto& v : A_[row]) v /= p;
    b_[row] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const Rational f = A_[i][col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < total_; ++j) A_[i][j] -= f * A_[row][j];
      b_[i] -= f * b_[row];
    }
    basis_[row] = col;
  }

  std::size_t m_, n_, total_ = 0;
  std::vector<std::vector<Rational>> A_;
  std::vector<Rational> b_;
  std::vector<Rational> c_;
  std::vector<std::size_t> basis_;
};

OracleResult solve_rational_lp(const rmat& U, const rvec& y) {
  const int m = static_cast<int>(U.rows()), n = static_cast<int>(U.cols());
  // x = u - w with u, w >= 0; minimize 1.u + 1.w
  std::vector<std::vector<Rational>> A(m, std::vector<Rational>(2 * n));
  std::vector<Rational> b(m), c(2 * n, 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational v(U(i, j));  // doubles convert exactly
      A[i][j] = v;
      A[i][n + j] = -v;
    }
    b[i] = Rational(y[i]);
  }
  Simplex lp(std::move(A), std::move(b), std::move(c));
  require(lp.solve(), ErrorCode::Infeasible, "y is not in the range of U");
  const auto v = lp.primal();
  OracleResult out;
  out.method = OracleResult::Method::RationalLp;
  out.x = rvec(n);
  Rational obj = 0;
  for (int j = 0; j < n; ++j) {
    const Rational xj = v[j] - v[n + j];
    out.x[j] = xj.convert_to<double>();
    obj += xj < 0 ? -xj : xj;
  }
  out.objective = obj.convert_to<double>();
  out.unique = lp.unique_certificate();
  return out;
}

OracleResult solve_kernel_line(const rvec& particular, const rvec& kernel) {
  // phi(t) = ||particular + t*kernel||_1 is convex piecewise linear; the
  // minimum is attained at a breakpoint. Breakpoints produced by different
  // coordinates of the same kink agree only to rounding, so they are
  // clustered before the uniqueness count.
  std::vector<double> ts;
  ts.push_back(0.0);
  double scale = 0.0;
  for (int j = 0; j < kernel.size(); ++j)
    if (kernel[j] != 0.0) {
      ts.push_back(-particular[j] / kernel[j]);
      scale = std::max(scale, std::abs(ts.back()));
    }
  std::sort(ts.begin(), ts.end());
  std::vector<double> reps;
  for (double t : ts)
    if (reps.empty() || t - reps.back() > 1e-9 * (1.0 + scale)) reps.push_back(t);

  auto phi = [&](double t) { return (particular + t * kernel).cwiseAbs().sum(); };
  double best_t = reps.front(), best = phi(best_t);
  for (double t : reps) {
    const double v = phi(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  int at_min = 0;
  const double tol = 1e-12 * (1.0 + best);
  for (double t : reps)
    if (phi(t) <= best + tol) ++at_min;

  OracleResult out;
  out.method = OracleResult::Method::KernelLine;
  out.x = particular + best_t * kernel;
  out.objective = best;
  out.unique = at_min == 1;
  return out;
}

}  // namespace

OracleResult oracle_bp(const rmat& U, const rvec& y) {
  require(U.rows() == y.size(), ErrorCode::DimensionMismatch,
          "measurement length does not match the matrix");
  const int n = static_cast<int>(U.cols());

  Eigen::JacobiSVD<rmat> svd(U, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const double tol = 1e-12 * svd.singularValues()[0] * std::max(U.rows(), U.cols());
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++rank;
  const int kernel_dim = n - rank;

  rvec particular = rvec::Zero(n);
  {
    const rvec beta = svd.matrixU().transpose() * y;
    for (int i = 0; i < rank; ++i)
      particular += (beta[i] / svd.singularValues()[i]) * svd.matrixV().col(i);
  }
  require((U * particular - y).norm() <= 1e-9 * (1.0 + y.norm()), ErrorCode::Infeasible,
          "y is not in the range of U");

  if (kernel_dim == 0) {
    // Rounded measurements of overdetermined systems are consistent only to
    // rounding, which exact pivoting would flag; least squares is the right
    // tool here and the answer is unique regardless.
    OracleResult out;
    out.method = OracleResult::Method::Injective;
    out.x = particular;
    out.objective = particular.cwiseAbs().sum();
    out.unique = true;
    return out;
  }
  if (n <= kOracleLpMaxDim) {
    try {
      return solve_rational_lp(U, y);
    } catch (const Error& e) {
      // Dependent rows that hold only to rounding break exact feasibility;
      // the kernel-line search still answers when the nullspace is a line.
      if (e.code() != ErrorCode::Infeasible || kernel_dim != 1) throw;
    }
  }
  require(kernel_dim == 1, ErrorCode::TooLarge,
          "exact oracle needs n <= 16 or nullspace dimension <= 1");
  return solve_kernel_line(particular, svd.matrixV().col(n - 1));
}

}  // namespace ripl
