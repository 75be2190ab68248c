#include "ripl/solver.hpp"

#include <cmath>

#include "ripl/rng.hpp"

namespace ripl {

void SolveOptions::validate() const {
  require(max_iters >= 1, ErrorCode::ParameterOrder, "max_iters must be >= 1");
  require(tol_primal > 0 && tol_dual > 0 && tol_feas > 0, ErrorCode::ParameterOrder,
          "tolerances must be positive");
  require(step_scale > 0 && step_scale < 1, ErrorCode::ParameterOrder,
          "step_scale must lie in (0,1)");
}

double estimate_operator_norm(const SensingOperator& U, int iters) {
  Rng rng(0x52495054ull);  // fixed start vector, independent of caller state
  cvec v(U.n_in());
  for (int j = 0; j < v.size(); ++j) v[j] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  v /= v.norm();
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    cvec w = U.adjoint(U.forward(v));
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    lambda = norm;  // eigenvalue estimate of U*U
    v = w / norm;
  }
  return std::sqrt(lambda);
}

namespace {

// Complex soft threshold: magnitude shrinkage, phase preserved.
inline std::complex<double> shrink(const std::complex<double>& v, double t) {
  const double m = std::abs(v);
  if (m <= t) return {0.0, 0.0};
  return v * ((m - t) / m);
}

// Primal-dual splitting on the saddle formulation of
//   min sum_j w_j |x_j|  s.t.  ||Ux - y||_2 <= eps,
// with the dual update absorbing the l2-ball constraint.
SolveResult primal_dual_l1(const SensingOperator& U, const cvec& y, const rvec* w, double eps,
                           const SolveOptions& opts) {
  opts.validate();
  require(static_cast<int>(y.size()) == U.n_out(), ErrorCode::DimensionMismatch,
          "measurement length does not match the operator");
  require(eps >= 0.0, ErrorCode::ParameterOrder, "eps must be non-negative");
  if (w != nullptr)
    require(static_cast<int>(w->size()) == U.n_in(), ErrorCode::LengthMismatch,
            "one weight per unknown is required");

  const int n = U.n_in(), m = U.n_out();
  const double L = estimate_operator_norm(U, opts.norm_power_iters);
  const double step = L > 0 ? opts.step_scale / L : 1.0;
  const double tau = step, sigma = step;

  cvec x = cvec::Zero(n), xbar = x, z = cvec::Zero(m);
  const double ynorm = y.norm();

  SolveResult res;
  auto objective = [&](const cvec& v) {
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += (w ? (*w)[j] : 1.0) * std::abs(v[j]);
    return obj;
  };

  int it = 0;
  for (; it < opts.max_iters; ++it) {
    // dual ascent with the conjugate of the eps-ball indicator
    cvec u = z + sigma * (U.forward(xbar) - y);
    if (eps > 0.0) {
      const double un = u.norm();
      const double f = un > sigma * eps ? 1.0 - sigma * eps / un : 0.0;
      u *= f;
    }
    const cvec z_new = u;

    cvec g = x - tau * U.adjoint(z_new);
    cvec x_new(n);
    for (int j = 0; j < n; ++j) x_new[j] = shrink(g[j], tau * (w ? (*w)[j] : 1.0));

    const cvec dx = x - x_new;
    const cvec dz = z - z_new;
    xbar = x_new + opts.overrelax * (x_new - x);
    x = x_new;
    z = z_new;

    if ((it + 1) % opts.check_every == 0 || it + 1 == opts.max_iters) {
      const double pr = (dx / tau - U.adjoint(dz)).norm() / (1.0 + x.norm());
      const double du = (dz / sigma - U.forward(dx)).norm() / (1.0 + z.norm());
      const double feas = std::max(0.0, (U.forward(x) - y).norm() - eps);
      res.primal_residual = pr;
      res.dual_residual = du;
      res.feasibility_residual = feas;
      if (pr <= opts.tol_primal && du <= opts.tol_dual && feas <= opts.tol_feas * (1.0 + ynorm)) {
        res.converged = true;
        ++it;
        break;
      }
    }
  }

  res.x = x;
  res.objective = objective(x);
  res.iterations = it;
  res.feasibility_residual = std::max(0.0, (U.forward(x) - y).norm() - eps);
  return res;
}

}  // namespace

SolveResult solve_bp(const SensingOperator& U, const cvec& y, const SolveOptions& opts) {
  return primal_dual_l1(U, y, nullptr, 0.0, opts);
}

SolveResult solve_bpdn(const SensingOperator& U, const cvec& y, double eps,
                       const SolveOptions& opts) {
  return primal_dual_l1(U, y, nullptr, eps, opts);
}

SolveResult solve_weighted_l1(const SensingOperator& U, const cvec& y, const Weights& w,
                              double eps, const SolveOptions& opts) {
  const rvec values = w.values();
  return primal_dual_l1(U, y, &values, eps, opts);
}

}  // namespace ripl
