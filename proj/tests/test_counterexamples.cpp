#include <doctest.h>

#include <cmath>

#include "ripl/counterexamples.hpp"
#include "ripl/oracle.hpp"
#include "ripl/rng.hpp"

using namespace ripl;

TEST_CASE("covering instances verify") {
  auto [a, b] = covering_counterexamples();

  VerifyOptions opts;
  const auto ra = verify(a, opts);
  CHECK(ra.all_pass);
  const auto rb = verify(b, opts);
  CHECK(rb.all_pass);

  // spot-check the headline numbers
  CHECK(ratio_constant(a.pattern).infinite);
  const auto oa = oracle_bp(a.U, a.U * a.x1);
  CHECK(oa.x[1] == 0.5);
  CHECK(oa.objective == 0.5);
}

TEST_CASE("eta-dependence construction") {
  const auto inst = construct_eta_dependence(1, 4);
  CHECK(inst.U.rows() == 19);
  CHECK(inst.U.cols() == 20);
  CHECK(inst.z1.cwiseAbs().sum() == 20.0);  // C^2 + C
  CHECK(inst.z2.cwiseAbs().sum() == 12.0);  // C^2 - C
  CHECK((inst.U * inst.kernel).norm() < 1e-10);
  CHECK(ratio_constant(inst.pattern).value() == 16.0);

  const auto rep = verify(inst);
  for (const auto& c : rep.claims) {
    INFO(c.name, " measured=", c.measured, " expected=", c.expected, " ", c.detail);
    CHECK(c.pass);
  }
  CHECK(rep.all_pass);

  CHECK_THROWS_WITH_AS(construct_eta_dependence(4, 3), doctest::Contains("ParameterOrder"), Error);
}

TEST_CASE("orthonormal extension is exact") {
  const auto inst = construct_eta_dependence(1, 6);
  // rows of U are orthonormal and the kernel is the distinguished direction
  const rmat G = inst.U * inst.U.transpose();
  CHECK((G - rmat::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((inst.U * inst.kernel).norm() < 1e-10);
  CHECK(std::abs(inst.kernel.norm() - 1.0) < 1e-12);
}

TEST_CASE("l-dependence construction") {
  const auto inst = construct_l_dependence(1, 4);
  CHECK(inst.pattern.levels() == 17);
  CHECK(ratio_constant(inst.pattern).value() == 1.0);
  CHECK(num_elements(inst.pattern) == 17);

  const auto rep = verify(inst);
  for (const auto& c : rep.claims) {
    INFO(c.name, " measured=", c.measured, " expected=", c.expected, " ", c.detail);
    CHECK(c.pass);
  }
  CHECK(rep.all_pass);
}

TEST_CASE("sharpness construction geometry") {
  const auto inst = construct_l2_sharpness(1, 8, 0.5, SharpnessVariant::Eta);
  CHECK(inst.params.omega == 32);
  CHECK(inst.U.cols() == 97);
  CHECK(std::abs(inst.z1.norm() - 1.0) < 1e-12);
  const auto approx = best_sm_approx(inst.z1.cast<std::complex<double>>(), inst.pattern);
  CHECK(approx.sigma_l1 ==
        doctest::Approx(inst.params.lambda * inst.params.omega).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(construct_l2_sharpness(1, 4, 0.25, SharpnessVariant::Eta),
                       doctest::Contains("ParameterInfeasible"), Error);
}

TEST_CASE("sharpness instances verify at reduced trial counts") {
  VerifyOptions opts;
  opts.nsp_trials = 4000;  // the full count runs in the acceptance suite
  opts.nsp_halved_rho_trials = 100;
  opts.lower_bound_budget = 8;

  for (auto variant : {SharpnessVariant::Eta, SharpnessVariant::Levels}) {
    const auto inst = construct_l2_sharpness(1, 8, 0.5, variant);
    const auto rep = verify(inst, opts);
    for (const auto& c : rep.claims) {
      INFO(inst.name, ": ", c.name, " measured=", c.measured, " expected=", c.expected);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("norm operator matches the dense matrix") {
  Rng rng(71);
  for (const auto& inst :
       {construct_eta_dependence(1, 5), construct_l2_sharpness(1, 8, 0.5, SharpnessVariant::Eta)}) {
    const auto op = instance_norm_operator(inst);
    for (int t = 0; t < 20; ++t) {
      cvec v(inst.U.cols());
      for (int i = 0; i < v.size(); ++i)
        v[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
      const double dense_norm = (inst.U.cast<std::complex<double>>() * v).norm();
      CHECK(op.forward(v).norm() == doctest::Approx(dense_norm).epsilon(1e-10));
    }
  }
}

TEST_CASE("tampered instances are caught") {
  auto inst = construct_eta_dependence(1, 4);
  inst.z1[0] = -inst.z1[0];  // break the construction
  const auto rep = verify(inst);
  CHECK_FALSE(rep.all_pass);
}
