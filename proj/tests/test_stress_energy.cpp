#include "doctest.h"

#include <memory>

#include "wavemaps/exact_fields.hpp"
#include "wavemaps/stress_energy.hpp"

using namespace wavemaps;

TEST_CASE("stress tensor of a jet") {
  JetSample j;
  j.dt = Eigen::Vector3d(1, 0, 0);
  j.grad(1, 0) = 2;  // d_1 u = (0, 2, 0)
  const Eigen::Matrix4d T = stress_tensor(j);
  // Index down with eta_00 = -1: T_00 is minus the energy density.
  CHECK(T(0, 0) == doctest::Approx(-energy_density(j)));
  CHECK(T(0, 0) == doctest::Approx(-2.5));
  CHECK(T(1, 1) == doctest::Approx(0.5 * 3 - 4));
  CHECK(T(0, 1) == 0.0);
  CHECK((T - T.transpose()).norm() == 0.0);
}

TEST_CASE("flux density vanishes for outgoing null data") {
  // u depends on r - t only along the normal: grad u = n (x) a, u_t = -a  ->  |grad u - u_t n|... nonzero,
  // while u depending on r + t gives grad u = n (x) a, u_t = a  ->  zero flux.
  const Eigen::Vector3d n(0, 0.6, 0.8);
  JetSample j;
  j.dt = Eigen::Vector3d(0.3, -0.1, 0.2);
  j.grad = j.dt * n.transpose();
  CHECK(flux_density(j, n) < 1e-16);
  j.dt = -j.dt;
  CHECK(flux_density(j, n) > 0.0);
  CHECK(flux_form_Q(j, j, n) == doctest::Approx(2 * flux_density(j, n)));
}

TEST_CASE("stress divergence of exact wave maps converges") {
  const Eigen::Vector3d k(0.7, -0.4, 1.1);
  const GeodesicWave w(k.norm(), k, 0.3, Eigen::Vector3d(0.5, 1.2, -0.8));
  const SpacetimePoint p(0.3, -0.2, 0.5, 0.1);
  const double a = divergence_T(w, p, 0.02).norm();
  const double b = divergence_T(w, p, 0.01).norm();
  CHECK(b < 1e-3);
  CHECK(std::log2(a / b) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("boost transformation law for the stress tensor") {
  auto cubic = std::make_shared<ScalarPolynomialField>(ScalarPolynomialField::generic_cubic());
  const SpacetimePoint p(0.3, -0.2, 0.5, 0.1);
  const TransformationCheck id = transformation_check(cubic, boost_matrix(0.0), p, 0.01);
  CHECK((id.lhs - id.rhs).cwiseAbs().maxCoeff() <= 1e-12);
  const TransformationCheck c1 = transformation_check(cubic, boost_matrix(0.6), p, 0.02);
  const TransformationCheck c2 = transformation_check(cubic, boost_matrix(0.6), p, 0.01);
  const double e1 = (c1.lhs - c1.rhs).norm(), e2 = (c2.lhs - c2.rhs).norm();
  CHECK(std::log2(e1 / e2) > 1.9);
}

TEST_CASE("bump tests have unit mass") {
  const BumpTest spatial{SpacetimePoint(0.0, Eigen::Vector3d::Zero()), 0.5, false};
  const double total = integrate_ball(
      [&](const Eigen::Vector3d& x) { return spatial.value(SpacetimePoint(0.0, x)); },
      Eigen::Vector3d::Zero(), 0.5, BallRule{16, 4, 16, 32});
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  const BumpTest st{SpacetimePoint(0.1, 0.2, 0.3, 0.4), 0.3, true};
  CHECK(st.value(SpacetimePoint(0.1, 0.2, 0.3, 0.75)) == 0.0);
  // gradient against a centered difference
  const SpacetimePoint q(0.15, 0.25, 0.3, 0.35);
  const double h = 1e-5;
  const double fd = (st.value(SpacetimePoint(q.t + h, q.x)) - st.value(SpacetimePoint(q.t - h, q.x))) / (2 * h);
  CHECK(st.gradient(q)[0] == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("weak residual") {
  const BumpTest test{SpacetimePoint(0.1, 0.3, 0.2, 0.1), 0.15, true};
  const ConstantField c(Eigen::Vector3d(0, 0, 1));
  CHECK(weak_residual(c, test).cwiseAbs().maxCoeff() <= 1e-12);
  const Eigen::Vector3d k(0.7, -0.4, 1.1);
  const GeodesicWave w(k.norm(), k);
  CHECK(weak_residual(w, test, SpacetimeBoxRule{2, 8}).cwiseAbs().maxCoeff() < 1e-4);
  const BoostedHarmonicField phi(MapParams{2.0, 0.6});
  const BumpTest on_line{SpacetimePoint(0.1, 0.0, 0.0, 0.06), 0.15, true};
  CHECK_THROWS_AS(weak_residual(phi, on_line), RangeError);
}

TEST_CASE("point charge of the hedgehog family") {
  const BumpTest test{SpacetimePoint(0.0, Eigen::Vector3d::Zero()), 1.0, false};
  const double psi0 = test.value(SpacetimePoint(0.0, Eigen::Vector3d::Zero()));
  ChargeRule coarse;
  coarse.ball = BallRule{8, 4, 16, 32};
  const Eigen::Vector3d q1 = recover_point_charge(MapParams{1.0, 0.6}, test, coarse) / psi0;
  CHECK(q1.norm() <= 1e-6);
  const Eigen::Vector3d q2 = recover_point_charge(MapParams{2.0, 0.6}, test, coarse) / psi0;
  CHECK(std::abs(q2[0]) + std::abs(q2[1]) < 1e-8);
  // Odd under lambda -> 1 / lambda, like the closed form.
  const Eigen::Vector3d qh = recover_point_charge(MapParams{0.5, 0.6}, test, coarse) / psi0;
  CHECK(qh[2] == doctest::Approx(-q2[2]).epsilon(1e-4));
  const BumpTest off{SpacetimePoint(0.0, 0.1, 0, 0), 1.0, false};
  CHECK_THROWS(recover_point_charge(MapParams{2.0, 0.6}, off, coarse));
}

TEST_CASE("integration by parts identity on a cone") {
  const TimePowerBump b(2, Eigen::Vector3d(1.0, 0.5, -0.3), Eigen::Vector3d(0.05, -0.1, 0.0), 0.7);
  const CompIdentity c = comp_identity_check(b, b, 0.8, 0.3, SolidConeRule::midpoint(16));
  CHECK_FALSE(c.base_term_missing);
  CHECK(std::abs(c.defect()) < 1e-2 * std::abs(c.lhs));
  const ConstantField zero(Eigen::Vector3d::Zero());
  const CompIdentity z = comp_identity_check(b, zero, 0.8, 0.3, SolidConeRule::midpoint(4));
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  const Eigen::Vector3d k(0.7, -0.4, 1.1);
  const GeodesicWave w(k.norm(), k);
  CHECK(comp_identity_check(b, w, 0.8, 0.3, SolidConeRule::midpoint(4)).base_term_missing);
}
