#include "doctest.h"

#include <cmath>
#include <numbers>

#include "wavemaps/exact_fields.hpp"
#include "wavemaps/harmonic.hpp"
#include "wavemaps/quadrature.hpp"

using namespace wavemaps;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n - 1") {
  for (int n : {1, 2, 5, 16}) {
    const Rule1D r = gauss_legendre(n);
    double sum = 0, moment = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      sum += r.weights[i];
      moment += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
    }
    CHECK(sum == doctest::Approx(2.0));
    CHECK(moment == doctest::Approx(2.0 / (2 * n - 1)));
  }
  const Rule1D c = composite_gauss(0.0, 3.0, 3, 4);
  double integral = 0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) integral += c.weights[i] * std::exp(c.nodes[i]);
  CHECK(integral == doctest::Approx(std::exp(3.0) - 1).epsilon(1e-7));
}

TEST_CASE("sphere rule weights and low moments") {
  const SphereRule s = make_sphere_rule(8, 16);
  double total = 0, z2 = 0, x = 0;
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    total += s.weights[i];
    z2 += s.weights[i] * s.directions[i].z() * s.directions[i].z();
    x += s.weights[i] * s.directions[i].x();
    CHECK(s.directions[i].norm() == doctest::Approx(1.0));
  }
  CHECK(total == doctest::Approx(4 * pi));
  CHECK(z2 == doctest::Approx(4 * pi / 3));
  CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("ball and shell volumes") {
  const BallRule rule{4, 2, 8, 16};
  const auto one = [](const Eigen::Vector3d&) { return 1.0; };
  CHECK(integrate_ball(one, Eigen::Vector3d(1, 2, 3), 0.5, rule) ==
        doctest::Approx(4 * pi / 3 * 0.125));
  CHECK(integrate_shell(one, Eigen::Vector3d::Zero(), 0.2, 0.5, rule) ==
        doctest::Approx(4 * pi / 3 * (0.125 - 0.008)));
  // An off-center focus must not change a smooth integral.
  const auto r2 = [](const Eigen::Vector3d& x) { return x.squaredNorm(); };
  CHECK(integrate_ball(r2, Eigen::Vector3d::Zero(), 1.0, BallRule{16, 4, 32, 64},
                       Eigen::Vector3d(0.2, 0.1, -0.3)) == doctest::Approx(4 * pi / 5).epsilon(1e-6));
}

TEST_CASE("focused ball rule resolves an inverse-square singularity") {
  // int_{B(0,1)} |x - a|^{-2} for |a| = 0.3, closed form 2 pi (1 + (1 - a^2)/(2a) log((1+a)/(1-a))).
  const double a = 0.3;
  const Eigen::Vector3d focus(0, 0, a);
  const auto f = [&](const Eigen::Vector3d& x) { return 1 / (x - focus).squaredNorm(); };
  const double exact = 2 * pi * (1 + (1 - a * a) / (2 * a) * std::log((1 + a) / (1 - a)));
  CHECK(integrate_ball(f, Eigen::Vector3d::Zero(), 1.0, BallRule{16, 4, 32, 64}, focus) ==
        doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("energies of the constant map vanish and the balance is exact") {
  const ConstantField c(Eigen::Vector3d(0, 0, 1));
  const ConeSpec cone = ConeSpec::from_base(Eigen::Vector3d::Zero(), 0.5, 0.0, 0.2);
  const BalanceReport r = energy_balance(c, cone, 0.0, 0.2, BalanceRules{}.coarse());
  CHECK(r.e_base == 0.0);
  CHECK(r.flux == 0.0);
  CHECK(r.balance == 0.0);
  CHECK(penalized_energy_on_disk(c, disk_at(cone, 0.0), 10.0) == 0.0);
}

TEST_CASE("stationary hedgehog energy on a disk") {
  // |grad v_1|^2 = 2 / |x|^2, so E(B_R) = 4 pi R.
  const HarmonicMapField v(1.0);
  const DiskSpec d{0.0, Eigen::Vector3d::Zero(), 0.5};
  CHECK(energy_on_disk(v, d) == doctest::Approx(2 * pi).epsilon(1e-8));
}

TEST_CASE("plane wave balance vanishes to quadrature accuracy") {
  const Eigen::Vector3d k(0.7, -0.4, 1.1);
  const GeodesicWave w(k.norm(), k);
  const ConeSpec cone = ConeSpec::from_base(Eigen::Vector3d(0.1, 0.2, -0.1), 0.6, 0.0, 0.3);
  const BalanceReport r = energy_balance(w, cone, 0.0, 0.3);
  CHECK(std::abs(r.balance) < 1e-8);
  CHECK(r.recomputed_balance() == doctest::Approx(r.balance));
}

TEST_CASE("mollified flux tends to 2 sqrt 2 times the flux") {
  const Eigen::Vector3d k(0.7, -0.4, 1.1);
  const GeodesicWave w(k.norm(), k);
  const ConeSpec cone = ConeSpec::from_base(Eigen::Vector3d::Zero(), 0.5, 0.0, 0.2);
  const double flux = flux_on_cone(w, cone, 0.0, 0.2);
  const double m = mollified_flux(w, Eigen::Vector3d::Zero(), 0.5, 0.2, 1e-3);
  CHECK(m == doctest::Approx(2 * std::numbers::sqrt2 * flux).epsilon(1e-3));
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));
}
