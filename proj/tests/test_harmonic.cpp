#include "doctest.h"

#include <cmath>

#include "wavemaps/exact_fields.hpp"
#include "wavemaps/harmonic.hpp"

using namespace wavemaps;

namespace {

/// u_tt - Lap u - (|grad u|^2 - |u_t|^2) u, which vanishes for wave maps.
double wave_map_defect(const FieldEvaluator& f, const SpacetimePoint& p) {
  const JetSample j = f.jet(p);
  const double contraction = j.grad.squaredNorm() - j.dt.squaredNorm();
  return (f.wave_operator(p) - contraction * j.value).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("point charge closed form") {
  CHECK(s_lambda(1.0) == 0.0);
  CHECK(s_lambda(2.0) == doctest::Approx(-10.91779).epsilon(1e-6));
  CHECK(s_lambda(1.5) == doctest::Approx(-6.64814).epsilon(1e-6));
  CHECK(s_lambda(3.0) == doctest::Approx(-15.88466).epsilon(1e-6));
  for (double l : {0.3, 0.5, 0.9, 1.2, 2.0, 4.0}) CHECK(s_lambda(1 / l) == doctest::Approx(-s_lambda(l)));
}

TEST_CASE("point charge Taylor branch joins the closed form") {
  for (double d : {-1.001e-3, -0.999e-3, 0.999e-3, 1.001e-3}) {
    CHECK(s_lambda(1 + d) == doctest::Approx(s_lambda(1 + d * (1 + 1e-9))).epsilon(1e-5));
  }
  CHECK(std::abs(s_lambda(1 + 1e-4)) < 1e-2);
}

TEST_CASE("stereographic projection round trip") {
  for (const Eigen::Vector3d x : {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0.6, 0, 0.8),
                                  Eigen::Vector3d(0, 0.28, -0.96), Eigen::Vector3d(0, 0, 1)}) {
    CHECK((stereographic_inv(stereographic(x)) - x).norm() < 1e-12);
  }
}

TEST_CASE("dilated hedgehog is a sphere-valued harmonic map") {
  for (double l : {1.0, 2.0, 0.5}) {
    const HarmonicMapField v(l);
    for (const Eigen::Vector3d x : {Eigen::Vector3d(0.3, -0.2, 0.5), Eigen::Vector3d(-0.4, 0.1, -0.2)}) {
      const SpacetimePoint p(0.0, x);
      CHECK(v.jet(p).value.norm() == doctest::Approx(1.0));
      CHECK(wave_map_defect(v, p) < 1e-5);
    }
  }
  CHECK((harmonic_v(1.0, Eigen::Vector3d(0.3, 0.4, 1.2)) - Eigen::Vector3d(0.3, 0.4, 1.2) / 1.3).norm() <
        1e-12);
}

TEST_CASE("boosted hedgehog solves the wave map equation off its singular line") {
  const BoostedHarmonicField phi(MapParams{2.0, 0.6});
  const SpacetimePoint p(0.4, 0.2, -0.1, 0.5);
  CHECK(wave_map_defect(phi, p) < 1e-5);
  REQUIRE(phi.singular_point(0.5).has_value());
  CHECK((*phi.singular_point(0.5) - Eigen::Vector3d(0, 0, 0.3)).norm() < 1e-15);
  CHECK_FALSE(phi.defined_at(SpacetimePoint(0.5, 0, 0, 0.3)));
  CHECK(phi.defined_at(p));
}

TEST_CASE("initial data match the boosted field at t = 0") {
  const MapParams params{2.0, 0.6};
  const BoostedHarmonicField phi(params);
  const CauchyData data = initial_data(params);
  const SpacetimePoint p(0.0, 0.3, 0.1, -0.2);
  const JetSample j = phi.jet(p);
  CHECK((data.f->jet(p).value - j.value).norm() < 1e-12);
  CHECK((data.f->jet(p).grad - j.grad).norm() < 1e-10);
  CHECK((data.g->jet(p).value - j.dt).norm() < 1e-12);
}

TEST_CASE("plane and modulated geodesic waves are exact") {
  const Eigen::Vector3d k(0.7, -0.4, 1.1);
  const GeodesicWave plane(k.norm(), k);
  const GeodesicWave modulated(k.norm(), k, 0.3, Eigen::Vector3d(0.5, 1.2, -0.8));
  const SpacetimePoint p(0.3, -0.2, 0.5, 0.1);
  CHECK(wave_map_defect(plane, p) < 1e-10);
  CHECK(wave_map_defect(modulated, p) < 1e-10);
}

TEST_CASE("invalid map parameters") {
  CHECK_THROWS(MapParams{-1.0, 0.5}.validate());
  CHECK_THROWS(MapParams{2.0, 1.0}.validate());
  CHECK_NOTHROW(MapParams{2.0, 0.0}.validate());
}
