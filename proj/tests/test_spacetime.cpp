#include "doctest.h"

#include "wavemaps/spacetime.hpp"

using namespace wavemaps;

TEST_CASE("boost preserves the Minkowski metric") {
  for (double nu : {-0.9, -0.3, 0.0, 0.6, 0.99}) {
    const LorentzBoost b = boost_matrix(nu);
    const Eigen::Matrix4d eta = minkowski_metric<double>();
    CHECK((b.matrix.transpose() * eta * b.matrix - eta).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b.matrix * b.inverse().matrix - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("boost layout along x3") {
  const LorentzBoost b = boost_matrix(0.6);
  CHECK(b.theta == doctest::Approx(1.25));
  CHECK(b.matrix(0, 3) == doctest::Approx(-0.75));
  CHECK(b.matrix(3, 0) == doctest::Approx(-0.75));
  CHECK(b.matrix(1, 1) == 1.0);
  // The moving point (t, 0, 0, nu t) is mapped to the spatial origin.
  const SpacetimePoint p = apply_boost(b, SpacetimePoint(2.0, 0, 0, 1.2));
  CHECK(p.x.norm() < 1e-14);
  CHECK(p.t == doctest::Approx(2.0 / b.theta));
}

TEST_CASE("superluminal boosts are rejected") {
  CHECK_THROWS_AS(boost_matrix(1.0), DomainError);
  CHECK_THROWS_AS(boost_matrix(-1.5), DomainError);
}

TEST_CASE("cone from base and its disks") {
  const ConeSpec c = ConeSpec::from_base(Eigen::Vector3d(0.1, 0, 0), 0.5, 0.0, 0.2);
  CHECK(c.apex.t == doctest::Approx(0.5));
  CHECK(c.radius_at(0.0) == doctest::Approx(0.5));
  CHECK(c.radius_at(0.2) == doctest::Approx(0.3));
  const DiskSpec d = disk_at(c, 0.1);
  CHECK(d.radius == doctest::Approx(0.4));
  CHECK(c.contains(SpacetimePoint(0.1, 0.45, 0, 0)));
  CHECK_FALSE(c.contains(SpacetimePoint(0.1, 0.55, 0, 0)));
  CHECK_FALSE(c.contains(SpacetimePoint(0.25, 0.1, 0, 0)));
  CHECK_THROWS_AS(disk_at(c, 0.3), RangeError);
  CHECK_THROWS_AS(ConeSpec::from_base(Eigen::Vector3d::Zero(), 0.5, 0.0, 0.5), DomainError);
}
