#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "wavemaps/exact_fields.hpp"
#include "wavemaps/grid_field.hpp"

using namespace wavemaps;

namespace {

AffineField affine() {
  Eigen::Matrix<double, 3, 4> slope;
  slope << 0.5, 1.0, -2.0, 0.25,  //
      -1.0, 0.3, 0.7, 1.5,        //
      0.2, -0.4, 0.0, 2.0;
  return AffineField(Eigen::Vector3d(0.1, -0.3, 0.9), slope);
}

}  // namespace

TEST_CASE("affine fields are interpolated exactly") {
  const AffineField f = affine();
  const GridField g = sample_to_grid(f, Eigen::Vector3d(-0.5, -0.5, -0.5), 0.1,
                                     Eigen::Vector3i(11, 11, 11), 0.0, 0.05, 5);
  for (const SpacetimePoint p : {SpacetimePoint(0.07, 0.013, -0.22, 0.31),
                                 SpacetimePoint(0.18, -0.33, 0.29, 0.0),
                                 SpacetimePoint(0.0, 0.0, 0.0, 0.0)}) {
    const JetSample a = g.jet(p), b = f.jet(p);
    CHECK((a.value - b.value).norm() < 1e-13);
    CHECK((a.dt - b.dt).norm() < 1e-12);
    CHECK((a.grad - b.grad).norm() < 1e-12);
  }
}

TEST_CASE("time interpolation is exact for quadratics") {
  // u = (t^2, 0, 0) on every node.
  GridField g(Eigen::Vector3d::Zero(), Eigen::Vector3d::Constant(1.0), Eigen::Vector3i(4, 4, 4), 0.0,
              0.1);
  for (int l = 0; l < 4; ++l) {
    Eigen::ArrayXd lev = Eigen::ArrayXd::Zero(3 * 64);
    lev.head(64).setConstant(std::pow(0.1 * l, 2));
    g.push_level(lev);
  }
  for (double t : {0.0, 0.05, 0.1, 0.17, 0.3}) {
    const JetSample j = g.jet(SpacetimePoint(t, 1.5, 1.5, 1.5));
    CHECK(j.value[0] == doctest::Approx(t * t));
    CHECK(j.dt[0] == doctest::Approx(2 * t));
  }
}

TEST_CASE("points outside the slab are rejected") {
  const AffineField f = affine();
  const GridField g = sample_to_grid(f, Eigen::Vector3d::Zero(), 0.1, Eigen::Vector3i(6, 6, 6), 0.0,
                                     0.1, 2);
  CHECK(g.contains(SpacetimePoint(0.05, 0.25, 0.25, 0.25)));
  CHECK_FALSE(g.contains(SpacetimePoint(0.05, 0.05, 0.25, 0.25)));  // inside the margin
  CHECK_FALSE(g.contains(SpacetimePoint(0.2, 0.25, 0.25, 0.25)));
  CHECK_THROWS_AS(g.jet(SpacetimePoint(0.05, 0.45, 0.25, 0.25)), RangeError);
}

TEST_CASE("binary container round trip is bit exact") {
  const GeodesicWave w(1.0, Eigen::Vector3d(0.6, 0.0, 0.8));
  const GridField g = sample_to_grid(w, Eigen::Vector3d(-0.3, 0.1, 0.2), 0.07, Eigen::Vector3i(5, 6, 7),
                                     0.25, 0.03, 3);
  std::stringstream buf;
  g.write(buf);
  const GridField back = GridField::read(buf);
  CHECK(back == g);
  CHECK(back.level(2).data()[17] == g.level(2).data()[17]);

  const auto path = std::filesystem::temp_directory_path() / "wavemaps_grid_roundtrip.bin";
  g.save(path.string());
  CHECK(GridField::load(path.string()) == g);
  std::filesystem::remove(path);
}

TEST_CASE("corrupt containers are rejected") {
  std::stringstream bad("NOTAGRID and some bytes");
  CHECK_THROWS(GridField::read(bad));
  const GeodesicWave w(1.0, Eigen::Vector3d(1, 0, 0));
  const GridField g = sample_to_grid(w, Eigen::Vector3d::Zero(), 0.1, Eigen::Vector3i(4, 4, 4), 0.0, 0.1, 2);
  std::stringstream buf;
  g.write(buf);
  std::string bytes = buf.str();
  bytes.resize(bytes.size() - 8);
  std::stringstream cut(bytes);
  CHECK_THROWS_AS(GridField::read(cut), RangeError);
}
