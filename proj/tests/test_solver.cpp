#include "doctest.h"

#include <cmath>
#include <memory>
#include <fstream>
#include <numbers>

#include "wavemaps/exact_fields.hpp"
#include "wavemaps/harmonic.hpp"
#include "wavemaps/solver.hpp"

using namespace wavemaps;

namespace {

SolverConfig small_box() {
  SolverConfig c;
  c.half_width = 0.5;
  c.spacing = 1.0 / 16;
  c.t_end = 0.25;
  return c;
}

}  // namespace

TEST_CASE("time step selection") {
  SolverConfig c = small_box();
  c.penalty = 40;
  CHECK(c.stability_bound() == doctest::Approx(0.5 / 40));
  const double dt = c.time_step();
  CHECK(dt <= c.stability_bound());
  CHECK(c.steps() * dt == doctest::Approx(c.t_end));
  CHECK(c.cells() == 16);
  CHECK(c.cell_center(0) == doctest::Approx(-0.5 + 1.0 / 32));

  c.dt = 0.02;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.dt = 0;
  c.spacing = 0.3;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("a constant sphere point is an exact equilibrium") {
  SolverConfig c = small_box();
  c.penalty = 30;
  const ConstantField north(Eigen::Vector3d(0, 0, 1));
  const ConstantField still(Eigen::Vector3d::Zero());
  const RunResult r = run(c, north, still);
  CHECK((r.final_state.current - r.final_state.previous).abs().maxCoeff() == 0.0);
  for (const LedgerRecord& rec : r.ledger.records) CHECK(rec.total == 0.0);
  CHECK(r.ledger.records.size() == static_cast<std::size_t>(c.steps() + 1));
}

TEST_CASE("finite propagation speed of the discrete scheme") {
  // A bump of radius 0.1 on the constant state; each step moves information by
  // one cell per axis, so cells farther than (steps + 1) h in the max norm from
  // the support never change.
  SolverConfig c = small_box();
  c.spacing = 1.0 / 32;
  c.t_end = 0.05;
  c.penalty = 10;
  auto north = std::make_shared<ConstantField>(Eigen::Vector3d(0, 0, 1));
  auto bump = std::make_shared<TimePowerBump>(0, Eigen::Vector3d(0.2, -0.1, 0.0), Eigen::Vector3d::Zero(), 0.1);
  const LinearCombination f(1.0, north, 1.0, bump);
  const ConstantField still(Eigen::Vector3d::Zero());
  const RunResult r = run(c, f, still);
  const double reach = 0.1 + (c.steps() + 1) * c.spacing;
  int untouched = 0, moved = 0;
  for (int k = 0; k < c.cells(); ++k) {
    for (int j = 0; j < c.cells(); ++j) {
      for (int i = 0; i < c.cells(); ++i) {
        const Eigen::Vector3d x(c.cell_center(i), c.cell_center(j), c.cell_center(k));
        const Eigen::Vector3d u = cell_value(r.final_state.current, c, i, j, k);
        if (x.cwiseAbs().maxCoeff() > reach) {
          ++untouched;
          CHECK(u == Eigen::Vector3d(0, 0, 1));
        } else if (u != Eigen::Vector3d(0, 0, 1)) {
          ++moved;
        }
      }
    }
  }
  CHECK(untouched > 0);
  CHECK(moved > 0);
}

TEST_CASE("periodic plane wave keeps its energy") {
  SolverConfig c;
  c.half_width = 1.0;
  c.spacing = 1.0 / 8;
  c.boundary = BoundaryMode::periodic;
  c.t_end = 0.5;
  const Eigen::Vector3d k = std::numbers::pi * Eigen::Vector3d(1, 1, 1);
  auto wave = std::make_shared<GeodesicWave>(k.norm(), k);
  const CauchyData data = trace_at_zero(wave);
  const RunResult r = run(c, *data.f, *data.g);
  CHECK(r.ledger.relative_drift() < 1e-3);
  CHECK(r.ledger.records.front().penalty == 0.0);
  const Eigen::Vector3d u = cell_value(r.final_state.current, c, 3, 4, 5);
  const Eigen::Vector3d exact =
      wave->jet(SpacetimePoint(r.final_state.time, Eigen::Vector3d(c.cell_center(3), c.cell_center(4), c.cell_center(5)))).value;
  CHECK((u - exact).norm() < 0.1);
}

TEST_CASE("hedgehog data need a cell-centered grid") {
  SolverConfig c = small_box();
  const CauchyData data = initial_data(MapParams{2.0, 0.6});
  c.cell_centered = false;
  CHECK_THROWS_AS(init_from_data(*data.f, *data.g, c), DomainError);
  c.cell_centered = true;
  CHECK_NOTHROW(init_from_data(*data.f, *data.g, c));
}

TEST_CASE("trusted region") {
  const SolverConfig c = small_box();
  CHECK(cone_trusted(c, ConeSpec::from_base(Eigen::Vector3d::Zero(), 0.3, 0.0, 0.1)));
  CHECK_FALSE(cone_trusted(c, ConeSpec::from_base(Eigen::Vector3d(0.3, 0, 0), 0.3, 0.0, 0.1)));
  const auto inside = trusted_region(c, ConeSpec::from_base(Eigen::Vector3d::Zero(), 0.45, 0.0, 0.2));
  CHECK(inside(SpacetimePoint(0.0, 0.1, 0.0, 0.0)));
  CHECK_FALSE(inside(SpacetimePoint(0.1, 0.4, 0.0, 0.0)));
}

TEST_CASE("streamed cone balance of a smooth solution is small") {
  SolverConfig c;
  c.half_width = 1.0;
  c.spacing = 1.0 / 16;
  c.boundary = BoundaryMode::periodic;
  c.t_end = 0.25;
  const Eigen::Vector3d k = std::numbers::pi * Eigen::Vector3d(1, 0, 0);
  auto wave = std::make_shared<GeodesicWave>(k.norm(), k);
  const CauchyData data = trace_at_zero(wave);
  const ConeSpec cone = ConeSpec::from_base(Eigen::Vector3d::Zero(), 0.5, 0.0, 0.2);
  ConeBalanceObserver obs(cone, c, 0.0, BalanceRules{}.coarse());
  ConeBalanceObserver late(ConeSpec::from_base(Eigen::Vector3d::Zero(), 0.9, 0.0, 0.6), c, 0.0);
  CHECK_THROWS_AS(late.report(), RangeError);
  run(c, *data.f, *data.g, {&obs});
  REQUIRE(obs.complete());
  const BalanceReport r = obs.report();
  CHECK(r.e_base > 1.0);
  CHECK(std::abs(r.balance) < 0.02 * r.e_base);
}

TEST_CASE("ledger csv layout") {
  EnergyLedger l;
  l.records.push_back({0, 0.0, 1.0, 2.0, 0.5, 3.5});
  l.records.push_back({1, 0.1, 1.1, 2.0, 0.4, 3.5});
  CHECK(l.relative_drift() == 0.0);
  const std::string path = "/tmp/wavemaps_ledger_test.csv";
  l.write_csv(path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "step,time,kinetic,gradient,penalty,total");
}
