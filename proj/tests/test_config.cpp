#include "doctest.h"

#include <sstream>

#include "wavemaps/config.hpp"

using namespace wavemaps;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

}  // namespace

TEST_CASE("defaults") {
  const ExperimentConfig c = parse("");
  CHECK(c.map.lambda == 2.0);
  CHECK(c.map.nu == 0.6);
  CHECK(c.penalties == std::vector<double>{8, 16, 32, 64});
  CHECK(c.cones.size() == 2);
  CHECK(c.cones[0].radius == 0.5);
  CHECK(c.cones[0].height == 0.2);
}

TEST_CASE("sections, comments and repeated cones") {
  const ExperimentConfig c = parse(
      "# sample\n"
      "[map]\n"
      "lambda = 1.5   ; trailing comment\n"
      "nu = 0\n"
      "[solver]\n"
      "spacing = 0.03125\n"
      "boundary = periodic\n"
      "[cones]\n"
      "cone = 0 0 0 0.4 0.1\n"
      "cone = 0.1 0 0 0.3 0.2\n"
      "[sweep]\n"
      "penalties = 4 8\n"
      "[output]\n"
      "dir = somewhere\n");
  CHECK(c.map.lambda == 1.5);
  CHECK(c.map.nu == 0.0);
  CHECK(c.solver.boundary == BoundaryMode::periodic);
  REQUIRE(c.cones.size() == 2);
  CHECK(c.cones[1].center[0] == 0.1);
  CHECK(c.controls.size() == 1);  // untouched default
  CHECK(c.penalties == std::vector<double>{4, 8});
  CHECK(c.output_dir == "somewhere");
}

TEST_CASE("unknown keys and sections are rejected with their location") {
  try {
    parse("[map]\nlambda = 2\nmu = 0.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("test.cfg:3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("[plot]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("lambda = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse("[map]\nlambda = two\n"), ConfigError);
  CHECK_THROWS_AS(parse("[map]\nnu = 1.2\n"), ConfigError);
  CHECK_THROWS_AS(parse("[cones]\ncone = 0 0 0 0.2 0.3\n"), ConfigError);
  CHECK_THROWS_AS(parse("[solver]\nspacing = 0.3\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\nsample_times = 0.5\n"), ConfigError);
}

TEST_CASE("refinement and canonical form") {
  const ExperimentConfig c = parse("");
  const ExperimentConfig r = c.refined(2);
  CHECK(r.solver.spacing == c.solver.spacing / 2);
  CHECK(r.refine == 2);
  CHECK(r.rules.ball.radial_panels == 2 * c.rules.ball.radial_panels);
  CHECK(c.canonical() != r.canonical());
  CHECK(fnv1a(c.canonical()) == fnv1a(parse(c.canonical().substr(0, c.canonical().find("[refine]"))).canonical()));
  CHECK(fnv1a("") == 14695981039346656037ull);
  CHECK_THROWS_AS(c.refined(0), ConfigError);
}
