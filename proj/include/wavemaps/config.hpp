#pragma once

// Experiment configuration: UTF-8 text of `key = value` lines grouped by
// `[section]` headers. `#` and `;` start comments. Unknown sections or keys are
// errors. Lists are whitespace separated.
//
//   [map]         lambda, nu
//   [solver]      half_width, spacing, dt, cfl, penalty, boundary (clamped |
//                 periodic), t_end, cell_centered (true | false)
//   [cones]       cone = cx cy cz radius height     (repeatable)
//                 control = cx cy cz radius height  (repeatable)
//   [quadrature]  radial_points, radial_panels, polar, azimuth, time_points,
//                 time_panels
//   [sweep]       penalties, sample_times
//   [s_table]     lambdas
//   [stationary]  exterior_gap, region_radius
//   [output]      dir
//
// The WAVEMAPS_OUT environment variable overrides [output] dir.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavemaps/harmonic.hpp"
#include "wavemaps/quadrature.hpp"
#include "wavemaps/solver.hpp"

namespace wavemaps {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cone based at t = 0 with the given base disk and height.
struct ConeEntry {
  Eigen::Vector3d center{Eigen::Vector3d::Zero()};
  double radius{0.5};
  double height{0.2};

  ConeSpec spec() const { return ConeSpec::from_base(center, radius, 0.0, height); }
};

struct ExperimentConfig {
  MapParams map;
  SolverConfig solver;
  std::vector<ConeEntry> cones{{Eigen::Vector3d::Zero(), 0.5, 0.2},
                               {Eigen::Vector3d(0.1, -0.05, 0.05), 0.4, 0.15}};
  std::vector<ConeEntry> controls{{Eigen::Vector3d(0.35, 0.0, 0.0), 0.25, 0.2}};
  BalanceRules rules;
  std::vector<double> penalties{8, 16, 32, 64};
  std::vector<double> sample_times{0.1, 0.2};
  std::vector<double> lambdas{1, 1.5, 2, 3};
  double exterior_gap{0.05};
  double region_radius{0.5};
  std::string output_dir{"wavemaps-out"};
  int refine{1};

  /// Every resolution (grid spacing, quadrature) refined by the factor k.
  ExperimentConfig refined(int k) const;
  void validate() const;
  /// Canonical text of the effective configuration; hashed for provenance.
  std::string canonical() const;
};

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);

}  // namespace wavemaps
