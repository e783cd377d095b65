#pragma once

// Explicit leapfrog for the penalized equation
//   u_tt = Lap u - n^2 (|u|^2 - 1) u
// on the box [-L, L]^3 with a one-cell ghost layer.
//
// Interior cells sit at x_i = -L + (i + 1/2) h, i = 0..N-1 with N = 2L/h, so no
// cell center lies on a coordinate plane through the origin when N is even.
// Level arrays carry the ghost layer: padded index p = i + 1, padded extent
// N + 2, and the GridField layout (component-major, x fastest).
//
// Diagnostics are streamed: after each step every observer sees a three-level
// window (k-1, k, k+1) whose middle level is at t_k, so the interpolated u_t
// there is the centered difference used by the ledger.

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavemaps/field.hpp"
#include "wavemaps/grid_field.hpp"
#include "wavemaps/quadrature.hpp"

namespace wavemaps {

class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BoundaryMode { clamped, periodic };

struct SolverConfig {
  double half_width{0.625};  // L
  double spacing{1.0 / 64};  // h
  double dt{0};              // 0 picks the largest stable step dividing t_end
  double cfl{0.5};
  double penalty{0};  // n
  BoundaryMode boundary{BoundaryMode::clamped};
  double t_end{0.2};
  bool cell_centered{true};

  void validate() const;
  int cells() const;  // N per axis
  /// cfl * min(h / sqrt 3, 1 / n).
  double stability_bound() const;
  double time_step() const;
  int steps() const;
  /// Center of interior cell i along any axis.
  double cell_center(int i) const;
};

struct StateSlab {
  Eigen::ArrayXd previous;  // u^{k-1}
  Eigen::ArrayXd current;   // u^k
  int step{0};
  double time{0};
  /// Level whose ghost values the clamped boundary holds fixed.
  std::shared_ptr<const Eigen::ArrayXd> boundary;
};

struct LedgerRecord {
  int step;
  double time;
  double kinetic;
  double gradient;
  double penalty;
  double total;
};

struct EnergyLedger {
  std::vector<LedgerRecord> records;

  /// max_k |total_k - total_0| / |total_0|, or the absolute drift if total_0 = 0.
  double relative_drift() const;
  void write_csv(const std::string& path) const;
};

/// u^0 = f, u^1 = u^0 + dt g + dt^2/2 (Lap_h u^0 - n^2 (|u^0|^2 - 1) u^0).
StateSlab init_from_data(const FieldEvaluator& f, const FieldEvaluator& g,
                         const SolverConfig& cfg);

/// One leapfrog step.
StateSlab step(StateSlab state, const SolverConfig& cfg);

/// Discrete energy of level k given its neighbours: centered kinetic term,
/// face-difference gradient term over every face touching an interior cell,
/// and n^2 sum F.
LedgerRecord ledger_record(const Eigen::ArrayXd& prev, const Eigen::ArrayXd& cur,
                           const Eigen::ArrayXd& next, const SolverConfig& cfg, int k);

/// Value of interior cell (i, j, k), 0 <= i, j, k < N, in a level array.
Eigen::Vector3d cell_value(const Eigen::ArrayXd& level, const SolverConfig& cfg, int i, int j,
                           int k);

class LevelObserver {
 public:
  virtual ~LevelObserver() = default;
  /// window holds levels k-1, k, k+1 and is only valid during the call.
  virtual void observe(const GridField& window, int k) = 0;
};

/// Cropped, time-strided copy of the run.
struct StoreSpec {
  bool enabled{false};
  Eigen::Vector3d lo{Eigen::Vector3d::Constant(-1e300)};
  Eigen::Vector3d hi{Eigen::Vector3d::Constant(1e300)};
  int stride{1};
};

struct RunResult {
  StateSlab final_state;
  EnergyLedger ledger;
  std::optional<GridField> stored;
};

/// Runs to t_end; levels 0..steps() each get a ledger record and an observer
/// call (one extra step is taken so the last level has a centered window).
RunResult run(const SolverConfig& cfg, const FieldEvaluator& f, const FieldEvaluator& g,
              const std::vector<LevelObserver*>& observers = {}, const StoreSpec& store = {});

/// Whether pt lies in the cone and its unit-speed backward domain of
/// dependence stays one cell inside the box.
std::function<bool(const SpacetimePoint&)> trusted_region(const SolverConfig& cfg,
                                                          const ConeSpec& cone);
/// Whether the whole truncated cone is trusted.
bool cone_trusted(const SolverConfig& cfg, const ConeSpec& cone);

using FocusFn = std::function<std::optional<Eigen::Vector3d>(double)>;

/// Balance E(D_0) - E(D_T) - Flux(M_0^T) of the solver output on a cone based
/// at t = 0, with T snapped to the nearest level. Time integration of the flux
/// is the trapezoid rule over levels; the error estimate compares nested
/// spatial rules at the same levels.
class ConeBalanceObserver final : public LevelObserver {
 public:
  ConeBalanceObserver(const ConeSpec& cone, const SolverConfig& cfg, double penalty,
                      const BalanceRules& rules = {}, FocusFn focus = {});

  void observe(const GridField& window, int k) override;

  bool complete() const { return done_; }
  BalanceReport report() const;
  double height() const { return top_ * dt_; }
  const ConeSpec& cone() const { return cone_; }

 private:
  double disk_energy(const GridField& w, double t, const BallRule& rule) const;
  double flux_slice(const GridField& w, double t, const SphereRule& sphere) const;

  ConeSpec cone_;
  double dt_;
  int top_;
  double penalty_;
  BalanceRules rules_;
  SphereRule fine_sphere_, coarse_sphere_;
  FocusFn focus_;
  double base_[2]{0, 0}, top_energy_[2]{0, 0};
  CompensatedSum flux_[2];
  bool done_{false};
};

/// Trapezoid-in-time integral over levels 0..top of
///   int_{r_in(t) <= |x - c| <= r_out(t)} integrand(t, x, jet) dx.
/// The error estimate compares nested spatial rules.
class SlabIntegralObserver final : public LevelObserver {
 public:
  using Integrand =
      std::function<double(double t, const Eigen::Vector3d& x, const JetSample& jet)>;
  using Radius = std::function<double(double t)>;

  SlabIntegralObserver(Eigen::Vector3d center, Radius inner, Radius outer, double t_top,
                       double dt, Integrand integrand, const BallRule& rule = {},
                       FocusFn focus = {});

  void observe(const GridField& window, int k) override;

  bool complete() const { return done_; }
  double value() const { return sum_[0].value(); }
  double error_estimate() const { return std::abs(sum_[0].value() - sum_[1].value()); }

 private:
  Eigen::Vector3d center_;
  Radius inner_, outer_;
  int top_;
  double dt_;
  Integrand integrand_;
  BallRule rule_;
  FocusFn focus_;
  CompensatedSum sum_[2];
  bool done_{false};
};

/// Cell sums over the interior cells whose centers lie in the disk of `cone`
/// at selected levels: the constraint violation sum (|u|^2 - 1)^2 h^3 and a
/// copy of the cell values for distances between runs on the same grid.
class DiskSampler final : public LevelObserver {
 public:
  DiskSampler(const ConeSpec& cone, const SolverConfig& cfg, std::vector<double> times);

  void observe(const GridField& window, int k) override;

  struct Sample {
    double time;
    double violation;
    std::vector<double> values;
  };
  const std::vector<Sample>& samples() const { return samples_; }

 private:
  ConeSpec cone_;
  SolverConfig cfg_;
  std::vector<int> levels_;
  std::vector<Sample> samples_;
};

struct SweepEntry {
  double penalty;
  EnergyLedger ledger;
  double dt;
  int steps;
  std::vector<double> times;
  std::vector<double> violation;  // per sample time
  double max_penalty_energy;
  double energy_drift;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  /// distance[i][s]: L2 distance between runs i and i+1 on the cone disk at
  /// sample time s.
  std::vector<std::vector<double>> distance;

  /// Violation at the last sample time strictly decreasing along the schedule.
  bool violation_decreasing() const;
  /// Consecutive distances at the last sample time non-increasing.
  bool cauchy_trending() const;
};

/// Runs the schedule on a shared grid, dt adapted per n. observers_for(n) may
/// hand out extra observers for the run with penalty n.
SweepReport penalization_sweep(
    const std::vector<double>& schedule, const FieldEvaluator& f, const FieldEvaluator& g,
    const SolverConfig& base, const ConeSpec& cone, const std::vector<double>& sample_times,
    const std::function<std::vector<LevelObserver*>(double)>& observers_for = {});

}  // namespace wavemaps
