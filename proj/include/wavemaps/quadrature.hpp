#pragma once

// Quadrature over balls, lateral surfaces of truncated backward cones and
// solid truncated cones, and the local energy balance built from them.
//
// The lateral surface M_s^t(p) is parametrized by (tau, w) in [s, t] x S^2 as
// x = p + r(tau) w with r(tau) = apex_time - tau. Since |r'| = 1 the pullback
// of the Euclidean metric on R^{1+3} is (1 + 1) dtau^2 + r^2 dOmega, which
// gives dsigma = sqrt(2) r(tau)^2 dtau dOmega. With the 1/(2 sqrt 2)
// normalization of the flux this leaves
//   Flux = 1/2 int_s^t int_{S^2} |grad u - w u_t|^2 r(tau)^2 dOmega dtau.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wavemaps/field.hpp"

namespace wavemaps {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(int n);

/// Composite Gauss-Legendre: `panels` equal panels of `points` nodes on [a, b].
Rule1D composite_gauss(double a, double b, int points, int panels);

/// Product rule on S^2: Gauss in cos(polar angle) x trapezoid in azimuth.
struct SphereRule {
  std::vector<Eigen::Vector3d> directions;
  std::vector<double> weights;  // sum to 4 pi
};
SphereRule make_sphere_rule(int polar, int azimuth);

struct BallRule {
  int radial_points{16};
  int radial_panels{4};
  int polar{32};
  int azimuth{64};

  /// Every direction refined by the integer factor k (panels, else points).
  BallRule refined(int k) const;
  /// The nested coarse rule used for error estimates.
  BallRule coarse() const;
};

struct ConeSurfaceRule {
  int time_points{16};
  int time_panels{4};
  int polar{32};
  int azimuth{64};

  ConeSurfaceRule refined(int k) const;
  ConeSurfaceRule coarse() const;
};

struct BalanceRules {
  BallRule ball;
  ConeSurfaceRule surface;

  BalanceRules refined(int k) const { return {ball.refined(k), surface.refined(k)}; }
  BalanceRules coarse() const { return {ball.coarse(), surface.coarse()}; }
  /// Composite midpoint rules (order 2) with the given panel count; angular
  /// resolution is kept fixed and high.
  static BalanceRules midpoint(int panels, int polar = 32, int azimuth = 64);
};

/// Neumaier-compensated running sum; summation order is the call order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_{0};
  double comp_{0};
};

/// Integral of fn over the ball B(center, radius). When `focus` lies inside the
/// ball, spherical coordinates are centered there so that integrands behaving
/// like |x - focus|^{-2} become smooth in the radial variable.
double integrate_ball(const std::function<double(const Eigen::Vector3d&)>& fn,
                      const Eigen::Vector3d& center, double radius, const BallRule& rule,
                      const std::optional<Eigen::Vector3d>& focus = std::nullopt);

/// Integral of fn over the shell r_in <= |x - center| <= r_out (r_in may be 0).
double integrate_shell(const std::function<double(const Eigen::Vector3d&)>& fn,
                       const Eigen::Vector3d& center, double r_in, double r_out,
                       const BallRule& rule);

/// 1/2 int_disk |u_t|^2 + |grad u|^2.
double energy_on_disk(const FieldEvaluator& field, const DiskSpec& disk,
                      const BallRule& rule = {});

/// energy_on_disk + n^2 int_disk F(u), F(u) = (|u|^2 - 1)^2 / 4.
double penalized_energy_on_disk(const FieldEvaluator& field, const DiskSpec& disk,
                                double penalty, const BallRule& rule = {});

/// int_disk (|u|^2 - 1)^2.
double constraint_violation_on_disk(const FieldEvaluator& field, const DiskSpec& disk,
                                    const BallRule& rule = {});

/// Flux through the lateral surface of `cone` between times s < t.
double flux_on_cone(const FieldEvaluator& field, const ConeSpec& cone, double s, double t,
                    const ConeSurfaceRule& rule = {});

/// flux_on_cone plus the potential term n^2 / sqrt(2) int_M F(u) dsigma.
double penalized_flux_on_cone(const FieldEvaluator& field, const ConeSpec& cone, double s,
                              double t, double penalty, const ConeSurfaceRule& rule = {});

struct BalanceReport {
  double e_base{0};
  double e_top{0};
  double flux{0};
  double balance{0};
  double error_estimate{0};

  double recomputed_balance() const { return e_base - e_top - flux; }
};

/// E(D_s) - E(D_t) - Flux(M_s^t). The error estimate is the difference to the
/// nested coarse rules. penalty > 0 selects the penalized energy and flux.
BalanceReport energy_balance(const FieldEvaluator& field, const ConeSpec& cone, double s,
                             double t, const BalanceRules& rules = {}, double penalty = 0.0);

/// Mollified flux over the family of cones with base D(0, p; r + delta),
/// |delta| < eps, fixed height t:
///   (1/eps) int psi(delta/eps) int_{M_0^t(p; r+delta)} |grad u - w u_t|^2 dsigma ddelta.
/// Tends to 2 sqrt(2) Flux(M_0^t(p; r)) as eps -> 0.
double mollified_flux(const FieldEvaluator& field, const Eigen::Vector3d& center,
                      double base_radius, double t, double eps,
                      const ConeSurfaceRule& rule = {}, int delta_points = 16);

}  // namespace wavemaps
