#pragma once

// Closed-form maps into S^2: stereographic charts, the dilated hedgehog family
// v_lambda(x) = sigma^{-1}(lambda * sigma(x/|x|)), its boosted wave maps
// phi_lambda(t, x) = v_lambda(x1, x2, Theta (x3 - nu t)) and their Cauchy data.

#include <Eigen/Dense>

#include "wavemaps/field.hpp"

namespace wavemaps {

struct MapParams {
  double lambda{2.0};
  double nu{0.6};

  void validate() const;
  double theta() const;
};

/// Default distance to the singular set inside which analytic evaluation
/// refuses to return a jet.
inline constexpr double kAnalyticExclusionRadius = 1e-8;

/// Projection from the south pole onto the equatorial plane.
Eigen::Vector2d stereographic(const Eigen::Vector3d& x);
Eigen::Vector3d stereographic_inv(const Eigen::Vector2d& y);

Eigen::Vector3d harmonic_v(double lambda, const Eigen::Vector3d& x);
inline Eigen::Vector3d harmonic_v(const MapParams& p, const Eigen::Vector3d& x) {
  return harmonic_v(p.lambda, x);
}

/// Stationary jet of v_lambda: analytic Jacobian, dt = 0.
JetSample harmonic_v_jet(double lambda, const Eigen::Vector3d& x);
inline JetSample harmonic_v_jet(const MapParams& p, const Eigen::Vector3d& x) {
  return harmonic_v_jet(p.lambda, x);
}

JetSample boosted_phi_jet(const MapParams& p, const SpacetimePoint& pt,
                          double exclusion_radius = kAnalyticExclusionRadius);

/// Closed-form point charge -8 pi (l^4 - 4 l^2 log l - 1) / (l^2 - 1)^2, with a
/// Taylor branch for |l - 1| < 1e-3.
double s_lambda(double lambda);

/// Stationary field (t, x) -> v_lambda(x).
class HarmonicMapField final : public FieldEvaluator {
 public:
  explicit HarmonicMapField(double lambda,
                            double exclusion_radius = kAnalyticExclusionRadius);

  JetSample jet(const SpacetimePoint& pt) const override;
  bool defined_at(const SpacetimePoint& pt) const override;
  std::optional<Eigen::Vector3d> singular_point(double t) const override;

  double lambda() const { return lambda_; }

 private:
  double lambda_;
  double exclusion_;
};

/// phi_lambda = v_lambda o Lambda(nu), singular on the line x1 = x2 = 0, x3 = nu t.
class BoostedHarmonicField final : public FieldEvaluator {
 public:
  explicit BoostedHarmonicField(const MapParams& params,
                                double exclusion_radius = kAnalyticExclusionRadius);

  JetSample jet(const SpacetimePoint& pt) const override;
  bool defined_at(const SpacetimePoint& pt) const override;
  std::optional<Eigen::Vector3d> singular_point(double t) const override;

  const MapParams& params() const { return params_; }

 private:
  MapParams params_;
  double exclusion_;
};

/// Cauchy data (f, g) at t = 0. Both evaluators ignore the time coordinate of
/// the query point; f carries its spatial Jacobian, g its value (and a
/// finite-difference Jacobian).
struct CauchyData {
  FieldPtr f;
  FieldPtr g;
};

CauchyData initial_data(const MapParams& params,
                        double exclusion_radius = kAnalyticExclusionRadius);

/// Initial data (u(0), u_t(0)) read off any evaluator at t = 0.
CauchyData trace_at_zero(FieldPtr field);

}  // namespace wavemaps
