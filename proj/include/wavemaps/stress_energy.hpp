#pragma once

// Pointwise energy and flux densities, the stress-energy tensor
//   T_ab = 1/2 eta_ab <d^c u, d_c u> - <d_a u, d_b u>
// and the distributional checks built on it.
//
// Conventions: signature (-, +, +, +), so d_a u . d^a u = |grad u|^2 - |u_t|^2,
// and the strong equation is u_tt = Lap u + (|grad u|^2 - |u_t|^2) u.

#include <numbers>

#include <Eigen/Dense>

#include "wavemaps/field.hpp"
#include "wavemaps/harmonic.hpp"
#include "wavemaps/quadrature.hpp"

namespace wavemaps {

template <typename Scalar>
Scalar energy_density(const JetSampleT<Scalar>& j) {
  return Scalar(0.5) * (j.dt.squaredNorm() + j.grad.squaredNorm());
}

/// (1 / 2 sqrt 2) |grad u - n (x) u_t|^2 for a unit spatial normal n.
template <typename Scalar>
Scalar flux_density(const JetSampleT<Scalar>& j, const Vec3<Scalar>& n) {
  return (j.grad - j.dt * n.transpose()).squaredNorm() / (2 * std::numbers::sqrt2_v<Scalar>);
}

/// Q(u, w) = (1 / sqrt 2) <grad u - u_t n, grad w - w_t n>.
template <typename Scalar>
Scalar flux_form_Q(const JetSampleT<Scalar>& u, const JetSampleT<Scalar>& w,
                   const Vec3<Scalar>& n) {
  const Mat3<Scalar> a = u.grad - u.dt * n.transpose();
  const Mat3<Scalar> b = w.grad - w.dt * n.transpose();
  return (a.array() * b.array()).sum() / std::numbers::sqrt2_v<Scalar>;
}

/// Index-down stress-energy tensor of a jet.
template <typename Scalar>
Mat4<Scalar> stress_tensor(const JetSampleT<Scalar>& j) {
  const Mat34<Scalar> d = j.spacetime_derivatives();
  const Mat4<Scalar> gram = d.transpose() * d;
  const Scalar contraction = j.grad.squaredNorm() - j.dt.squaredNorm();
  return Scalar(0.5) * contraction * minkowski_metric<Scalar>() - gram;
}

/// d^a T_ab at pt by second-order central differences of step h in each
/// coordinate. The field must be smooth in the h-box around pt; this is the
/// caller's responsibility.
Eigen::Vector4d divergence_T(const FieldEvaluator& field, const SpacetimePoint& pt, double h);

struct TransformationCheck {
  Eigen::Vector4d lhs;  // divergence of the stress tensor of f o Lambda at pt
  Eigen::Vector4d rhs;  // Lambda^nu_b [d^s T_snu](Lambda pt)
};

TransformationCheck transformation_check(FieldPtr field, const LorentzBoost& boost,
                                         const SpacetimePoint& pt, double h);

/// Scalar test function psi(p) = B(|p - center| / scale) / (mass * scale^dim)
/// with B the standard bump, supported in the ball of radius `scale`. With
/// spacetime = true the ball lives in R^{1+3}; otherwise the bump is spatial
/// and ignores time.
struct BumpTest {
  SpacetimePoint center;
  double scale{1.0};
  bool spacetime{true};

  double value(const SpacetimePoint& pt) const;
  /// (d_t psi, d_1 psi, d_2 psi, d_3 psi).
  Eigen::Vector4d gradient(const SpacetimePoint& pt) const;
  double support_radius() const { return scale; }
};

/// Tensor-product composite Gauss rule on the bounding box of the test support.
struct SpacetimeBoxRule {
  int points{2};
  int panels{8};

  /// Convergence order in the panel width for smooth integrands.
  int nominal_order() const { return 2 * points; }
};

/// int [u_t . psi_t - grad u : grad psi + (|grad u|^2 - |u_t|^2) u psi] dx dt,
/// componentwise. Zero for weak solutions up to quadrature error.
Eigen::Vector3d weak_residual(const FieldEvaluator& field, const BumpTest& test,
                              const SpacetimeBoxRule& rule = {});

struct ChargeRule {
  BallRule ball{16, 4, 32, 64};
  double exclusion_radius{1e-2};  // relative to the test scale
};

/// -int S_ij d_i psi dx for a spatial test psi centered at the origin, with
/// S the spatial stress tensor of v_lambda. The ball of radius rho around the
/// origin is excluded and the result Richardson-extrapolated in rho.
Eigen::Vector3d recover_point_charge(const MapParams& params, const BumpTest& test,
                                     const ChargeRule& rule = {});

struct CompIdentity {
  double lhs{0};        // int_{D_{R-T}} Du . Dw at t = T
  double rhs{0};        // solid-cone term minus lateral Q term
  double base_term{0};  // int_{D_R} Du . Dw at t = 0, zero when Dw(0) = 0
  bool base_term_missing{false};

  /// lhs - base_term - rhs; zero when the identity holds.
  double defect() const { return lhs - base_term - rhs; }
};

struct SolidConeRule {
  int time_points{8};
  int time_panels{4};
  BallRule ball{8, 4, 16, 32};
  ConeSurfaceRule surface{8, 4, 16, 32};

  static SolidConeRule midpoint(int panels, int polar = 24, int azimuth = 48);
};

/// Integration-by-parts identity on the truncated cone with base D_R(center)
/// at t = 0 and top at t = T:
///   int_{D_{R-T}} Du.Dw = int_0^T int_{D_{R-t}} (box u . w_t + box w . u_t)
///                         - int_{M_T} Q(u, w) dsigma,
/// with box = d_tt - Lap. base_term_missing flags Dw(0) != 0.
CompIdentity comp_identity_check(const FieldEvaluator& u, const FieldEvaluator& w, double R,
                                 double T, const SolidConeRule& rule = {},
                                 const Eigen::Vector3d& center = Eigen::Vector3d::Zero());

}  // namespace wavemaps
