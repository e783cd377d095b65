#include "wavemaps/stress_energy.hpp"

#include <cmath>

#include "wavemaps/bump.hpp"

namespace wavemaps {

namespace {

Eigen::Matrix4d tensor_at(const FieldEvaluator& field, const Eigen::Vector4d& c) {
  return stress_tensor(field.jet(SpacetimePoint(c)));
}

}  // namespace

Eigen::Vector4d divergence_T(const FieldEvaluator& field, const SpacetimePoint& pt, double h) {
  if (!(h > 0)) throw DomainError("difference step must be positive");
  const Eigen::Vector4d c = pt.coords();
  Eigen::Vector4d div = Eigen::Vector4d::Zero();
  for (int a = 0; a < 4; ++a) {
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
    e[a] = h;
    const Eigen::Matrix4d d = (tensor_at(field, c + e) - tensor_at(field, c - e)) / (2 * h);
    const double raise = a == 0 ? -1.0 : 1.0;
    div += raise * d.row(a).transpose();
  }
  return div;
}

TransformationCheck transformation_check(FieldPtr field, const LorentzBoost& boost,
                                         const SpacetimePoint& pt, double h) {
  const BoostedField composed(field, boost);
  TransformationCheck out;
  out.lhs = divergence_T(composed, pt, h);
  const Eigen::Vector4d inner = divergence_T(*field, apply_boost(boost, pt), h);
  out.rhs = boost.matrix.transpose() * inner;
  return out;
}

double BumpTest::value(const SpacetimePoint& pt) const {
  const int dim = spacetime ? 4 : 3;
  const double r2 = spacetime ? (pt.coords() - center.coords()).squaredNorm() / (scale * scale)
                              : (pt.x - center.x).squaredNorm() / (scale * scale);
  return bump_profile(r2) / (bump_mass(dim) * std::pow(scale, dim));
}

Eigen::Vector4d BumpTest::gradient(const SpacetimePoint& pt) const {
  const int dim = spacetime ? 4 : 3;
  Eigen::Vector4d d = pt.coords() - center.coords();
  if (!spacetime) d[0] = 0;
  const double r2 = d.squaredNorm() / (scale * scale);
  const double k = bump_profile_slope(r2) / (bump_mass(dim) * std::pow(scale, dim));
  return k * 2 * d / (scale * scale);
}

Eigen::Vector3d weak_residual(const FieldEvaluator& field, const BumpTest& test,
                              const SpacetimeBoxRule& rule) {
  if (!test.spacetime) throw DomainError("weak residual needs a space-time test function");
  const Eigen::Vector4d c = test.center.coords();
  const double s = test.scale;
  // Quadrature nodes alone would almost never land on a singular line.
  for (int i = 0; i <= 512; ++i) {
    const double t = c[0] - s + 2 * s * i / 512.0;
    const auto x = field.singular_point(t);
    if (x && (t - c[0]) * (t - c[0]) + (*x - test.center.x).squaredNorm() < s * s) {
      throw RangeError("test support meets the field's singular set");
    }
  }
  std::array<Rule1D, 4> axes;
  for (int a = 0; a < 4; ++a) axes[a] = composite_gauss(c[a] - s, c[a] + s, rule.points, rule.panels);
  const std::size_t n = axes[0].nodes.size();

  CompensatedSum sum[3];
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    for (std::size_t i1 = 0; i1 < n; ++i1) {
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        for (std::size_t i3 = 0; i3 < n; ++i3) {
          const SpacetimePoint pt(axes[0].nodes[i0], axes[1].nodes[i1], axes[2].nodes[i2],
                                  axes[3].nodes[i3]);
          const double psi = test.value(pt);
          if (psi == 0) continue;
          if (!field.defined_at(pt)) {
            throw RangeError("test support leaves the field's smooth domain");
          }
          const double w =
              axes[0].weights[i0] * axes[1].weights[i1] * axes[2].weights[i2] * axes[3].weights[i3];
          const Eigen::Vector4d dpsi = test.gradient(pt);
          const JetSample j = field.jet(pt);
          const double nonlinear = j.grad.squaredNorm() - j.dt.squaredNorm();
          const Eigen::Vector3d integrand =
              j.dt * dpsi[0] - j.grad * dpsi.tail<3>() + nonlinear * psi * j.value;
          for (int k = 0; k < 3; ++k) sum[k].add(w * integrand[k]);
        }
      }
    }
  }
  return {sum[0].value(), sum[1].value(), sum[2].value()};
}

namespace {

Eigen::Vector3d charge_pairing(const HarmonicMapField& v, const BumpTest& test, double rho,
                               const BallRule& rule) {
  const SphereRule sphere = make_sphere_rule(rule.polar, rule.azimuth);
  const Rule1D radial = composite_gauss(rho, test.scale, rule.radial_points, rule.radial_panels);
  CompensatedSum sum[3];
  for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
    const double r = radial.nodes[a];
    for (std::size_t b = 0; b < sphere.directions.size(); ++b) {
      const Eigen::Vector3d x = test.center.x + r * sphere.directions[b];
      const JetSample j = v.jet(SpacetimePoint(0.0, x));
      const Eigen::Matrix3d gram = j.grad.transpose() * j.grad;
      const Eigen::Matrix3d stress = 0.5 * gram.trace() * Eigen::Matrix3d::Identity() - gram;
      const Eigen::Vector3d dpsi = test.gradient(SpacetimePoint(0.0, x)).tail<3>();
      const Eigen::Vector3d integrand = -(stress * dpsi);
      const double w = radial.weights[a] * sphere.weights[b] * r * r;
      for (int k = 0; k < 3; ++k) sum[k].add(w * integrand[k]);
    }
  }
  return {sum[0].value(), sum[1].value(), sum[2].value()};
}

}  // namespace

Eigen::Vector3d recover_point_charge(const MapParams& params, const BumpTest& test,
                                     const ChargeRule& rule) {
  if (test.spacetime) throw DomainError("point charge pairing needs a spatial test function");
  if (test.center.x.norm() > 0) throw DomainError("test function must be centered at the origin");
  if (!(test.scale > 0 && test.scale <= 1)) {
    throw DomainError("test function must be supported in the unit ball");
  }
  const HarmonicMapField v(params.lambda);
  const double rho = rule.exclusion_radius * test.scale;
  const Eigen::Vector3d coarse = charge_pairing(v, test, rho, rule.ball);
  const Eigen::Vector3d fine = charge_pairing(v, test, 0.5 * rho, rule.ball);
  // the excluded ball contributes O(rho^2) for a radial test function
  return (4 * fine - coarse) / 3;
}

SolidConeRule SolidConeRule::midpoint(int panels, int polar, int azimuth) {
  SolidConeRule r;
  r.time_points = 1;
  r.time_panels = panels;
  r.ball = BallRule{1, panels, polar, azimuth};
  r.surface = ConeSurfaceRule{1, panels, polar, azimuth};
  return r;
}

CompIdentity comp_identity_check(const FieldEvaluator& u, const FieldEvaluator& w, double R,
                                 double T, const SolidConeRule& rule,
                                 const Eigen::Vector3d& center) {
  if (!(T > 0 && T < R)) throw DomainError("identity needs 0 < T < R");
  auto dot_d = [&](double t, const Eigen::Vector3d& x) {
    const SpacetimePoint pt(t, x);
    const Eigen::Matrix<double, 3, 4> du = u.jet(pt).spacetime_derivatives();
    const Eigen::Matrix<double, 3, 4> dw = w.jet(pt).spacetime_derivatives();
    return (du.array() * dw.array()).sum();
  };

  CompIdentity out;
  out.lhs = integrate_ball([&](const Eigen::Vector3d& x) { return dot_d(T, x); }, center, R - T,
                           rule.ball);
  out.base_term = integrate_ball([&](const Eigen::Vector3d& x) { return dot_d(0.0, x); }, center,
                                 R, rule.ball);

  // Dw(0) = 0 is checked pointwise on the base rule nodes.
  const SphereRule sphere = make_sphere_rule(rule.ball.polar, rule.ball.azimuth);
  const Rule1D radial = composite_gauss(0, R, rule.ball.radial_points, rule.ball.radial_panels);
  for (double r : radial.nodes) {
    for (const Eigen::Vector3d& dir : sphere.directions) {
      const SpacetimePoint pt(0.0, center + r * dir);
      if (w.jet(pt).spacetime_derivatives().cwiseAbs().maxCoeff() > 1e-12) {
        out.base_term_missing = true;
        break;
      }
    }
    if (out.base_term_missing) break;
  }

  const Rule1D time = composite_gauss(0, T, rule.time_points, rule.time_panels);
  CompensatedSum solid;
  for (std::size_t a = 0; a < time.nodes.size(); ++a) {
    const double t = time.nodes[a];
    const double slice = integrate_ball(
        [&](const Eigen::Vector3d& x) {
          const SpacetimePoint pt(t, x);
          return u.wave_operator(pt).dot(w.jet(pt).dt) + w.wave_operator(pt).dot(u.jet(pt).dt);
        },
        center, R - t, rule.ball);
    solid.add(time.weights[a] * slice);
  }

  const ConeSpec cone = ConeSpec::from_base(center, R, 0.0, T);
  const Rule1D surf_time =
      composite_gauss(0, T, rule.surface.time_points, rule.surface.time_panels);
  const SphereRule surf_sphere = make_sphere_rule(rule.surface.polar, rule.surface.azimuth);
  CompensatedSum lateral;
  for (std::size_t a = 0; a < surf_time.nodes.size(); ++a) {
    const double tau = surf_time.nodes[a];
    const double r = cone.radius_at(tau);
    for (std::size_t b = 0; b < surf_sphere.directions.size(); ++b) {
      const Eigen::Vector3d& n = surf_sphere.directions[b];
      const SpacetimePoint pt(tau, center + r * n);
      const double q = flux_form_Q(u.jet(pt), w.jet(pt), Eigen::Vector3d(n));
      // dsigma = sqrt(2) r^2 dtau dOmega
      lateral.add(surf_time.weights[a] * surf_sphere.weights[b] * std::numbers::sqrt2 * r * r * q);
    }
  }
  out.rhs = solid.value() - lateral.value();
  return out;
}

}  // namespace wavemaps
