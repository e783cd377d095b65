#include "wavemaps/exact_fields.hpp"

#include <cmath>

#include "wavemaps/bump.hpp"

namespace wavemaps {

double GeodesicWave::phase(const SpacetimePoint& pt) const {
  return omega_ * pt.t + k_.dot(pt.x) + amp_ * std::sin(m_.dot(pt.x)) * std::cos(m_.norm() * pt.t);
}

JetSample GeodesicWave::jet(const SpacetimePoint& pt) const {
  const double f = phase(pt);
  const double mn = m_.norm();
  const double s = std::sin(m_.dot(pt.x)), c = std::cos(m_.dot(pt.x));
  const double ft = omega_ - amp_ * mn * s * std::sin(mn * pt.t);
  const Eigen::Vector3d fx = k_ + amp_ * c * std::cos(mn * pt.t) * m_;
  const Eigen::Vector3d tangent(-std::sin(f), std::cos(f), 0.0);

  JetSample j;
  j.value << std::cos(f), std::sin(f), 0.0;
  j.dt = ft * tangent;
  j.grad = tangent * fx.transpose();
  return j;
}

Eigen::Vector3d GeodesicWave::wave_operator(const SpacetimePoint& pt) const {
  const JetSample j = jet(pt);
  // the phase solves the linear wave equation, leaving only the curvature term
  return -(j.dt.squaredNorm() - j.grad.squaredNorm()) * j.value;
}

ScalarPolynomialField ScalarPolynomialField::null_quadric() {
  return ScalarPolynomialField({{1.0, {2, 0, 0, 0}},
                                {-1.0, {0, 2, 0, 0}},
                                {-1.0, {0, 0, 2, 0}},
                                {-1.0, {0, 0, 0, 2}}});
}

ScalarPolynomialField ScalarPolynomialField::generic_cubic() {
  return ScalarPolynomialField({{1.0, {3, 0, 0, 0}},
                                {0.7, {1, 1, 0, 1}},
                                {-1.3, {0, 2, 1, 0}},
                                {0.9, {0, 0, 0, 3}},
                                {0.5, {2, 0, 1, 0}},
                                {1.1, {0, 1, 1, 1}},
                                {0.4, {0, 1, 0, 0}}});
}

double ScalarPolynomialField::eval(const Eigen::Vector4d& c, const Eigen::Vector4i& diff) const {
  double sum = 0;
  for (const Monomial& m : terms_) {
    double term = m.coeff;
    for (int a = 0; a < 4 && term != 0; ++a) {
      const int p = m.powers[a], d = diff[a];
      if (d > p) {
        term = 0;
        break;
      }
      for (int q = p; q > p - d; --q) term *= q;
      term *= std::pow(c[a], p - d);
    }
    sum += term;
  }
  return sum;
}

JetSample ScalarPolynomialField::jet(const SpacetimePoint& pt) const {
  const Eigen::Vector4d c = pt.coords();
  JetSample j;
  j.value[0] = eval(c, Eigen::Vector4i::Zero());
  j.dt[0] = eval(c, Eigen::Vector4i::Unit(0));
  for (int i = 0; i < 3; ++i) j.grad(0, i) = eval(c, Eigen::Vector4i::Unit(i + 1));
  return j;
}

Eigen::Vector3d ScalarPolynomialField::wave_operator(const SpacetimePoint& pt) const {
  const Eigen::Vector4d c = pt.coords();
  double box = eval(c, Eigen::Vector4i(2, 0, 0, 0));
  for (int i = 1; i < 4; ++i) box -= eval(c, 2 * Eigen::Vector4i::Unit(i));
  return Eigen::Vector3d(box, 0, 0);
}

namespace {
double factorial(int p) {
  double f = 1;
  for (int q = 2; q <= p; ++q) f *= q;
  return f;
}
}  // namespace

JetSample TimePowerBump::jet(const SpacetimePoint& pt) const {
  const Eigen::Vector3d y = (pt.x - center_) / width_;
  const double r2 = y.squaredNorm();
  const double b = bump_profile(r2);
  const double time = std::pow(pt.t, power_) / factorial(power_);
  const double time_dot = power_ == 0 ? 0.0 : std::pow(pt.t, power_ - 1) / factorial(power_ - 1);

  JetSample j;
  j.value = time * b * amp_;
  j.dt = time_dot * b * amp_;
  const Eigen::Vector3d grad_b = bump_profile_slope(r2) * 2 * y / width_;
  j.grad = time * amp_ * grad_b.transpose();
  return j;
}

Eigen::Vector3d TimePowerBump::wave_operator(const SpacetimePoint& pt) const {
  const Eigen::Vector3d y = (pt.x - center_) / width_;
  const double r2 = y.squaredNorm();
  const double b = bump_profile(r2);
  const double time = std::pow(pt.t, power_) / factorial(power_);
  const double time_ddot =
      power_ < 2 ? 0.0 : std::pow(pt.t, power_ - 2) / factorial(power_ - 2);
  double lap = 0;
  if (r2 < 1) {
    const double s = 1 - r2;
    const double f2 = b * (2 * r2 - 1) / (s * s * s * s);
    lap = (4 * r2 * f2 + 6 * bump_profile_slope(r2)) / (width_ * width_);
  }
  return (time_ddot * b - time * lap) * amp_;
}

namespace {
double compute_bump_mass(int dim) {
  // The profile is flat to all orders at r = 1, so the midpoint rule is
  // spectrally accurate here.
  constexpr int n = 20000;
  double radial = 0;
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) / n;
    radial += std::pow(r, dim - 1) * bump_profile(r * r);
  }
  radial /= n;
  constexpr double pi = 3.14159265358979323846;
  switch (dim) {
    case 1:
      return 2 * radial;
    case 2:
      return 2 * pi * radial;
    case 3:
      return 4 * pi * radial;
    case 4:
      return 2 * pi * pi * radial;
    default:
      throw DomainError("bump_mass supports dimensions 1 to 4");
  }
}
}  // namespace

double bump_mass(int dim) {
  static const double table[4] = {compute_bump_mass(1), compute_bump_mass(2),
                                  compute_bump_mass(3), compute_bump_mass(4)};
  if (dim < 1 || dim > 4) throw DomainError("bump_mass supports dimensions 1 to 4");
  return table[dim - 1];
}

}  // namespace wavemaps
