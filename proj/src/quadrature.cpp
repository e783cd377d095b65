#include "wavemaps/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavemaps/bump.hpp"

namespace wavemaps {

namespace {

constexpr double kPi = std::numbers::pi;

double flux_integrand(const JetSample& j, const Eigen::Vector3d& n) {
  return (j.grad - j.dt * n.transpose()).squaredNorm();
}

double potential(const Eigen::Vector3d& u) {
  const double a = u.squaredNorm() - 1;
  return 0.25 * a * a;
}

// Shared driver: integral over the lateral surface of fn(tau, x, w) r^2 dOmega dtau.
double integrate_surface(const std::function<double(double, const Eigen::Vector3d&,
                                                    const Eigen::Vector3d&)>& fn,
                         const ConeSpec& cone, double s, double t,
                         const ConeSurfaceRule& rule) {
  const Rule1D time = composite_gauss(s, t, rule.time_points, rule.time_panels);
  const SphereRule sphere = make_sphere_rule(rule.polar, rule.azimuth);
  CompensatedSum sum;
  for (std::size_t a = 0; a < time.nodes.size(); ++a) {
    const double tau = time.nodes[a];
    const double r = cone.radius_at(tau);
    for (std::size_t b = 0; b < sphere.directions.size(); ++b) {
      const Eigen::Vector3d& w = sphere.directions[b];
      sum.add(time.weights[a] * sphere.weights[b] * r * r * fn(tau, cone.apex.x + r * w, w));
    }
  }
  return sum.value();
}

void check_interval(const ConeSpec& cone, double s, double t) {
  if (!(s < t)) throw DomainError("cone interval needs s < t");
  if (s < cone.a - 1e-12 || t > cone.b + 1e-12) {
    throw RangeError("cone interval outside the truncation");
  }
  if (!(t < cone.apex.t)) throw DomainError("cone interval reaches the apex");
}

}  // namespace

Rule1D gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss rule needs at least one node");
  Rule1D rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 2;
    return rule;
  }
  // Legendre P_n and its derivative by the three-term recurrence.
  auto legendre = [n](double x, double& dp) {
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    return p1;
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

Rule1D composite_gauss(double a, double b, int points, int panels) {
  if (panels < 1) throw DomainError("composite rule needs at least one panel");
  const Rule1D base = gauss_legendre(points);
  Rule1D rule;
  rule.nodes.reserve(points * panels);
  rule.weights.reserve(points * panels);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    for (int i = 0; i < points; ++i) {
      rule.nodes.push_back(lo + 0.5 * width * (base.nodes[i] + 1));
      rule.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return rule;
}

SphereRule make_sphere_rule(int polar, int azimuth) {
  if (polar < 1 || azimuth < 1) throw DomainError("sphere rule needs positive resolution");
  const Rule1D g = gauss_legendre(polar);
  SphereRule rule;
  rule.directions.reserve(polar * azimuth);
  rule.weights.reserve(polar * azimuth);
  const double dphi = 2 * kPi / azimuth;
  for (int i = 0; i < polar; ++i) {
    const double c = g.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1 - c * c));
    for (int k = 0; k < azimuth; ++k) {
      const double phi = (k + 0.5) * dphi;
      rule.directions.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
      rule.weights.push_back(g.weights[i] * dphi);
    }
  }
  return rule;
}

BallRule BallRule::refined(int k) const {
  BallRule r = *this;
  if (radial_panels > 1 || radial_points == 1) {
    r.radial_panels *= k;
  } else {
    r.radial_points *= k;
  }
  r.polar *= k;
  r.azimuth *= k;
  return r;
}

BallRule BallRule::coarse() const {
  BallRule r = *this;
  if (radial_panels > 1) {
    r.radial_panels /= 2;
  } else {
    r.radial_points = std::max(1, radial_points / 2);
  }
  r.polar = std::max(2, polar / 2);
  r.azimuth = std::max(4, azimuth / 2);
  return r;
}

ConeSurfaceRule ConeSurfaceRule::refined(int k) const {
  ConeSurfaceRule r = *this;
  if (time_panels > 1 || time_points == 1) {
    r.time_panels *= k;
  } else {
    r.time_points *= k;
  }
  r.polar *= k;
  r.azimuth *= k;
  return r;
}

ConeSurfaceRule ConeSurfaceRule::coarse() const {
  ConeSurfaceRule r = *this;
  if (time_panels > 1) {
    r.time_panels /= 2;
  } else {
    r.time_points = std::max(1, time_points / 2);
  }
  r.polar = std::max(2, polar / 2);
  r.azimuth = std::max(4, azimuth / 2);
  return r;
}

BalanceRules BalanceRules::midpoint(int panels, int polar, int azimuth) {
  BalanceRules r;
  r.ball = BallRule{1, panels, polar, azimuth};
  r.surface = ConeSurfaceRule{1, panels, polar, azimuth};
  return r;
}

double integrate_ball(const std::function<double(const Eigen::Vector3d&)>& fn,
                      const Eigen::Vector3d& center, double radius, const BallRule& rule,
                      const std::optional<Eigen::Vector3d>& focus) {
  if (!(radius > 0)) throw DomainError("ball radius must be positive");
  const SphereRule sphere = make_sphere_rule(rule.polar, rule.azimuth);
  CompensatedSum sum;
  const bool focused = focus && (*focus - center).norm() < 0.999 * radius;
  if (!focused) {
    const Rule1D radial = composite_gauss(0, radius, rule.radial_points, rule.radial_panels);
    for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
      const double r = radial.nodes[a];
      for (std::size_t b = 0; b < sphere.directions.size(); ++b) {
        sum.add(radial.weights[a] * sphere.weights[b] * r * r *
                fn(center + r * sphere.directions[b]));
      }
    }
    return sum.value();
  }
  const Eigen::Vector3d d = *focus - center;
  const double c = d.squaredNorm() - radius * radius;
  const Rule1D unit = composite_gauss(0, 1, rule.radial_points, rule.radial_panels);
  for (std::size_t b = 0; b < sphere.directions.size(); ++b) {
    const Eigen::Vector3d& w = sphere.directions[b];
    const double wd = w.dot(d);
    const double reach = -wd + std::sqrt(wd * wd - c);
    for (std::size_t a = 0; a < unit.nodes.size(); ++a) {
      const double s = reach * unit.nodes[a];
      sum.add(sphere.weights[b] * unit.weights[a] * reach * s * s * fn(*focus + s * w));
    }
  }
  return sum.value();
}

double integrate_shell(const std::function<double(const Eigen::Vector3d&)>& fn,
                       const Eigen::Vector3d& center, double r_in, double r_out,
                       const BallRule& rule) {
  if (!(r_in >= 0 && r_out > r_in)) throw DomainError("shell needs 0 <= r_in < r_out");
  const SphereRule sphere = make_sphere_rule(rule.polar, rule.azimuth);
  const Rule1D radial = composite_gauss(r_in, r_out, rule.radial_points, rule.radial_panels);
  CompensatedSum sum;
  for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
    const double r = radial.nodes[a];
    for (std::size_t b = 0; b < sphere.directions.size(); ++b) {
      sum.add(radial.weights[a] * sphere.weights[b] * r * r * fn(center + r * sphere.directions[b]));
    }
  }
  return sum.value();
}

double energy_on_disk(const FieldEvaluator& field, const DiskSpec& disk, const BallRule& rule) {
  return integrate_ball(
      [&](const Eigen::Vector3d& x) {
        const JetSample j = field.jet(SpacetimePoint(disk.time, x));
        return 0.5 * (j.dt.squaredNorm() + j.grad.squaredNorm());
      },
      disk.center, disk.radius, rule, field.singular_point(disk.time));
}

double penalized_energy_on_disk(const FieldEvaluator& field, const DiskSpec& disk,
                                double penalty, const BallRule& rule) {
  const double n2 = penalty * penalty;
  return integrate_ball(
      [&](const Eigen::Vector3d& x) {
        const JetSample j = field.jet(SpacetimePoint(disk.time, x));
        return 0.5 * (j.dt.squaredNorm() + j.grad.squaredNorm()) + n2 * potential(j.value);
      },
      disk.center, disk.radius, rule, field.singular_point(disk.time));
}

double constraint_violation_on_disk(const FieldEvaluator& field, const DiskSpec& disk,
                                    const BallRule& rule) {
  return integrate_ball(
      [&](const Eigen::Vector3d& x) {
        const JetSample j = field.jet(SpacetimePoint(disk.time, x));
        const double a = j.value.squaredNorm() - 1;
        return a * a;
      },
      disk.center, disk.radius, rule, field.singular_point(disk.time));
}

double flux_on_cone(const FieldEvaluator& field, const ConeSpec& cone, double s, double t,
                    const ConeSurfaceRule& rule) {
  check_interval(cone, s, t);
  return 0.5 * integrate_surface(
                   [&](double tau, const Eigen::Vector3d& x, const Eigen::Vector3d& w) {
                     return flux_integrand(field.jet(SpacetimePoint(tau, x)), w);
                   },
                   cone, s, t, rule);
}

double penalized_flux_on_cone(const FieldEvaluator& field, const ConeSpec& cone, double s,
                              double t, double penalty, const ConeSurfaceRule& rule) {
  check_interval(cone, s, t);
  const double n2 = penalty * penalty;
  // (1/sqrt2) n^2 F dsigma = n^2 F r^2 dOmega dtau
  return integrate_surface(
      [&](double tau, const Eigen::Vector3d& x, const Eigen::Vector3d& w) {
        const JetSample j = field.jet(SpacetimePoint(tau, x));
        return 0.5 * flux_integrand(j, w) + n2 * potential(j.value);
      },
      cone, s, t, rule);
}

namespace {
BalanceReport balance_at(const FieldEvaluator& field, const ConeSpec& cone, double s, double t,
                         const BalanceRules& rules, double penalty) {
  BalanceReport r;
  const DiskSpec base = disk_at(cone, s);
  const DiskSpec top = disk_at(cone, t);
  if (penalty > 0) {
    r.e_base = penalized_energy_on_disk(field, base, penalty, rules.ball);
    r.e_top = penalized_energy_on_disk(field, top, penalty, rules.ball);
    r.flux = penalized_flux_on_cone(field, cone, s, t, penalty, rules.surface);
  } else {
    r.e_base = energy_on_disk(field, base, rules.ball);
    r.e_top = energy_on_disk(field, top, rules.ball);
    r.flux = flux_on_cone(field, cone, s, t, rules.surface);
  }
  r.balance = r.recomputed_balance();
  return r;
}
}  // namespace

BalanceReport energy_balance(const FieldEvaluator& field, const ConeSpec& cone, double s,
                             double t, const BalanceRules& rules, double penalty) {
  check_interval(cone, s, t);
  BalanceReport fine = balance_at(field, cone, s, t, rules, penalty);
  const BalanceReport coarse = balance_at(field, cone, s, t, rules.coarse(), penalty);
  fine.error_estimate = std::abs(fine.balance - coarse.balance);
  return fine;
}

double mollified_flux(const FieldEvaluator& field, const Eigen::Vector3d& center,
                      double base_radius, double t, double eps, const ConeSurfaceRule& rule,
                      int delta_points) {
  if (!(eps > 0) || !(eps < base_radius)) {
    throw DomainError("mollification width must satisfy 0 < eps < base radius");
  }
  if (!(t < base_radius - eps)) {
    throw DomainError("cone height must stay below the smallest apex");
  }
  const Rule1D delta = gauss_legendre(delta_points);
  const double mass = bump_mass(1);
  CompensatedSum sum;
  for (int k = 0; k < delta_points; ++k) {
    const double y = delta.nodes[k];
    const double weight = delta.weights[k] * bump_profile(y * y) / mass;
    if (weight == 0) continue;
    const ConeSpec cone = ConeSpec::from_base(center, base_radius + eps * y, 0.0, t);
    // (1/eps) psi(delta/eps) ddelta = psi(y) dy
    sum.add(weight * 2 * std::numbers::sqrt2 * flux_on_cone(field, cone, 0.0, t, rule));
  }
  return sum.value();
}

}  // namespace wavemaps
