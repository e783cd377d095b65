#include "wavemaps/harmonic.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wavemaps {

namespace {

using Eigen::Matrix;
using Eigen::Matrix3d;
using Eigen::Vector2d;
using Eigen::Vector3d;

struct ValueAndJacobian {
  Vector3d value;
  Matrix3d jacobian;  // jacobian(j, i) = d_i v^j
};

// v_lambda and its Jacobian. On the northern hemisphere we dilate by lambda in
// the south-pole chart; on the southern one we shrink by 1/lambda in the
// north-pole chart sigma_N(w) = (w1, w2) / (1 - w3), which is the same map and
// stays bounded near w3 = -1.
ValueAndJacobian dilated_hedgehog(double lambda, const Vector3d& x) {
  const double r = x.norm();
  const Vector3d w = x / r;
  const Matrix3d proj = (Matrix3d::Identity() - w * w.transpose()) / r;

  const bool north = w[2] >= 0;
  const double denom = north ? 1 + w[2] : 1 - w[2];
  const double scale = north ? lambda : 1 / lambda;

  Matrix<double, 2, 3> dchart = Matrix<double, 2, 3>::Zero();
  dchart(0, 0) = 1 / denom;
  dchart(1, 1) = 1 / denom;
  const double sgn = north ? -1.0 : 1.0;
  dchart(0, 2) = sgn * w[0] / (denom * denom);
  dchart(1, 2) = sgn * w[1] / (denom * denom);

  const Vector2d z = scale * Vector2d(w[0], w[1]) / denom;
  const double z2 = z.squaredNorm();
  const double q = 1 + z2;

  ValueAndJacobian out;
  out.value << 2 * z[0] / q, 2 * z[1] / q, (north ? 1 - z2 : z2 - 1) / q;

  Matrix<double, 3, 2> dinv;
  dinv.topRows<2>() = (2 / q) * Eigen::Matrix2d::Identity() - (4 / (q * q)) * z * z.transpose();
  dinv.row(2) = (north ? -4.0 : 4.0) / (q * q) * z.transpose();

  out.jacobian = dinv * (scale * dchart) * proj;
  return out;
}

// Ambient (t, x) -> argument of v_lambda for phi_lambda.
Vector3d boosted_argument(const MapParams& p, const SpacetimePoint& pt) {
  return {pt.x[0], pt.x[1], p.theta() * (pt.x[2] - p.nu * pt.t)};
}

class DataValueField final : public FieldEvaluator {
 public:
  DataValueField(MapParams p, double exclusion) : p_(p), exclusion_(exclusion) {}

  JetSample jet(const SpacetimePoint& pt) const override {
    const double th = p_.theta();
    const Vector3d arg(pt.x[0], pt.x[1], th * pt.x[2]);
    if (arg.norm() <= exclusion_) {
      throw DomainError("initial data evaluated at the singular point");
    }
    const ValueAndJacobian vj = dilated_hedgehog(p_.lambda, arg);
    JetSample j;
    j.value = vj.value;
    j.grad = vj.jacobian;
    j.grad.col(2) *= th;
    return j;
  }
  bool defined_at(const SpacetimePoint& pt) const override {
    return Vector3d(pt.x[0], pt.x[1], p_.theta() * pt.x[2]).norm() > exclusion_;
  }
  std::optional<Vector3d> singular_point(double) const override {
    return Vector3d::Zero();
  }

 private:
  MapParams p_;
  double exclusion_;
};

class DataVelocityField final : public FieldEvaluator {
 public:
  DataVelocityField(MapParams p, double exclusion) : p_(p), exclusion_(exclusion) {}

  Vector3d value(const SpacetimePoint& pt) const {
    const double th = p_.theta();
    const Vector3d arg(pt.x[0], pt.x[1], th * pt.x[2]);
    if (arg.norm() <= exclusion_) {
      throw DomainError("initial data evaluated at the singular point");
    }
    return -th * p_.nu * dilated_hedgehog(p_.lambda, arg).jacobian.col(2);
  }

  JetSample jet(const SpacetimePoint& pt) const override {
    JetSample j;
    j.value = value(pt);
    const double h = 1e-6 * std::max(1.0, pt.x.norm());
    for (int i = 0; i < 3; ++i) {
      SpacetimePoint a = pt, b = pt;
      a.x[i] += h;
      b.x[i] -= h;
      j.grad.col(i) = (value(a) - value(b)) / (2 * h);
    }
    return j;
  }
  bool defined_at(const SpacetimePoint& pt) const override {
    return Vector3d(pt.x[0], pt.x[1], p_.theta() * pt.x[2]).norm() > exclusion_;
  }
  std::optional<Vector3d> singular_point(double) const override {
    return Vector3d::Zero();
  }

 private:
  MapParams p_;
  double exclusion_;
};

// u(0, .) and u_t(0, .) of an arbitrary evaluator, frozen in time.
class TraceValue final : public FieldEvaluator {
 public:
  explicit TraceValue(FieldPtr f) : f_(std::move(f)) {}
  JetSample jet(const SpacetimePoint& pt) const override {
    JetSample j = f_->jet(SpacetimePoint(0.0, pt.x));
    j.dt.setZero();
    return j;
  }
  bool defined_at(const SpacetimePoint& pt) const override {
    return f_->defined_at(SpacetimePoint(0.0, pt.x));
  }

 private:
  FieldPtr f_;
};

class TraceVelocity final : public FieldEvaluator {
 public:
  explicit TraceVelocity(FieldPtr f) : f_(std::move(f)) {}
  JetSample jet(const SpacetimePoint& pt) const override {
    JetSample j;
    j.value = f_->jet(SpacetimePoint(0.0, pt.x)).dt;
    return j;
  }
  bool defined_at(const SpacetimePoint& pt) const override {
    return f_->defined_at(SpacetimePoint(0.0, pt.x));
  }

 private:
  FieldPtr f_;
};

}  // namespace

void MapParams::validate() const {
  if (!(lambda > 0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be positive");
  }
  if (!(nu >= 0 && nu < 1)) {
    throw DomainError("boost speed must lie in [0, 1)");
  }
}

double MapParams::theta() const { return 1 / std::sqrt((1 - nu) * (1 + nu)); }

Vector2d stereographic(const Vector3d& x) {
  if (x[2] == -1.0) {
    throw DomainError("stereographic projection of the south pole");
  }
  return Vector2d(x[0], x[1]) / (1 + x[2]);
}

Vector3d stereographic_inv(const Vector2d& y) {
  const double y2 = y.squaredNorm();
  return Vector3d(2 * y[0], 2 * y[1], 1 - y2) / (1 + y2);
}

Vector3d harmonic_v(double lambda, const Vector3d& x) {
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  if (x.norm() <= kAnalyticExclusionRadius) {
    throw DomainError("v_lambda is singular at the origin");
  }
  return dilated_hedgehog(lambda, x).value;
}

JetSample harmonic_v_jet(double lambda, const Vector3d& x) {
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  if (x.norm() <= kAnalyticExclusionRadius) {
    throw DomainError("v_lambda is singular at the origin");
  }
  const ValueAndJacobian vj = dilated_hedgehog(lambda, x);
  JetSample j;
  j.value = vj.value;
  j.grad = vj.jacobian;
  return j;
}

JetSample boosted_phi_jet(const MapParams& p, const SpacetimePoint& pt,
                          double exclusion_radius) {
  const Vector3d arg = boosted_argument(p, pt);
  if (arg.norm() <= exclusion_radius) {
    throw DomainError("phi_lambda evaluated within the exclusion radius of its singular line");
  }
  const double th = p.theta();
  const ValueAndJacobian vj = dilated_hedgehog(p.lambda, arg);
  JetSample j;
  j.value = vj.value;
  j.grad = vj.jacobian;
  j.grad.col(2) *= th;
  j.dt = -th * p.nu * vj.jacobian.col(2);
  return j;
}

double s_lambda(double lambda) {
  if (!(lambda > 0)) throw DomainError("s(lambda) needs lambda > 0");
  constexpr double pi = std::numbers::pi;
  const double e = lambda - 1;
  if (std::abs(e) < 1e-3) {
    return pi * e * (-16.0 / 3 + e * (8.0 / 3 - e * 16.0 / 15));
  }
  const double l2 = lambda * lambda;
  const double num = l2 * l2 - 4 * l2 * std::log(lambda) - 1;
  const double den = (l2 - 1) * (l2 - 1);
  return -8 * pi * num / den;
}

HarmonicMapField::HarmonicMapField(double lambda, double exclusion_radius)
    : lambda_(lambda), exclusion_(exclusion_radius) {
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
}

JetSample HarmonicMapField::jet(const SpacetimePoint& pt) const {
  if (pt.x.norm() <= exclusion_) {
    throw DomainError("v_lambda evaluated within the exclusion radius of the origin");
  }
  const ValueAndJacobian vj = dilated_hedgehog(lambda_, pt.x);
  JetSample j;
  j.value = vj.value;
  j.grad = vj.jacobian;
  return j;
}

bool HarmonicMapField::defined_at(const SpacetimePoint& pt) const {
  return pt.x.norm() > exclusion_;
}

std::optional<Vector3d> HarmonicMapField::singular_point(double) const {
  return Vector3d::Zero();
}

BoostedHarmonicField::BoostedHarmonicField(const MapParams& params,
                                           double exclusion_radius)
    : params_(params), exclusion_(exclusion_radius) {
  params_.validate();
}

JetSample BoostedHarmonicField::jet(const SpacetimePoint& pt) const {
  return boosted_phi_jet(params_, pt, exclusion_);
}

bool BoostedHarmonicField::defined_at(const SpacetimePoint& pt) const {
  return boosted_argument(params_, pt).norm() > exclusion_;
}

std::optional<Vector3d> BoostedHarmonicField::singular_point(double t) const {
  return Vector3d(0, 0, params_.nu * t);
}

CauchyData initial_data(const MapParams& params, double exclusion_radius) {
  params.validate();
  return {std::make_shared<DataValueField>(params, exclusion_radius),
          std::make_shared<DataVelocityField>(params, exclusion_radius)};
}

CauchyData trace_at_zero(FieldPtr field) {
  return {std::make_shared<TraceValue>(field), std::make_shared<TraceVelocity>(field)};
}

}  // namespace wavemaps
