#pragma once

// Minkowski geometry on R^{1+3}: points, the metric diag(-1,1,1,1), boosts
// along x^3 and backward light cones with their time-slice disks.

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace wavemaps {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

template <typename Scalar>
struct SpacetimePointT {
  Scalar t{0};
  Vec3<Scalar> x{Vec3<Scalar>::Zero()};

  SpacetimePointT() = default;
  SpacetimePointT(Scalar time, const Vec3<Scalar>& pos) : t(time), x(pos) {}
  SpacetimePointT(Scalar time, Scalar x1, Scalar x2, Scalar x3)
      : t(time), x(x1, x2, x3) {}
  explicit SpacetimePointT(const Vec4<Scalar>& v) : t(v[0]), x(v.template tail<3>()) {}

  Vec4<Scalar> coords() const {
    Vec4<Scalar> v;
    v << t, x;
    return v;
  }
  bool finite() const { return std::isfinite(t) && x.allFinite(); }
};

template <typename Scalar>
Mat4<Scalar> minkowski_metric() {
  return Vec4<Scalar>(-1, 1, 1, 1).asDiagonal();
}

template <typename Scalar>
Scalar minkowski_dot(const Vec4<Scalar>& v, const Vec4<Scalar>& w) {
  return -v[0] * w[0] + v.template tail<3>().dot(w.template tail<3>());
}

/// Boost with speed nu along x^3. Rows index the image coordinates, so
/// apply_boost(b, p).coords() == b.matrix * p.coords().
template <typename Scalar>
struct LorentzBoostT {
  Scalar nu{0};
  Scalar theta{1};
  Mat4<Scalar> matrix{Mat4<Scalar>::Identity()};

  LorentzBoostT inverse() const;
};

template <typename Scalar>
LorentzBoostT<Scalar> boost_matrix(Scalar nu) {
  if (!(std::abs(nu) < Scalar(1))) {
    throw DomainError("boost speed must satisfy |nu| < 1");
  }
  LorentzBoostT<Scalar> b;
  b.nu = nu;
  b.theta = Scalar(1) / std::sqrt((Scalar(1) - nu) * (Scalar(1) + nu));
  b.matrix.setIdentity();
  b.matrix(0, 0) = b.theta;
  b.matrix(3, 3) = b.theta;
  b.matrix(0, 3) = -nu * b.theta;
  b.matrix(3, 0) = -nu * b.theta;
  return b;
}

template <typename Scalar>
LorentzBoostT<Scalar> LorentzBoostT<Scalar>::inverse() const {
  return boost_matrix<Scalar>(-nu);
}

template <typename Scalar>
SpacetimePointT<Scalar> apply_boost(const LorentzBoostT<Scalar>& b,
                                    const SpacetimePointT<Scalar>& pt) {
  return SpacetimePointT<Scalar>(Vec4<Scalar>(b.matrix * pt.coords()));
}

template <typename Scalar>
struct DiskSpecT {
  Scalar time{0};
  Vec3<Scalar> center{Vec3<Scalar>::Zero()};
  Scalar radius{1};
};

/// Backward light cone with apex (tau, p), truncated to times [a, b].
template <typename Scalar>
struct ConeSpecT {
  SpacetimePointT<Scalar> apex;
  Scalar a{0};
  Scalar b{0};

  Scalar radius_at(Scalar s) const { return std::abs(apex.t - s); }
  const Vec3<Scalar>& center() const { return apex.x; }

  /// Cone with base disk D(s0, center; radius) and truncation [s0, s0 + height].
  static ConeSpecT from_base(const Vec3<Scalar>& center, Scalar radius, Scalar s0,
                             Scalar height) {
    if (!(radius > 0) || !(height > 0) || !(height < radius)) {
      throw DomainError("cone needs 0 < height < base radius");
    }
    ConeSpecT c;
    c.apex = SpacetimePointT<Scalar>(s0 + radius, center);
    c.a = s0;
    c.b = s0 + height;
    return c;
  }

  /// Closed truncated cone membership.
  bool contains(const SpacetimePointT<Scalar>& pt, Scalar slack = Scalar(0)) const {
    if (pt.t < a - slack || pt.t > b + slack) return false;
    return (pt.x - apex.x).norm() <= radius_at(pt.t) + slack;
  }
};

template <typename Scalar>
DiskSpecT<Scalar> disk_at(const ConeSpecT<Scalar>& cone, Scalar s) {
  if (!(s < cone.apex.t)) {
    throw DomainError("disk at or above the cone apex is empty");
  }
  if (s < cone.a || s > cone.b) {
    throw RangeError("disk time outside the cone truncation");
  }
  return DiskSpecT<Scalar>{s, cone.apex.x, cone.radius_at(s)};
}

using SpacetimePoint = SpacetimePointT<double>;
using LorentzBoost = LorentzBoostT<double>;
using DiskSpec = DiskSpecT<double>;
using ConeSpec = ConeSpecT<double>;

}  // namespace wavemaps
