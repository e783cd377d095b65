#pragma once

// First-order jets of R^3-valued fields on Minkowski space and the evaluator
// interface shared by analytic maps, grid data and composed fields.

#include <memory>
#include <optional>

#include <Eigen/Dense>

#include "wavemaps/spacetime.hpp"

namespace wavemaps {

template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Mat34 = Eigen::Matrix<Scalar, 3, 4>;

/// value u, time derivative u_t and Jacobian grad(j, i) = d_i u^j.
template <typename Scalar>
struct JetSampleT {
  Vec3<Scalar> value{Vec3<Scalar>::Zero()};
  Vec3<Scalar> dt{Vec3<Scalar>::Zero()};
  Mat3<Scalar> grad{Mat3<Scalar>::Zero()};

  /// Columns (d_t u, d_1 u, d_2 u, d_3 u).
  Mat34<Scalar> spacetime_derivatives() const {
    Mat34<Scalar> d;
    d.col(0) = dt;
    d.template rightCols<3>() = grad;
    return d;
  }
  static JetSampleT from_derivatives(const Vec3<Scalar>& value,
                                     const Mat34<Scalar>& d) {
    JetSampleT j;
    j.value = value;
    j.dt = d.col(0);
    j.grad = d.template rightCols<3>();
    return j;
  }

  JetSampleT& operator+=(const JetSampleT& o) {
    value += o.value;
    dt += o.dt;
    grad += o.grad;
    return *this;
  }
  JetSampleT& operator*=(Scalar a) {
    value *= a;
    dt *= a;
    grad *= a;
    return *this;
  }
  friend JetSampleT operator+(JetSampleT a, const JetSampleT& b) { return a += b; }
  friend JetSampleT operator-(JetSampleT a, const JetSampleT& b) {
    a.value -= b.value;
    a.dt -= b.dt;
    a.grad -= b.grad;
    return a;
  }
  friend JetSampleT operator*(Scalar s, JetSampleT a) { return a *= s; }
};

using JetSample = JetSampleT<double>;

class FieldEvaluator {
 public:
  virtual ~FieldEvaluator() = default;

  virtual JetSample jet(const SpacetimePoint& pt) const = 0;

  /// Whether jet() is defined (and smooth) at pt.
  virtual bool defined_at(const SpacetimePoint& /*pt*/) const { return true; }

  /// Point where the time slice t is singular, if the field has one; quadrature
  /// centers its radial coordinate there.
  virtual std::optional<Eigen::Vector3d> singular_point(double /*t*/) const {
    return std::nullopt;
  }

  /// Wave operator u_tt - Laplacian(u). The default differentiates jets with
  /// a fourth-order central stencil; closed-form fields override it.
  virtual Eigen::Vector3d wave_operator(const SpacetimePoint& pt) const;
};

using FieldPtr = std::shared_ptr<const FieldEvaluator>;

/// f composed with a boost: (f o L)(p) = f(L p). Jets follow the chain rule
/// d_gamma (f o L) = L^sigma_gamma (d_sigma f) o L.
class BoostedField final : public FieldEvaluator {
 public:
  BoostedField(FieldPtr base, const LorentzBoost& boost)
      : base_(std::move(base)), boost_(boost) {}

  JetSample jet(const SpacetimePoint& pt) const override;
  bool defined_at(const SpacetimePoint& pt) const override;

 private:
  FieldPtr base_;
  LorentzBoost boost_;
};

/// a*f + b*g, pointwise.
class LinearCombination final : public FieldEvaluator {
 public:
  LinearCombination(double a, FieldPtr f, double b, FieldPtr g)
      : a_(a), b_(b), f_(std::move(f)), g_(std::move(g)) {}

  JetSample jet(const SpacetimePoint& pt) const override;
  bool defined_at(const SpacetimePoint& pt) const override;
  Eigen::Vector3d wave_operator(const SpacetimePoint& pt) const override;

 private:
  double a_, b_;
  FieldPtr f_, g_;
};

/// Central finite-difference jet of a value-only function; test oracle.
template <typename ValueFn>
JetSample finite_difference_jet(const ValueFn& value, const SpacetimePoint& pt,
                                double h) {
  JetSample j;
  j.value = value(pt);
  for (int a = 0; a < 4; ++a) {
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
    e[a] = h;
    const SpacetimePoint plus(Eigen::Vector4d(pt.coords() + e));
    const SpacetimePoint minus(Eigen::Vector4d(pt.coords() - e));
    const Eigen::Vector3d d = (value(plus) - value(minus)) / (2 * h);
    if (a == 0) {
      j.dt = d;
    } else {
      j.grad.col(a - 1) = d;
    }
  }
  return j;
}

}  // namespace wavemaps
