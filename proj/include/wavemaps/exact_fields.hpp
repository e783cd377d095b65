#pragma once

// Closed-form fields used as exact solutions and manufactured data.

#include <Eigen/Dense>

#include "wavemaps/field.hpp"

namespace wavemaps {

class ConstantField final : public FieldEvaluator {
 public:
  explicit ConstantField(const Eigen::Vector3d& value) : value_(value) {}
  JetSample jet(const SpacetimePoint&) const override {
    JetSample j;
    j.value = value_;
    return j;
  }
  Eigen::Vector3d wave_operator(const SpacetimePoint&) const override {
    return Eigen::Vector3d::Zero();
  }

 private:
  Eigen::Vector3d value_;
};

/// u(p) = value + D p with a constant 3x4 derivative matrix D.
class AffineField final : public FieldEvaluator {
 public:
  AffineField(const Eigen::Vector3d& value, const Eigen::Matrix<double, 3, 4>& slope)
      : value_(value), slope_(slope) {}
  JetSample jet(const SpacetimePoint& pt) const override {
    return JetSample::from_derivatives(value_ + slope_ * pt.coords(), slope_);
  }
  Eigen::Vector3d wave_operator(const SpacetimePoint&) const override {
    return Eigen::Vector3d::Zero();
  }

 private:
  Eigen::Vector3d value_;
  Eigen::Matrix<double, 3, 4> slope_;
};

/// Geodesic wave map u = (cos f, sin f, 0) along the equator, with phase
/// f = omega t + k.x + a sin(m.x) cos(|m| t). Any phase solving the linear
/// wave equation gives an exact wave map; a = 0 is the plane wave.
class GeodesicWave final : public FieldEvaluator {
 public:
  GeodesicWave(double omega, const Eigen::Vector3d& k, double amplitude = 0.0,
               const Eigen::Vector3d& m = Eigen::Vector3d::Zero())
      : omega_(omega), k_(k), amp_(amplitude), m_(m) {}

  double phase(const SpacetimePoint& pt) const;
  JetSample jet(const SpacetimePoint& pt) const override;
  Eigen::Vector3d wave_operator(const SpacetimePoint& pt) const override;

 private:
  double omega_;
  Eigen::Vector3d k_;
  double amp_;
  Eigen::Vector3d m_;
};

/// Scalar polynomial f(t, x) embedded as (f, 0, 0). Supports total degree <= 3
/// through explicit coefficient lists of monomials.
class ScalarPolynomialField final : public FieldEvaluator {
 public:
  struct Monomial {
    double coeff;
    Eigen::Vector4i powers;  // exponents of (t, x1, x2, x3)
  };
  explicit ScalarPolynomialField(std::vector<Monomial> terms) : terms_(std::move(terms)) {}

  /// t^2 - |x|^2.
  static ScalarPolynomialField null_quadric();
  /// A cubic with every variable present, so its stress tensor is quartic.
  static ScalarPolynomialField generic_cubic();

  JetSample jet(const SpacetimePoint& pt) const override;
  Eigen::Vector3d wave_operator(const SpacetimePoint& pt) const override;

 private:
  double eval(const Eigen::Vector4d& c, const Eigen::Vector4i& diff) const;
  std::vector<Monomial> terms_;
};

/// u(t, x) = (t^p / p!) * amplitude * B(|x - center| / width), where B is the
/// unnormalized bump profile. p >= 2 gives Du(0) = 0.
class TimePowerBump final : public FieldEvaluator {
 public:
  TimePowerBump(int power, const Eigen::Vector3d& amplitude, const Eigen::Vector3d& center,
                double width)
      : power_(power), amp_(amplitude), center_(center), width_(width) {}

  JetSample jet(const SpacetimePoint& pt) const override;
  Eigen::Vector3d wave_operator(const SpacetimePoint& pt) const override;

 private:
  int power_;
  Eigen::Vector3d amp_;
  Eigen::Vector3d center_;
  double width_;
};

}  // namespace wavemaps
