#include "wavemaps/field.hpp"

namespace wavemaps {

Eigen::Vector3d FieldEvaluator::wave_operator(const SpacetimePoint& pt) const {
  const double h = 1e-3 * std::max(1.0, pt.x.norm());
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  // d_a of the a-th first derivative with the 4th-order stencil (-f2 + 8f1 - 8f-1 + f-2) / 12h.
  for (int a = 0; a < 4; ++a) {
    auto first = [&](double off) {
      Eigen::Vector4d c = pt.coords();
      c[a] += off;
      const JetSample j = jet(SpacetimePoint(c));
      return a == 0 ? Eigen::Vector3d(j.dt) : Eigen::Vector3d(j.grad.col(a - 1));
    };
    const Eigen::Vector3d d =
        (-first(2 * h) + 8 * first(h) - 8 * first(-h) + first(-2 * h)) / (12 * h);
    out += a == 0 ? d : Eigen::Vector3d(-d);
  }
  return out;
}

JetSample BoostedField::jet(const SpacetimePoint& pt) const {
  const SpacetimePoint image = apply_boost(boost_, pt);
  const JetSample j = base_->jet(image);
  const Eigen::Matrix<double, 3, 4> d = j.spacetime_derivatives() * boost_.matrix;
  return JetSample::from_derivatives(j.value, d);
}

bool BoostedField::defined_at(const SpacetimePoint& pt) const {
  return base_->defined_at(apply_boost(boost_, pt));
}

JetSample LinearCombination::jet(const SpacetimePoint& pt) const {
  return a_ * f_->jet(pt) + b_ * g_->jet(pt);
}

bool LinearCombination::defined_at(const SpacetimePoint& pt) const {
  return f_->defined_at(pt) && g_->defined_at(pt);
}

Eigen::Vector3d LinearCombination::wave_operator(const SpacetimePoint& pt) const {
  return a_ * f_->wave_operator(pt) + b_ * g_->wave_operator(pt);
}

}  // namespace wavemaps
