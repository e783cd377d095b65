#pragma once

// Uniform space-time grid of R^3-valued samples with jet interpolation.
//
// Node (i, j, k) of level l sits at origin + (i, j, k) * spacing, time
// t0 + l * dt. Level storage is component-major: for component c the nodes
// follow with x fastest, i.e. index = ((c * nz + k) * ny + j) * nx + i.
//
// Binary container (all integers and floats little-endian):
//   char[8]   magic "WMGRID01"
//   u64[3]    nx, ny, nz
//   u64       level count
//   f64[3]    origin
//   f64[3]    spacing (hx, hy, hz)
//   f64       t0
//   f64       dt
//   f64[...]  levels, level-major, each laid out as above

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavemaps/field.hpp"

namespace wavemaps {

using LevelBuffer = std::shared_ptr<const Eigen::ArrayXd>;

class GridField final : public FieldEvaluator {
 public:
  GridField(const Eigen::Vector3d& origin, const Eigen::Vector3d& spacing,
            const Eigen::Vector3i& dims, double t0, double dt);

  const Eigen::Vector3d& origin() const { return origin_; }
  const Eigen::Vector3d& spacing() const { return spacing_; }
  const Eigen::Vector3i& dims() const { return dims_; }
  double t0() const { return t0_; }
  double dt() const { return dt_; }
  int level_count() const { return static_cast<int>(levels_.size()); }
  double level_time(int l) const { return t0_ + l * dt_; }
  Eigen::Index nodes_per_level() const {
    return Eigen::Index(dims_[0]) * dims_[1] * dims_[2];
  }

  /// Appends a level; size must be 3 * nodes_per_level().
  void push_level(LevelBuffer level);
  void push_level(Eigen::ArrayXd level);
  const Eigen::ArrayXd& level(int l) const { return *levels_.at(l); }

  Eigen::Index node_index(int i, int j, int k) const {
    return (Eigen::Index(k) * dims_[1] + j) * dims_[0] + i;
  }
  Eigen::Vector3d node_position(int i, int j, int k) const {
    return origin_ + spacing_.cwiseProduct(Eigen::Vector3d(i, j, k));
  }
  Eigen::Vector3d node_value(int l, int i, int j, int k) const;

  /// Whether pt lies in the slab minus the one-cell margin grid_jet needs.
  bool contains(const SpacetimePoint& pt) const;

  JetSample jet(const SpacetimePoint& pt) const override;
  bool defined_at(const SpacetimePoint& pt) const override { return contains(pt); }

  /// Interpolated value only; same domain as jet().
  Eigen::Vector3d value(const SpacetimePoint& pt) const;

  /// Bit-exact serialization.
  void write(std::ostream& out) const;
  static GridField read(std::istream& in);
  void save(const std::string& path) const;
  static GridField load(const std::string& path);

  bool operator==(const GridField& other) const;

 private:
  struct TimeStencil {
    int first;
    int count;
    double w[3];
    double dw[3];
  };
  TimeStencil time_stencil(double t) const;
  void check_inside(const SpacetimePoint& pt) const;

  Eigen::Vector3d origin_;
  Eigen::Vector3d spacing_;
  Eigen::Vector3i dims_;
  double t0_;
  double dt_;
  std::vector<LevelBuffer> levels_;
};

/// Sample a field onto a grid at the given level times.
GridField sample_to_grid(const FieldEvaluator& field, const Eigen::Vector3d& origin,
                         double h, const Eigen::Vector3i& dims, double t0, double dt,
                         int levels);

/// Interpolated jet; range error outside the slab minus its one-cell margin.
inline JetSample grid_jet(const GridField& field, const SpacetimePoint& pt) {
  return field.jet(pt);
}

}  // namespace wavemaps
