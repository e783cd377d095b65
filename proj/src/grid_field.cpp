#include "wavemaps/grid_field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace wavemaps {

namespace {

constexpr char kMagic[8] = {'W', 'M', 'G', 'R', 'I', 'D', '0', '1'};

template <typename T>
void write_le(std::ostream& out, T v) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  out.write(reinterpret_cast<const char*>(&bits), 8);
}

template <typename T>
T read_le(std::istream& in) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  in.read(reinterpret_cast<char*>(&bits), 8);
  if (!in) throw RangeError("grid container truncated");
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  T v;
  std::memcpy(&v, &bits, 8);
  return v;
}

// Trilinear weights of the cell containing a point, clamped so that every
// corner has both neighbours along each axis.
struct Cell {
  int base[3];
  double frac[3];
};

}  // namespace

GridField::GridField(const Eigen::Vector3d& origin, const Eigen::Vector3d& spacing,
                     const Eigen::Vector3i& dims, double t0, double dt)
    : origin_(origin), spacing_(spacing), dims_(dims), t0_(t0), dt_(dt) {
  if ((dims.array() < 4).any()) throw DomainError("grid needs at least 4 nodes per axis");
  if ((spacing.array() <= 0).any()) throw DomainError("grid spacing must be positive");
  if (!(dt > 0)) throw DomainError("grid time step must be positive");
}

void GridField::push_level(LevelBuffer level) {
  if (!level || level->size() != 3 * nodes_per_level()) {
    throw DomainError("level size does not match grid dimensions");
  }
  levels_.push_back(std::move(level));
}

void GridField::push_level(Eigen::ArrayXd level) {
  push_level(std::make_shared<const Eigen::ArrayXd>(std::move(level)));
}

Eigen::Vector3d GridField::node_value(int l, int i, int j, int k) const {
  const Eigen::ArrayXd& a = *levels_.at(l);
  const Eigen::Index n = nodes_per_level();
  const Eigen::Index idx = node_index(i, j, k);
  return {a[idx], a[n + idx], a[2 * n + idx]};
}

bool GridField::contains(const SpacetimePoint& pt) const {
  if (levels_.empty()) return false;
  const double span = (level_count() - 1) * dt_;
  const double tol = 1e-9 * dt_;
  if (pt.t < t0_ - tol || pt.t > t0_ + span + tol) return false;
  for (int a = 0; a < 3; ++a) {
    const double u = (pt.x[a] - origin_[a]) / spacing_[a];
    if (u < 1 - 1e-9 || u > dims_[a] - 2 + 1e-9) return false;
  }
  return true;
}

void GridField::check_inside(const SpacetimePoint& pt) const {
  if (!contains(pt)) throw RangeError("point outside the grid slab");
}

GridField::TimeStencil GridField::time_stencil(double t) const {
  TimeStencil s{};
  const int n = level_count();
  const double tau = (t - t0_) / dt_;
  if (n == 1) {
    s.first = 0;
    s.count = 1;
    s.w[0] = 1;
    s.dw[0] = 0;
    return s;
  }
  if (n == 2) {
    s.first = 0;
    s.count = 2;
    s.w[0] = 1 - tau;
    s.w[1] = tau;
    s.dw[0] = -1 / dt_;
    s.dw[1] = 1 / dt_;
    return s;
  }
  const int c = std::clamp(static_cast<int>(std::lround(tau)), 1, n - 2);
  s.first = c - 1;
  s.count = 3;
  const double x = tau - c;  // nodes at -1, 0, 1
  s.w[0] = 0.5 * x * (x - 1);
  s.w[1] = 1 - x * x;
  s.w[2] = 0.5 * x * (x + 1);
  s.dw[0] = (x - 0.5) / dt_;
  s.dw[1] = -2 * x / dt_;
  s.dw[2] = (x + 0.5) / dt_;
  return s;
}

JetSample GridField::jet(const SpacetimePoint& pt) const {
  check_inside(pt);
  Cell cell;
  for (int a = 0; a < 3; ++a) {
    const double u = (pt.x[a] - origin_[a]) / spacing_[a];
    cell.base[a] = std::clamp(static_cast<int>(std::floor(u)), 1, dims_[a] - 3);
    cell.frac[a] = u - cell.base[a];
  }
  const TimeStencil ts = time_stencil(pt.t);
  const Eigen::Index n = nodes_per_level();
  const Eigen::Index stride[3] = {1, dims_[0], Eigen::Index(dims_[0]) * dims_[1]};
  const Eigen::Index base = node_index(cell.base[0], cell.base[1], cell.base[2]);

  JetSample out;
  for (int m = 0; m < ts.count; ++m) {
    const double* lev = levels_[ts.first + m]->data();
    Eigen::Vector3d val = Eigen::Vector3d::Zero();
    Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
    for (int corner = 0; corner < 8; ++corner) {
      const int o[3] = {corner & 1, (corner >> 1) & 1, (corner >> 2) & 1};
      const double w = (o[0] ? cell.frac[0] : 1 - cell.frac[0]) *
                       (o[1] ? cell.frac[1] : 1 - cell.frac[1]) *
                       (o[2] ? cell.frac[2] : 1 - cell.frac[2]);
      const Eigen::Index idx = base + o[0] * stride[0] + o[1] * stride[1] + o[2] * stride[2];
      for (int c = 0; c < 3; ++c) {
        const double* comp = lev + c * n;
        val[c] += w * comp[idx];
        for (int a = 0; a < 3; ++a) {
          grad(c, a) += w * (comp[idx + stride[a]] - comp[idx - stride[a]]) / (2 * spacing_[a]);
        }
      }
    }
    out.value += ts.w[m] * val;
    out.grad += ts.w[m] * grad;
    out.dt += ts.dw[m] * val;
  }
  return out;
}

Eigen::Vector3d GridField::value(const SpacetimePoint& pt) const {
  check_inside(pt);
  Cell cell;
  for (int a = 0; a < 3; ++a) {
    const double u = (pt.x[a] - origin_[a]) / spacing_[a];
    cell.base[a] = std::clamp(static_cast<int>(std::floor(u)), 1, dims_[a] - 3);
    cell.frac[a] = u - cell.base[a];
  }
  const TimeStencil ts = time_stencil(pt.t);
  const Eigen::Index n = nodes_per_level();
  const Eigen::Index stride[3] = {1, dims_[0], Eigen::Index(dims_[0]) * dims_[1]};
  const Eigen::Index base = node_index(cell.base[0], cell.base[1], cell.base[2]);
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int m = 0; m < ts.count; ++m) {
    const double* lev = levels_[ts.first + m]->data();
    for (int corner = 0; corner < 8; ++corner) {
      const int o[3] = {corner & 1, (corner >> 1) & 1, (corner >> 2) & 1};
      const double w = ts.w[m] * (o[0] ? cell.frac[0] : 1 - cell.frac[0]) *
                       (o[1] ? cell.frac[1] : 1 - cell.frac[1]) *
                       (o[2] ? cell.frac[2] : 1 - cell.frac[2]);
      const Eigen::Index idx = base + o[0] * stride[0] + o[1] * stride[1] + o[2] * stride[2];
      for (int c = 0; c < 3; ++c) out[c] += w * lev[c * n + idx];
    }
  }
  return out;
}

void GridField::write(std::ostream& out) const {
  out.write(kMagic, 8);
  for (int a = 0; a < 3; ++a) write_le<std::uint64_t>(out, static_cast<std::uint64_t>(dims_[a]));
  write_le<std::uint64_t>(out, levels_.size());
  for (int a = 0; a < 3; ++a) write_le<double>(out, origin_[a]);
  for (int a = 0; a < 3; ++a) write_le<double>(out, spacing_[a]);
  write_le<double>(out, t0_);
  write_le<double>(out, dt_);
  for (const LevelBuffer& lev : levels_) {
    for (Eigen::Index i = 0; i < lev->size(); ++i) write_le<double>(out, (*lev)[i]);
  }
}

GridField GridField::read(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw RangeError("not a grid container");
  }
  Eigen::Vector3i dims;
  for (int a = 0; a < 3; ++a) dims[a] = static_cast<int>(read_le<std::uint64_t>(in));
  const auto count = read_le<std::uint64_t>(in);
  Eigen::Vector3d origin, spacing;
  for (int a = 0; a < 3; ++a) origin[a] = read_le<double>(in);
  for (int a = 0; a < 3; ++a) spacing[a] = read_le<double>(in);
  const double t0 = read_le<double>(in);
  const double dt = read_le<double>(in);
  GridField g(origin, spacing, dims, t0, dt);
  for (std::uint64_t l = 0; l < count; ++l) {
    Eigen::ArrayXd lev(3 * g.nodes_per_level());
    for (Eigen::Index i = 0; i < lev.size(); ++i) lev[i] = read_le<double>(in);
    g.push_level(std::move(lev));
  }
  return g;
}

void GridField::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RangeError("cannot open " + path + " for writing");
  write(out);
}

GridField GridField::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RangeError("cannot open " + path);
  return read(in);
}

bool GridField::operator==(const GridField& other) const {
  if (dims_ != other.dims_ || origin_ != other.origin_ || spacing_ != other.spacing_ ||
      t0_ != other.t0_ || dt_ != other.dt_ || levels_.size() != other.levels_.size()) {
    return false;
  }
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const auto& a = *levels_[l];
    const auto& b = *other.levels_[l];
    if (std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) != 0) return false;
  }
  return true;
}

GridField sample_to_grid(const FieldEvaluator& field, const Eigen::Vector3d& origin, double h,
                         const Eigen::Vector3i& dims, double t0, double dt, int levels) {
  GridField g(origin, Eigen::Vector3d::Constant(h), dims, t0, dt);
  const Eigen::Index n = g.nodes_per_level();
  for (int l = 0; l < levels; ++l) {
    Eigen::ArrayXd lev(3 * n);
    const double t = t0 + l * dt;
    for (int k = 0; k < dims[2]; ++k) {
      for (int j = 0; j < dims[1]; ++j) {
        for (int i = 0; i < dims[0]; ++i) {
          const Eigen::Vector3d v = field.jet(SpacetimePoint(t, g.node_position(i, j, k))).value;
          const Eigen::Index idx = g.node_index(i, j, k);
          for (int c = 0; c < 3; ++c) lev[c * n + idx] = v[c];
        }
      }
    }
    g.push_level(std::move(lev));
  }
  return g;
}

}  // namespace wavemaps
