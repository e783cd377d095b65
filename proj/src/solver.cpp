#include "wavemaps/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wavemaps {

namespace {

struct Layout {
  int interior;  // N
  int n;         // N + 2
  Eigen::Index m;

  explicit Layout(const SolverConfig& cfg)
      : interior(cfg.cells()), n(interior + 2), m(Eigen::Index(n) * n * n) {}
  Eigen::Index index(int p, int q, int r) const { return (Eigen::Index(r) * n + q) * n + p; }
};

double potential(double q) {
  const double a = q - 1;
  return 0.25 * a * a;
}

int wrap(int p, int interior) {
  if (p == 0) return interior;
  if (p == interior + 1) return 1;
  return p;
}

void fill_ghosts(Eigen::ArrayXd& u, const Eigen::ArrayXd* boundary, const SolverConfig& cfg,
                 const Layout& g) {
  const bool periodic = cfg.boundary == BoundaryMode::periodic;
  auto set = [&](int p, int q, int r) {
    const Eigen::Index dst = g.index(p, q, r);
    const Eigen::Index src = periodic
                                 ? g.index(wrap(p, g.interior), wrap(q, g.interior), wrap(r, g.interior))
                                 : dst;
    const Eigen::ArrayXd& from = periodic ? u : *boundary;
    for (int c = 0; c < 3; ++c) u[c * g.m + dst] = from[c * g.m + src];
  };
  const int last = g.n - 1;
  for (int r = 0; r < g.n; ++r) {
    for (int q = 0; q < g.n; ++q) {
      if (r == 0 || r == last || q == 0 || q == last) {
        for (int p = 0; p < g.n; ++p) set(p, q, r);
      } else {
        set(0, q, r);
        set(last, q, r);
      }
    }
  }
}

// next = 2 cur - prev + dt^2 (Lap_h cur - n^2 (|cur|^2 - 1) cur) on interior cells.
void leapfrog_kernel(const Eigen::ArrayXd& prev, const Eigen::ArrayXd& cur, Eigen::ArrayXd& next,
                     const SolverConfig& cfg, const Layout& g, double dt) {
  const double inv_h2 = 1 / (cfg.spacing * cfg.spacing);
  const double n2 = cfg.penalty * cfg.penalty;
  const double dt2 = dt * dt;
  const Eigen::Index sy = g.n;
  const Eigen::Index sz = Eigen::Index(g.n) * g.n;
  const double* u = cur.data();
  const double* um = prev.data();
  double* out = next.data();
  for (int r = 1; r <= g.interior; ++r) {
    for (int q = 1; q <= g.interior; ++q) {
      const Eigen::Index row = g.index(1, q, r);
      for (Eigen::Index id = row; id < row + g.interior; ++id) {
        const double q2 = u[id] * u[id] + u[g.m + id] * u[g.m + id] +
                          u[2 * g.m + id] * u[2 * g.m + id];
        const double pen = n2 * (q2 - 1);
        for (int c = 0; c < 3; ++c) {
          const double* v = u + c * g.m;
          const Eigen::Index at = c * g.m + id;
          const double lap =
              (v[id - 1] + v[id + 1] + v[id - sy] + v[id + sy] + v[id - sz] + v[id + sz] -
               6 * v[id]) *
              inv_h2;
          out[at] = 2 * v[id] - um[at] + dt2 * (lap - pen * v[id]);
        }
      }
    }
  }
}

Eigen::Vector3d padded_origin(const SolverConfig& cfg) {
  return Eigen::Vector3d::Constant(cfg.cell_center(-1));
}

std::string bound_message(const SolverConfig& cfg, double dt) {
  std::ostringstream s;
  s << "dt = " << dt << " against the bound cfl * min(h / sqrt 3, 1 / n) = "
    << cfg.stability_bound() << " (h = " << cfg.spacing << ", n = " << cfg.penalty << ")";
  return s.str();
}

}  // namespace

void SolverConfig::validate() const {
  if (!(half_width > 0) || !(spacing > 0)) throw DomainError("box and spacing must be positive");
  if (!(t_end > 0)) throw DomainError("t_end must be positive");
  if (!(cfl > 0 && cfl <= 1)) throw DomainError("cfl factor must lie in (0, 1]");
  if (!(penalty >= 0)) throw DomainError("penalty must be non-negative");
  if (!(dt >= 0)) throw DomainError("dt must be non-negative");
  const double ratio = 2 * half_width / spacing;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw DomainError("2L / h must be an integer");
  }
  if (std::lround(ratio) < 4) throw DomainError("grid needs at least 4 cells per axis");
  if (dt > 0 && dt > stability_bound() * (1 + 1e-12)) {
    throw DomainError("unstable time step: " + bound_message(*this, dt));
  }
}

int SolverConfig::cells() const { return static_cast<int>(std::lround(2 * half_width / spacing)); }

double SolverConfig::stability_bound() const {
  double b = spacing / std::sqrt(3.0);
  if (penalty > 0) b = std::min(b, 1 / penalty);
  return cfl * b;
}

double SolverConfig::time_step() const {
  if (dt > 0) return dt;
  const double count = std::ceil(t_end / stability_bound() - 1e-9);
  return t_end / count;
}

int SolverConfig::steps() const {
  const double ratio = t_end / time_step();
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) < 1e-6) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(ratio));
}

double SolverConfig::cell_center(int i) const {
  return -half_width + (i + (cell_centered ? 0.5 : 0.0)) * spacing;
}

double EnergyLedger::relative_drift() const {
  if (records.empty()) return 0;
  const double e0 = records.front().total;
  double worst = 0;
  for (const LedgerRecord& r : records) worst = std::max(worst, std::abs(r.total - e0));
  return e0 != 0 ? worst / std::abs(e0) : worst;
}

void EnergyLedger::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw RangeError("cannot open " + path + " for writing");
  out << "step,time,kinetic,gradient,penalty,total\n";
  char line[256];
  for (const LedgerRecord& r : records) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step, r.time,
                  r.kinetic, r.gradient, r.penalty, r.total);
    out << line;
  }
}

StateSlab init_from_data(const FieldEvaluator& f, const FieldEvaluator& g,
                         const SolverConfig& cfg) {
  cfg.validate();
  const Layout lay(cfg);
  const bool periodic = cfg.boundary == BoundaryMode::periodic;
  const double dt = cfg.time_step();

  Eigen::ArrayXd u0(3 * lay.m);
  Eigen::ArrayXd v0 = Eigen::ArrayXd::Zero(3 * lay.m);
  const int lo = periodic ? 1 : 0;
  const int hi = periodic ? lay.interior : lay.n - 1;
  for (int r = lo; r <= hi; ++r) {
    for (int q = lo; q <= hi; ++q) {
      for (int p = lo; p <= hi; ++p) {
        const SpacetimePoint pt(0.0, Eigen::Vector3d(cfg.cell_center(p - 1), cfg.cell_center(q - 1),
                                                     cfg.cell_center(r - 1)));
        if (!f.defined_at(pt)) {
          throw DomainError("initial data singular at a grid node; use a cell-centered grid");
        }
        const Eigen::Index id = lay.index(p, q, r);
        const Eigen::Vector3d value = f.jet(pt).value;
        const bool interior = p >= 1 && p <= lay.interior && q >= 1 && q <= lay.interior &&
                              r >= 1 && r <= lay.interior;
        const Eigen::Vector3d vel = interior ? g.jet(pt).value : Eigen::Vector3d::Zero();
        for (int c = 0; c < 3; ++c) {
          u0[c * lay.m + id] = value[c];
          v0[c * lay.m + id] = vel[c];
        }
      }
    }
  }
  if (!u0.allFinite() || !v0.allFinite()) throw DomainError("initial data not finite on the grid");
  if (periodic) fill_ghosts(u0, nullptr, cfg, lay);

  auto boundary = std::make_shared<const Eigen::ArrayXd>(u0);
  // With prev = u0 - dt v0 the kernel yields u0 + dt v0 + dt^2 A(u0); halve the
  // acceleration by averaging with the plain Taylor step.
  Eigen::ArrayXd back = u0 - dt * v0;
  Eigen::ArrayXd u1(3 * lay.m);
  leapfrog_kernel(back, u0, u1, cfg, lay, dt);
  u1 = 0.5 * (u1 + u0 + dt * v0);
  fill_ghosts(u1, boundary.get(), cfg, lay);

  StateSlab s;
  s.previous = std::move(u0);
  s.current = std::move(u1);
  s.step = 1;
  s.time = dt;
  s.boundary = std::move(boundary);
  return s;
}

StateSlab step(StateSlab state, const SolverConfig& cfg) {
  const Layout lay(cfg);
  const double dt = cfg.time_step();
  Eigen::ArrayXd next(3 * lay.m);
  leapfrog_kernel(state.previous, state.current, next, cfg, lay, dt);
  fill_ghosts(next, state.boundary.get(), cfg, lay);
  if (!next.allFinite()) {
    throw InstabilityError("solution left the finite range at step " +
                           std::to_string(state.step + 1) + "; " + bound_message(cfg, dt));
  }
  state.previous = std::move(state.current);
  state.current = std::move(next);
  state.step += 1;
  state.time = state.step * dt;
  return state;
}

LedgerRecord ledger_record(const Eigen::ArrayXd& prev, const Eigen::ArrayXd& cur,
                           const Eigen::ArrayXd& next, const SolverConfig& cfg, int k) {
  const Layout lay(cfg);
  const double dt = cfg.time_step();
  const double h = cfg.spacing;
  const double n2 = cfg.penalty * cfg.penalty;
  const bool clamped = cfg.boundary == BoundaryMode::clamped;
  const Eigen::Index stride[3] = {1, lay.n, Eigen::Index(lay.n) * lay.n};
  CompensatedSum kinetic, gradient, penalty;
  for (int r = 1; r <= lay.interior; ++r) {
    for (int q = 1; q <= lay.interior; ++q) {
      for (int p = 1; p <= lay.interior; ++p) {
        const Eigen::Index id = lay.index(p, q, r);
        const int pos[3] = {p, q, r};
        double kin = 0, grad = 0, q2 = 0;
        for (int c = 0; c < 3; ++c) {
          const Eigen::Index at = c * lay.m + id;
          const double v = (next[at] - prev[at]) / (2 * dt);
          kin += v * v;
          q2 += cur[at] * cur[at];
          for (int a = 0; a < 3; ++a) {
            const double d = cur[at + stride[a]] - cur[at];
            grad += d * d;
            if (clamped && pos[a] == 1) {
              const double e = cur[at] - cur[at - stride[a]];
              grad += e * e;
            }
          }
        }
        kinetic.add(kin);
        gradient.add(grad);
        penalty.add(potential(q2));
      }
    }
  }
  const double vol = h * h * h;
  LedgerRecord rec;
  rec.step = k;
  rec.time = k * dt;
  rec.kinetic = 0.5 * vol * kinetic.value();
  rec.gradient = 0.5 * h * gradient.value();
  rec.penalty = n2 * vol * penalty.value();
  rec.total = rec.kinetic + rec.gradient + rec.penalty;
  return rec;
}

Eigen::Vector3d cell_value(const Eigen::ArrayXd& level, const SolverConfig& cfg, int i, int j,
                           int k) {
  const Layout lay(cfg);
  if (level.size() != 3 * lay.m) throw DomainError("level size does not match the solver grid");
  const Eigen::Index id = lay.index(i + 1, j + 1, k + 1);
  return {level[id], level[lay.m + id], level[2 * lay.m + id]};
}

RunResult run(const SolverConfig& cfg, const FieldEvaluator& f, const FieldEvaluator& g,
              const std::vector<LevelObserver*>& observers, const StoreSpec& store) {
  StateSlab init = init_from_data(f, g, cfg);
  const Layout lay(cfg);
  const double dt = cfg.time_step();
  const int nsteps = cfg.steps();
  const Eigen::Vector3d origin = padded_origin(cfg);
  const Eigen::Vector3d spacing = Eigen::Vector3d::Constant(cfg.spacing);
  const Eigen::Vector3i dims = Eigen::Vector3i::Constant(lay.n);

  // level k - 1, k, k + 1
  std::shared_ptr<Eigen::ArrayXd> lv[3];
  lv[1] = std::make_shared<Eigen::ArrayXd>(std::move(init.previous));
  lv[2] = std::make_shared<Eigen::ArrayXd>(std::move(init.current));
  lv[0] = std::make_shared<Eigen::ArrayXd>(3 * lay.m);
  leapfrog_kernel(*lv[2], *lv[1], *lv[0], cfg, lay, dt);
  fill_ghosts(*lv[0], init.boundary.get(), cfg, lay);

  RunResult result;
  int crop_lo[3] = {0, 0, 0}, crop_n[3] = {lay.n, lay.n, lay.n};
  if (store.enabled) {
    if (store.stride < 1) throw DomainError("store stride must be positive");
    for (int a = 0; a < 3; ++a) {
      const int lo = std::max(0, static_cast<int>(std::floor((store.lo[a] - origin[a]) / cfg.spacing)));
      const int hi = std::min(lay.n - 1,
                              static_cast<int>(std::ceil((store.hi[a] - origin[a]) / cfg.spacing)));
      if (hi - lo + 1 < 4) throw DomainError("store box needs at least 4 nodes per axis");
      crop_lo[a] = lo;
      crop_n[a] = hi - lo + 1;
    }
    result.stored.emplace(
        Eigen::Vector3d(origin + cfg.spacing * Eigen::Vector3d(crop_lo[0], crop_lo[1], crop_lo[2])),
        spacing, Eigen::Vector3i(crop_n[0], crop_n[1], crop_n[2]), 0.0, store.stride * dt);
  }

  for (int k = 0;; ++k) {
    const LedgerRecord rec = ledger_record(*lv[0], *lv[1], *lv[2], cfg, k);
    if (!std::isfinite(rec.total)) {
      throw InstabilityError("discrete energy left the finite range at step " + std::to_string(k) +
                             "; " + bound_message(cfg, dt));
    }
    result.ledger.records.push_back(rec);

    if (store.enabled && k % store.stride == 0) {
      const Eigen::Index cm = Eigen::Index(crop_n[0]) * crop_n[1] * crop_n[2];
      Eigen::ArrayXd level(3 * cm);
      for (int c = 0; c < 3; ++c) {
        for (int r = 0; r < crop_n[2]; ++r) {
          for (int q = 0; q < crop_n[1]; ++q) {
            for (int p = 0; p < crop_n[0]; ++p) {
              level[c * cm + (Eigen::Index(r) * crop_n[1] + q) * crop_n[0] + p] =
                  (*lv[1])[c * lay.m + lay.index(p + crop_lo[0], q + crop_lo[1], r + crop_lo[2])];
            }
          }
        }
      }
      result.stored->push_level(std::move(level));
    }

    if (!observers.empty()) {
      GridField window(origin, spacing, dims, (k - 1) * dt, dt);
      for (auto& l : lv) window.push_level(LevelBuffer(l));
      for (LevelObserver* obs : observers) obs->observe(window, k);
    }

    if (k == nsteps) break;
    // reuse the oldest buffer for level k + 2
    leapfrog_kernel(*lv[1], *lv[2], *lv[0], cfg, lay, dt);
    fill_ghosts(*lv[0], init.boundary.get(), cfg, lay);
    std::rotate(lv, lv + 1, lv + 3);
  }

  result.final_state.previous = std::move(*lv[0]);
  result.final_state.current = std::move(*lv[1]);
  result.final_state.step = nsteps;
  result.final_state.time = nsteps * dt;
  result.final_state.boundary = init.boundary;
  return result;
}

std::function<bool(const SpacetimePoint&)> trusted_region(const SolverConfig& cfg,
                                                          const ConeSpec& cone) {
  const double limit = cfg.half_width - cfg.spacing;
  return [cone, limit](const SpacetimePoint& pt) {
    if (pt.t < 0 || !cone.contains(pt, 1e-12)) return false;
    return pt.x.cwiseAbs().maxCoeff() + pt.t <= limit;
  };
}

bool cone_trusted(const SolverConfig& cfg, const ConeSpec& cone) {
  if (cone.a < 0) return false;
  const double limit = cfg.half_width - cfg.spacing;
  const double reach = cone.apex.x.cwiseAbs().maxCoeff();
  for (double t : {cone.a, cone.b}) {
    if (reach + cone.radius_at(t) + t > limit + 1e-12) return false;
  }
  return true;
}

ConeBalanceObserver::ConeBalanceObserver(const ConeSpec& cone, const SolverConfig& cfg,
                                         double penalty, const BalanceRules& rules,
                                         FocusFn focus)
    : cone_(cone),
      dt_(cfg.time_step()),
      penalty_(penalty),
      rules_(rules),
      fine_sphere_(make_sphere_rule(rules.surface.polar, rules.surface.azimuth)),
      coarse_sphere_(
          make_sphere_rule(rules.surface.coarse().polar, rules.surface.coarse().azimuth)),
      focus_(std::move(focus)) {
  if (std::abs(cone.a) > 1e-12) throw DomainError("solver cones must be based at t = 0");
  top_ = static_cast<int>(std::lround((cone.b - cone.a) / dt_));
  if (top_ < 1) throw DomainError("cone height below one time step");
  cone_.a = 0;
  cone_.b = top_ * dt_;
  if (!(cone_.b < cone_.apex.t)) throw DomainError("snapped cone height reaches the apex");
}

double ConeBalanceObserver::disk_energy(const GridField& w, double t, const BallRule& rule) const {
  const double n2 = penalty_ * penalty_;
  return integrate_ball(
      [&](const Eigen::Vector3d& x) {
        const JetSample j = w.jet(SpacetimePoint(t, x));
        return 0.5 * (j.dt.squaredNorm() + j.grad.squaredNorm()) +
               n2 * potential(j.value.squaredNorm());
      },
      cone_.center(), cone_.radius_at(t), rule, focus_ ? focus_(t) : std::nullopt);
}

double ConeBalanceObserver::flux_slice(const GridField& w, double t,
                                       const SphereRule& sphere) const {
  const double n2 = penalty_ * penalty_;
  const double r = cone_.radius_at(t);
  CompensatedSum s;
  for (std::size_t b = 0; b < sphere.directions.size(); ++b) {
    const Eigen::Vector3d& n = sphere.directions[b];
    const JetSample j = w.jet(SpacetimePoint(t, cone_.center() + r * n));
    const double density =
        0.5 * (j.grad - j.dt * n.transpose()).squaredNorm() + n2 * potential(j.value.squaredNorm());
    s.add(sphere.weights[b] * density * r * r);
  }
  return s.value();
}

void ConeBalanceObserver::observe(const GridField& window, int k) {
  if (k > top_) return;
  const double t = k * dt_;
  const BallRule balls[2] = {rules_.ball, rules_.ball.coarse()};
  const SphereRule* spheres[2] = {&fine_sphere_, &coarse_sphere_};
  const double weight = (k == 0 || k == top_) ? 0.5 * dt_ : dt_;
  for (int i = 0; i < 2; ++i) {
    if (k == 0) base_[i] = disk_energy(window, t, balls[i]);
    flux_[i].add(weight * flux_slice(window, t, *spheres[i]));
    if (k == top_) top_energy_[i] = disk_energy(window, t, balls[i]);
  }
  if (k == top_) done_ = true;
}

BalanceReport ConeBalanceObserver::report() const {
  if (!done_) throw RangeError("cone balance incomplete: run ended before the cone top");
  BalanceReport r;
  r.e_base = base_[0];
  r.e_top = top_energy_[0];
  r.flux = flux_[0].value();
  r.balance = r.e_base - r.e_top - r.flux;
  const double coarse = base_[1] - top_energy_[1] - flux_[1].value();
  r.error_estimate = std::abs(r.balance - coarse);
  return r;
}

SlabIntegralObserver::SlabIntegralObserver(Eigen::Vector3d center, Radius inner, Radius outer,
                                           double t_top, double dt, Integrand integrand,
                                           const BallRule& rule, FocusFn focus)
    : center_(std::move(center)),
      inner_(std::move(inner)),
      outer_(std::move(outer)),
      top_(static_cast<int>(std::lround(t_top / dt))),
      dt_(dt),
      integrand_(std::move(integrand)),
      rule_(rule),
      focus_(std::move(focus)) {
  if (top_ < 1) throw DomainError("slab thinner than one time step");
}

void SlabIntegralObserver::observe(const GridField& window, int k) {
  if (k > top_) return;
  const double t = k * dt_;
  const double weight = (k == 0 || k == top_) ? 0.5 * dt_ : dt_;
  const double r_in = inner_ ? inner_(t) : 0.0;
  const double r_out = outer_(t);
  const BallRule rules[2] = {rule_, rule_.coarse()};
  if (r_out > r_in) {
    auto fn = [&](const Eigen::Vector3d& x) {
      return integrand_(t, x, window.jet(SpacetimePoint(t, x)));
    };
    for (int i = 0; i < 2; ++i) {
      const double v = r_in > 0
                           ? integrate_shell(fn, center_, r_in, r_out, rules[i])
                           : integrate_ball(fn, center_, r_out, rules[i],
                                            focus_ ? focus_(t) : std::nullopt);
      sum_[i].add(weight * v);
    }
  }
  if (k == top_) done_ = true;
}

DiskSampler::DiskSampler(const ConeSpec& cone, const SolverConfig& cfg, std::vector<double> times)
    : cone_(cone), cfg_(cfg) {
  const double dt = cfg.time_step();
  for (double t : times) levels_.push_back(static_cast<int>(std::lround(t / dt)));
}

void DiskSampler::observe(const GridField& window, int k) {
  if (std::find(levels_.begin(), levels_.end(), k) == levels_.end()) return;
  const Layout lay(cfg_);
  const double t = window.level_time(1);
  const double r = cone_.radius_at(t);
  const double vol = cfg_.spacing * cfg_.spacing * cfg_.spacing;
  const Eigen::ArrayXd& u = window.level(1);
  Sample s{t, 0.0, {}};
  CompensatedSum viol;
  for (int rr = 1; rr <= lay.interior; ++rr) {
    for (int q = 1; q <= lay.interior; ++q) {
      for (int p = 1; p <= lay.interior; ++p) {
        const Eigen::Vector3d x(cfg_.cell_center(p - 1), cfg_.cell_center(q - 1),
                                cfg_.cell_center(rr - 1));
        if ((x - cone_.center()).norm() > r) continue;
        const Eigen::Index id = lay.index(p, q, rr);
        double q2 = 0;
        for (int c = 0; c < 3; ++c) {
          const double v = u[c * lay.m + id];
          s.values.push_back(v);
          q2 += v * v;
        }
        viol.add((q2 - 1) * (q2 - 1) * vol);
      }
    }
  }
  s.violation = viol.value();
  samples_.push_back(std::move(s));
}

bool SweepReport::violation_decreasing() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (!(entries[i].violation.back() < entries[i - 1].violation.back())) return false;
  }
  return true;
}

bool SweepReport::cauchy_trending() const {
  for (std::size_t i = 1; i < distance.size(); ++i) {
    if (!(distance[i].back() <= distance[i - 1].back())) return false;
  }
  return true;
}

SweepReport penalization_sweep(
    const std::vector<double>& schedule, const FieldEvaluator& f, const FieldEvaluator& g,
    const SolverConfig& base, const ConeSpec& cone, const std::vector<double>& sample_times,
    const std::function<std::vector<LevelObserver*>(double)>& observers_for) {
  if (schedule.empty() || sample_times.empty()) throw DomainError("empty sweep schedule");
  SweepReport report;
  std::vector<DiskSampler::Sample> previous;
  for (double n : schedule) {
    SolverConfig cfg = base;
    cfg.penalty = n;
    cfg.dt = 0;
    if (!cone_trusted(cfg, cone)) throw DomainError("sweep cone is not trusted in the solver box");
    DiskSampler sampler(cone, cfg, sample_times);
    std::vector<LevelObserver*> observers{&sampler};
    if (observers_for) {
      for (LevelObserver* o : observers_for(n)) observers.push_back(o);
    }
    const RunResult res = run(cfg, f, g, observers);

    SweepEntry e;
    e.penalty = n;
    e.dt = cfg.time_step();
    e.steps = cfg.steps();
    e.max_penalty_energy = 0;
    for (const LedgerRecord& r : res.ledger.records) {
      e.max_penalty_energy = std::max(e.max_penalty_energy, r.penalty);
    }
    e.energy_drift = res.ledger.relative_drift();
    e.ledger = res.ledger;
    for (const auto& s : sampler.samples()) {
      e.times.push_back(s.time);
      e.violation.push_back(s.violation);
    }
    if (!previous.empty()) {
      std::vector<double> d;
      const double vol = cfg.spacing * cfg.spacing * cfg.spacing;
      for (std::size_t s = 0; s < previous.size() && s < sampler.samples().size(); ++s) {
        const auto& a = previous[s].values;
        const auto& b = sampler.samples()[s].values;
        if (a.size() != b.size()) {
          d.push_back(std::nan(""));
          continue;
        }
        CompensatedSum sum;
        for (std::size_t i = 0; i < a.size(); ++i) sum.add((a[i] - b[i]) * (a[i] - b[i]));
        d.push_back(std::sqrt(vol * sum.value()));
      }
      report.distance.push_back(std::move(d));
    }
    previous = sampler.samples();
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace wavemaps
