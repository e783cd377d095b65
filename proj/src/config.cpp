#include "wavemaps/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace wavemaps {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Location {
  const std::string& source;
  int line;
  std::string where() const { return source + ":" + std::to_string(line) + ": "; }
};

double to_double(const std::string& v, const Location& at) {
  std::istringstream s(v);
  double x;
  std::string rest;
  if (!(s >> x) || (s >> rest)) throw ConfigError(at.where() + "expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& v, const Location& at) {
  const double x = to_double(v, at);
  if (x != std::floor(x) || x < 1) {
    throw ConfigError(at.where() + "expected a positive integer, got '" + v + "'");
  }
  return static_cast<int>(x);
}

bool to_bool(const std::string& v, const Location& at) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(at.where() + "expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v, const Location& at) {
  std::istringstream s(v);
  std::vector<double> out;
  std::string tok;
  while (s >> tok) out.push_back(to_double(tok, at));
  if (out.empty()) throw ConfigError(at.where() + "empty list");
  return out;
}

ConeEntry to_cone(const std::string& v, const Location& at) {
  const std::vector<double> x = to_list(v, at);
  if (x.size() != 5) throw ConfigError(at.where() + "cone needs cx cy cz radius height");
  ConeEntry c{Eigen::Vector3d(x[0], x[1], x[2]), x[3], x[4]};
  if (!(c.radius > 0 && c.height > 0 && c.height < c.radius)) {
    throw ConfigError(at.where() + "cone needs 0 < height < radius");
  }
  return c;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream s;
  s.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << v[i];
  return s.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::refined(int k) const {
  if (k < 1) throw ConfigError("refinement factor must be a positive integer");
  ExperimentConfig c = *this;
  c.refine = refine * k;
  c.solver.spacing = solver.spacing / k;
  if (solver.dt > 0) c.solver.dt = solver.dt / k;
  c.rules = rules.refined(k);
  return c;
}

void ExperimentConfig::validate() const {
  try {
    map.validate();
    solver.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  for (double t : sample_times) {
    if (!(t > 0 && t <= solver.t_end)) throw ConfigError("sample times must lie in (0, t_end]");
  }
  for (double n : penalties) {
    if (!(n > 0)) throw ConfigError("penalties must be positive");
  }
  for (double l : lambdas) {
    if (!(l > 0)) throw ConfigError("s-table lambdas must be positive");
  }
  if (!(exterior_gap > 0) || !(region_radius > 0)) {
    throw ConfigError("stationary region parameters must be positive");
  }
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream s;
  s.precision(17);
  s << "[map]\nlambda = " << map.lambda << "\nnu = " << map.nu << "\n";
  s << "[solver]\nhalf_width = " << solver.half_width << "\nspacing = " << solver.spacing
    << "\ndt = " << solver.dt << "\ncfl = " << solver.cfl << "\npenalty = " << solver.penalty
    << "\nboundary = " << (solver.boundary == BoundaryMode::periodic ? "periodic" : "clamped")
    << "\nt_end = " << solver.t_end << "\ncell_centered = " << (solver.cell_centered ? "true" : "false")
    << "\n";
  s << "[cones]\n";
  for (const ConeEntry& c : cones) {
    s << "cone = " << join({c.center[0], c.center[1], c.center[2], c.radius, c.height}) << "\n";
  }
  for (const ConeEntry& c : controls) {
    s << "control = " << join({c.center[0], c.center[1], c.center[2], c.radius, c.height}) << "\n";
  }
  s << "[quadrature]\nradial_points = " << rules.ball.radial_points
    << "\nradial_panels = " << rules.ball.radial_panels << "\npolar = " << rules.ball.polar
    << "\nazimuth = " << rules.ball.azimuth << "\ntime_points = " << rules.surface.time_points
    << "\ntime_panels = " << rules.surface.time_panels << "\n";
  s << "[sweep]\npenalties = " << join(penalties) << "\nsample_times = " << join(sample_times)
    << "\n";
  s << "[s_table]\nlambdas = " << join(lambdas) << "\n";
  s << "[stationary]\nexterior_gap = " << exterior_gap << "\nregion_radius = " << region_radius
    << "\n";
  s << "[refine]\nfactor = " << refine << "\n";
  return s.str();
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  bool cones_seen = false, controls_seen = false;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const Location at{source, line_no};
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(at.where() + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"map",   "solver",  "cones",      "quadrature",
                                    "sweep", "s_table", "stationary", "output"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw ConfigError(at.where() + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(at.where() + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(at.where() + "key outside any section");
    const std::string full = section + "." + key;

    if (full == "map.lambda") {
      cfg.map.lambda = to_double(value, at);
    } else if (full == "map.nu") {
      cfg.map.nu = to_double(value, at);
    } else if (full == "solver.half_width") {
      cfg.solver.half_width = to_double(value, at);
    } else if (full == "solver.spacing") {
      cfg.solver.spacing = to_double(value, at);
    } else if (full == "solver.dt") {
      cfg.solver.dt = to_double(value, at);
    } else if (full == "solver.cfl") {
      cfg.solver.cfl = to_double(value, at);
    } else if (full == "solver.penalty") {
      cfg.solver.penalty = to_double(value, at);
    } else if (full == "solver.boundary") {
      if (value == "clamped") {
        cfg.solver.boundary = BoundaryMode::clamped;
      } else if (value == "periodic") {
        cfg.solver.boundary = BoundaryMode::periodic;
      } else {
        throw ConfigError(at.where() + "boundary must be clamped or periodic");
      }
    } else if (full == "solver.t_end") {
      cfg.solver.t_end = to_double(value, at);
    } else if (full == "solver.cell_centered") {
      cfg.solver.cell_centered = to_bool(value, at);
    } else if (full == "cones.cone") {
      if (!cones_seen) cfg.cones.clear();
      cones_seen = true;
      cfg.cones.push_back(to_cone(value, at));
    } else if (full == "cones.control") {
      if (!controls_seen) cfg.controls.clear();
      controls_seen = true;
      cfg.controls.push_back(to_cone(value, at));
    } else if (full == "quadrature.radial_points") {
      cfg.rules.ball.radial_points = to_int(value, at);
    } else if (full == "quadrature.radial_panels") {
      cfg.rules.ball.radial_panels = to_int(value, at);
    } else if (full == "quadrature.polar") {
      cfg.rules.ball.polar = cfg.rules.surface.polar = to_int(value, at);
    } else if (full == "quadrature.azimuth") {
      cfg.rules.ball.azimuth = cfg.rules.surface.azimuth = to_int(value, at);
    } else if (full == "quadrature.time_points") {
      cfg.rules.surface.time_points = to_int(value, at);
    } else if (full == "quadrature.time_panels") {
      cfg.rules.surface.time_panels = to_int(value, at);
    } else if (full == "sweep.penalties") {
      cfg.penalties = to_list(value, at);
    } else if (full == "sweep.sample_times") {
      cfg.sample_times = to_list(value, at);
    } else if (full == "s_table.lambdas") {
      cfg.lambdas = to_list(value, at);
    } else if (full == "stationary.exterior_gap") {
      cfg.exterior_gap = to_double(value, at);
    } else if (full == "stationary.region_radius") {
      cfg.region_radius = to_double(value, at);
    } else if (full == "output.dir") {
      cfg.output_dir = value;
    } else {
      throw ConfigError(at.where() + "unknown key '" + key + "' in [" + section + "]");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_config(in, path);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace wavemaps
