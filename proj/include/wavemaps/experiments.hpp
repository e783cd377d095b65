#pragma once

// Batch studies behind the command-line drivers. Each study returns its
// numbers and pass/fail verdicts; commands bundle studies, write
// <out>/<command>.json and CSV side files.

#include <string>
#include <vector>

#include "json.hpp"

#include "wavemaps/config.hpp"

namespace wavemaps {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// passed = (value op threshold), op one of "<=", ">=", "<", ">".
struct Verdict {
  std::string name;
  double value;
  std::string op;
  double threshold;
  bool passed;
};

Verdict make_verdict(std::string name, double value, const std::string& op, double threshold);

struct ExperimentReport {
  std::string command;
  Json results = Json::object();
  std::vector<Verdict> verdicts;

  bool passed() const;
  /// Appends another report's verdicts and nests its results under its name.
  void absorb(const ExperimentReport& other);
  Json to_json(const ExperimentConfig& cfg) const;
};

/// log2(|coarse| / |fine|) for a step ratio of 2.
double observed_order(double coarse, double fine);

ExperimentReport s_table_study(const ExperimentConfig& cfg);
ExperimentReport cone_balance_study(const ExperimentConfig& cfg);
ExperimentReport smooth_conservation_study(const ExperimentConfig& cfg);
ExperimentReport solver_verification_study(const ExperimentConfig& cfg);
ExperimentReport penalization_study(const ExperimentConfig& cfg);
ExperimentReport nonuniqueness_study(const ExperimentConfig& cfg);
ExperimentReport stationary_study(const ExperimentConfig& cfg);
ExperimentReport transformation_study(const ExperimentConfig& cfg);
ExperimentReport comp_identity_study(const ExperimentConfig& cfg);
ExperimentReport weak_residual_study(const ExperimentConfig& cfg);

const std::vector<std::string>& command_names();

/// Runs a command's studies and writes its JSON report into cfg.output_dir.
ExperimentReport run_command(const std::string& command, const ExperimentConfig& cfg);

}  // namespace wavemaps
