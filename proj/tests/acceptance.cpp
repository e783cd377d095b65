// Acceptance suite: one PASS/FAIL line per criterion. With arguments, only
// the named criteria (AC1 .. AC9) run. Reports go to $WAVEMAPS_OUT, default
// ./acceptance-out.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "wavemaps/experiments.hpp"

using namespace wavemaps;

namespace {

struct Criterion {
  std::string id;
  std::string title;
  std::vector<std::function<ExperimentReport(const ExperimentConfig&)>> studies;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"AC1", "point charge table", {s_table_study}},
      {"AC2", "boosted hedgehog cone balance", {cone_balance_study}},
      {"AC3", "smooth conservation on random cones", {smooth_conservation_study}},
      {"AC4", "solver verification against a plane wave", {solver_verification_study}},
      {"AC5", "penalization properties", {penalization_study}},
      {"AC6", "non-uniqueness demo", {nonuniqueness_study}},
      {"AC7", "weak-strong and stationary checks", {stationary_study}},
      {"AC8", "boost law and integration-by-parts identities", {transformation_study, comp_identity_study}},
      {"AC9", "weak residual", {weak_residual_study}},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted(argv + 1, argv + argc);
  for (const std::string& w : wanted) {
    bool known = false;
    for (const Criterion& c : criteria()) known = known || c.id == w;
    if (!known) {
      std::cerr << "unknown criterion " << w << "\n";
      return 2;
    }
  }

  ExperimentConfig cfg;
  const char* env = std::getenv("WAVEMAPS_OUT");
  cfg.output_dir = env && *env ? env : "acceptance-out";

  bool all_passed = true;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    ExperimentReport rep;
    rep.command = c.id;
    std::string failure;
    try {
      for (const auto& study : c.studies) rep.absorb(study(cfg));
    } catch (const std::exception& e) {
      failure = e.what();
    }
    for (const Verdict& v : rep.verdicts) {
      std::cout << "  " << (v.passed ? "ok   " : "fail ") << v.name << ": " << v.value << " " << v.op
                << " " << v.threshold << "\n";
    }
    const bool ok = failure.empty() && rep.passed();
    all_passed = all_passed && ok;
    std::cout << c.id << " " << (ok ? "PASS" : "FAIL") << " " << c.title;
    if (!failure.empty()) std::cout << " (error: " << failure << ")";
    std::cout << std::endl;
  }
  return all_passed ? 0 : 1;
}
