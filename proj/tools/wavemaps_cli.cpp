// Command-line driver: one subcommand per study bundle. Exit status 0 iff
// every verdict of the command passed, 1 on a failed verdict, 2 on bad input.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "wavemaps/experiments.hpp"

int main(int argc, char** argv) {
  using namespace wavemaps;
  CLI::App app{"Weak wave maps into the sphere: boosted harmonic maps, penalized solver, cone balances"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  int refine = 1;
  app.add_option("--config", config_path, "key = value config file with [section] headers")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides WAVEMAPS_OUT and [output] dir)");
  app.add_option("--refine", refine, "multiply every resolution by K")->check(CLI::PositiveNumber);

  for (const std::string& name : command_names()) app.add_subcommand(name);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (const char* env = std::getenv("WAVEMAPS_OUT"); env && *env) cfg.output_dir = env;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (refine > 1) cfg = cfg.refined(refine);
    cfg.validate();

    const ExperimentReport rep = run_command(command, cfg);
    for (const Verdict& v : rep.verdicts) {
      std::cout << (v.passed ? "PASS " : "FAIL ") << v.name << ": " << v.value << " " << v.op << " "
                << v.threshold << "\n";
    }
    std::cout << command << ": " << (rep.passed() ? "all verdicts passed" : "some verdicts failed");
    if (!cfg.output_dir.empty()) std::cout << " (report in " << cfg.output_dir << ")";
    std::cout << "\n";
    return rep.passed() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
