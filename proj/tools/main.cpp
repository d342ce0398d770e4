#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rbvp/config.hpp"
#include "rbvp/error.hpp"
#include "rbvp/experiment.hpp"
#include "rbvp/io.hpp"
#include "rbvp/verify.hpp"

namespace {

// `--key value` pairs after the problem name; a key followed by another key
// (or nothing) is a flag with value 1.
void merge_pairs(const std::vector<std::string>& args, rbvp::config::ExperimentConfig& cfg) {
  for (std::size_t k = 0; k < args.size(); ++k) {
    const std::string& a = args[k];
    if (a.rfind("--", 0) != 0 || a.size() < 3) throw rbvp::Error("cli", "unexpected argument '" + a + "'");
    std::string key = a.substr(2);
    std::string value = "1";
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else if (k + 1 < args.size() && args[k + 1].rfind("--", 0) != 0) {
      value = args[++k];
    }
    cfg.values[key] = value;
  }
}

int run_command(const std::string& problem, const std::string& config_file,
                const std::vector<std::string>& rest) {
  rbvp::config::ExperimentConfig cfg;
  if (!config_file.empty()) cfg = rbvp::config::read_config_file(config_file);
  if (!problem.empty()) cfg.problem = problem;
  merge_pairs(rest, cfg);
  const auto result = rbvp::run_experiment(cfg);
  std::cout << result.summary();
  return result.passed() ? 0 : 1;
}

int verify_command(const std::string& suite, std::uint64_t seed, const std::string& json_path,
                   bool negative_control) {
  rbvp::verify::Options opt;
  opt.seed = seed;
  opt.flip_lambda_sign = negative_control;
  const auto report = rbvp::verify::run(suite, opt);
  std::cout << report.summary();
  std::string path = json_path;
  if (path.empty()) {
    rbvp::config::ExperimentConfig cfg;
    std::filesystem::create_directories(cfg.output_dir());
    path = (std::filesystem::path(cfg.output_dir()) / ("verify_" + suite + ".json")).string();
  }
  rbvp::io::write_json(path, report.to_json());
  std::cout << "wrote " << path << '\n';
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary value problems with rough data"};
  app.require_subcommand(1);

  std::string problem;
  std::string config_file;
  auto* run = app.add_subcommand("run", "solve one configured problem");
  run->add_option("problem", problem, "problem name")->check(CLI::IsMember(rbvp::config::problems()));
  run->add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
  run->allow_extras();

  std::string suite;
  std::uint64_t seed = 0;
  std::string json_path;
  bool negative = false;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(rbvp::verify::suites()));
  verify->add_option("--seed", seed, "anchor seed");
  verify->add_option("--json", json_path, "report path");
  verify->add_flag("--negative-control", negative, "flip the sign of the Neumann coefficient");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (problem.empty() && config_file.empty()) throw rbvp::Error("cli", "no problem given");
      return run_command(problem, config_file, run->remaining());
    }
    return verify_command(suite, seed, json_path, negative);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
