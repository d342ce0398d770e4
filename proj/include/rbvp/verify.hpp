#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace rbvp::verify {

struct Check {
  int criterion = 0;
  std::string name;
  /// Module invariant the check instantiates, as "module: statement".
  std::string invariant;
  double measured = 0.0;
  double bound = 0.0;
  /// true: pass when measured <= bound; false: pass when measured >= bound.
  bool upper = true;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
  /// One line per check: PASS/FAIL, name, measured vs bound, invariant.
  std::string summary() const;
};

struct Options {
  std::uint64_t seed = 0;
  /// Negative control: solve the Neumann problem with -conj(nu) in place of conj(nu).
  bool flip_lambda_sign = false;
};

/// identities, potentials, dirichlet, hilbert, neumann, riemann, all.
const std::vector<std::string>& suites();

Report run(const std::string& suite, const Options& options = {});

}  // namespace rbvp::verify
