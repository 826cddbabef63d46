#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "samplan/criteria.hpp"
#include "samplan/optimize.hpp"

namespace samplan::cli {

enum ExitCode : int { kOk = 0, kInadmissible = 1, kUsage = 2, kNumerical = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Settings read from a config file; unset keys keep their defaults.
struct Settings {
  double p_a = 0.01;
  double P_a = 0.95;
  double p_b = 0.07;
  double P_b = 0.05;
  std::int64_t n_ceiling = kDefaultSampleCeiling;

  TwoPointCriterion criterion() const { return TwoPointCriterion(p_a, P_a, p_b, P_b); }
};

/// UTF-8 text of `key = value` lines; '#' starts a comment. Keys: p_a, P_a,
/// p_b, P_b, n_ceiling.
Settings parse_config(std::string_view text, Settings base = {});

/// Runs one invocation; args excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace samplan::cli
