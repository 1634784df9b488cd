#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mfzeta/cli_io.hpp"
#include "mfzeta/errors.hpp"

namespace mfzeta {

/// Command-line overrides of configuration values.
struct CommandOverrides {
  std::optional<int> n;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<double> radius;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumerical = 4;

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;  // CSV or JSON document
  std::string error;
};

int exit_code_for(const Error& e);

/// Runs one of dim, tau, spectrum, zeta, fine, verify, parry. Output is a
/// deterministic function of the inputs.
CommandResult run_command(std::string_view command, const RunConfig& config,
                          const CommandOverrides& overrides = {});

}  // namespace mfzeta
