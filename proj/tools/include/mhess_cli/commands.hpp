#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mhess_cli/config.hpp"

namespace mhess::cli {

struct CommandResult {
  /// One entry per executed check: a serialized CheckReport or a refusal
  /// record {"suite", "outcome": "refused", "message", "location"}.
  std::vector<nlohmann::json> reports;
  /// Files written next to the JSON report (CSV tables, SVG charts).
  std::vector<std::string> artifacts;
  int status = kPass;
};

/// Runs one subcommand; does not write the JSON report itself.
CommandResult execute(const std::string& command, const RunConfig& cfg);

/// Runs, writes <out>/<command>.json and appends a timestamped line to
/// <out>/mhess.log. Returns the exit status.
int run(const std::string& command, const RunConfig& cfg);

/// 1 if any check failed, else 3 if any was refused or made no claim, else 0.
int combine_status(int a, int b);

}  // namespace mhess::cli
