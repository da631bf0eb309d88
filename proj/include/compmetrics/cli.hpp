#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace compmetrics::cli {

inline constexpr const char* kDefaultLedgerPath = "./compmetrics-ledger";
inline constexpr const char* kLedgerEnvVar = "COMPMETRICS_LEDGER";

struct Environment {
  /// Value of COMPMETRICS_LEDGER, if set. `--ledger` takes precedence.
  std::optional<std::string> ledger_path;
};

Environment environment_from_process();

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on domain errors and 2 on
/// usage or input errors; every failure prints `error[<code>]: ...` first.
int run_command(const std::vector<std::string>& args, const Environment& env,
                std::ostream& out, std::ostream& err);

}  // namespace compmetrics::cli
