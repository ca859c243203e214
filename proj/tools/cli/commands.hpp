#pragma once

#include <exception>
#include <json.hpp>
#include <ostream>
#include <string>

#include "scenario.hpp"

namespace nsk::cli {

enum class OutputFormat { Csv, Json, Svg };

struct CommandOptions {
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::Csv;
  bool quiet = false;
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitLax = 2;
inline constexpr int kExitNonConvergence = 3;
inline constexpr int kExitSpectral = 4;
inline constexpr int kExitDomain = 5;

int exit_code_for(const std::exception& e);
/// {"error": {"type", "message", "exit_code"}}
nlohmann::json error_body(const std::exception& e);

// Reports as written to <out>/<command>.json. Each embeds the resolved scenario.
nlohmann::json classify_report(const Scenario& sc);

/// Runs one subcommand, writes its files under opts.out_dir and prints the
/// summary (unless quiet) or the error body. Returns the exit code.
int run_command(const std::string& command, const Scenario& sc, const CommandOptions& opts,
                std::ostream& out);

}  // namespace nsk::cli
