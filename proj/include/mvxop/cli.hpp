#pragma once

// Command-line front end: run configuration, subcommands and JSON reports.

#include "mvxop/laguerre.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace mvxop::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInvalidInput = 2 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;  // weight | mvop | seed | xpoly | verify | fourier | zeros | figure
  Params params;
  unsigned n = 5;       // degree, or the largest degree a suite visits
  std::string suite;    // verify
  std::string check;    // fourier
  std::string panel;    // figure: 1a | 1b | 1c
  bool figure = false;  // zeros: also write CSV and SVG
  std::string out;      // artifact directory, empty for none
  double tol = 1e-8;
  unsigned min_order = 64;
  unsigned max_order = 2048;
  unsigned precision_bits = 256;
  bool timing = false;
  std::string weight_fixture;  // JSON weight replacing W in the symmetry suite
};

/// Keys are the long flag names without dashes.
using Settings = std::map<std::string, std::string>;

/// Flat key=value lines; blank lines and lines starting with '#' are skipped.
Settings parse_config_text(const std::string& text);
Settings read_config_file(const std::string& path);

/// Builds and validates a configuration. Throws UsageError or std::invalid_argument.
RunConfig make_config(const std::string& command, const Settings& s);

/// Runs one configuration and prints its JSON report to `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full entry point: parses flags, merges --config (flags win) and runs.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// MVXOP_THREADS when set to a positive integer, else the hardware concurrency.
unsigned thread_limit();

}  // namespace mvxop::cli
