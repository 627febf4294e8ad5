#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aplab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitCheck = 4;

/// Fully resolved run configuration (flags layered over an optional JSON file).
struct RunConfig {
  std::string subcommand;
  std::string property;
  std::string strategy;
  std::vector<std::uint32_t> n;
  std::uint64_t trials = 100;
  std::vector<double> theta;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::uint64_t> max_steps;
  unsigned workers = 1;
  std::uint64_t verify_every = 0;
  std::string instance;
  std::uint64_t trial = 0;
  double theta2 = 0.0;
  std::uint64_t m_star = 0;
};

/// Keys a JSON config may carry; anything else is rejected.
const std::vector<std::string>& config_keys();

/// Default horizon when no --max-steps is given: max(10 n, 100).
std::uint64_t default_max_steps(std::uint32_t n);

/// Canonical JSON of the fields that determine output bytes (no worker count, no paths).
std::string canonical_config(const RunConfig& cfg);

/// Runs the command line; returns the process exit code. Output goes to `out`, diagnostics
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aplab::cli
