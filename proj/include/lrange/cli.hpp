#pragma once

// The `lrange` command-line front end. Exit codes: 0 pass, 1 violation or
// residual above tolerance (the report is still written), 2 invalid input.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lrange::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInvalid = 2;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  double tol = 1e-6;
  std::vector<double> alphas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::string out;  // empty: stdout
  std::string format = "json";
  // Subcommand parameters.
  int n = 2;
  int m = 1;
  int l = 4;
  int restarts = 8;
  double eps = 0.5;
};

/// Parses `args` (without the program name) and runs the subcommand. Result
/// documents go to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Comma-separated reals, e.g. "0.1,0.5,0.9".
std::vector<double> parse_alphas(const std::string& text);

}  // namespace lrange::cli
