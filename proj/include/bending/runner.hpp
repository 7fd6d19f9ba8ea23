#pragma once

// Batch front-end behind the `bending` executable. Every command writes to
// the given streams and returns the process exit code.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bending/lamination.hpp"

namespace bending {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitIo = 3 };

class IoError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string subcommand;  // eval | table | verify | lamination | supnorm
  std::string kind;        // eval/table kind, or the verify target
  std::optional<double> L, x, r, s, k, dT, tol;
  long trials = 1000;
  std::uint64_t seed = 0;
  int samples = 200;
  std::string input;
  std::string out;         // empty: stdout
  std::string format = "json";
  std::string map;                // supnorm
  std::vector<double> params;     // supnorm
};

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_lamination_norm(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err);
int cmd_supnorm(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// {"leaves": [{"endpoints": [t1, t2], "weight": w}, ...]}
FiniteLamination parse_lamination(const std::string& text);
FiniteLamination read_lamination(const std::string& path);

// Shortest decimal string that reads back to the same double.
std::string shortest(double v);

}  // namespace bending
