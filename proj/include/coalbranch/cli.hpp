#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coalbranch {

enum class Command {
  kSimulateCsbp,
  kSimulatePair,
  kSimulateCoalescent,
  kSimulateFrequency,
  kTransform,
  kVerifyDuality,
  kValidate,
};

// Parsed invocation. Only the fields the selected command reads are
// meaningful; run() checks them against the target operation's preconditions.
struct RunConfig {
  Command command = Command::kValidate;

  std::string params_path;
  std::string in_path;   // transform input
  std::string out_path;  // empty: reports go to stdout, trajectories are required

  std::uint64_t seed = 0;
  long long reps = 1;

  std::string mode;  // blocks|partition, sde|culling
  std::string dir;   // forward|inverse

  std::vector<double> z, a, r0, x0, z0, r;
  std::vector<int> n0, types;
  int ground_size = 0;   // partition ground set M
  int intensity = 0;     // sequential-sampling n

  double horizon = 1.0;
  double dt = 1e-3;
  double t = 0.0;
  double eps = 0.0;
  double L = 0.0;
  double inner_dt = 0.0;
  double zthreshold = 3.0;
  bool exact_backward = false;
};

// Exit codes: 0 success, 1 validation/check failure, 2 configuration or
// runtime error.
int run(const RunConfig& cfg);

// Parses argv (CLI11 grammar, one subcommand per Command) and dispatches.
int run_cli(int argc, const char* const* argv);

}  // namespace coalbranch
