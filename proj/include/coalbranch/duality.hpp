#pragma once

#include <cstdint>
#include <vector>

#include "coalbranch/coalescent.hpp"
#include "coalbranch/frequency.hpp"

namespace coalbranch {

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long reps = 0;
};

// Comparison of E_r[ prod R_i(t)^{n_i} ] (forward simulation) against
// E_n[ prod r_i^{N_i(t)} ] (backward chain). The two sides agree in law; the
// z-score measures the Monte Carlo discrepancy in combined standard errors.
struct DualityReport {
  MomentEstimate forward;
  MomentEstimate backward;
  double zscore = 0.0;
  bool passed = false;
};

// Largest reachable state set the exact backward evaluator will handle.
inline constexpr std::size_t kMaxExactStates = 100000;

// Monte Carlo estimate of the forward moment at time t over `reps`
// independent SDE trajectories (stream k seeded with derive_stream(seed, k)).
MomentEstimate forward_moment(const BranchingParams& p, const MassLevel& z,
                              const std::vector<double>& r, const BlockCounts& n,
                              double t, long long reps, double dt,
                              std::uint64_t seed);

// Monte Carlo estimate of the backward moment from block counts n.
MomentEstimate backward_moment_mc(const CoalescentParams& p, const BlockCounts& n,
                                  const std::vector<double>& r, double t,
                                  long long reps, std::uint64_t seed);
MomentEstimate backward_moment_mc(const BranchingParams& p, const MassLevel& z,
                                  const BlockCounts& n, const std::vector<double>& r,
                                  double t, long long reps, std::uint64_t seed);

// Exact backward moment: enumerates the states reachable from n (block totals
// never grow), then evaluates the transient distribution by uniformization to
// ~1e-14. Throws std::runtime_error when the reachable set exceeds
// kMaxExactStates, advising the Monte Carlo mode.
MomentEstimate backward_moment_exact(const CoalescentParams& p, const BlockCounts& n,
                                     const std::vector<double>& r, double t);
MomentEstimate backward_moment_exact(const BranchingParams& p, const MassLevel& z,
                                     const BlockCounts& n, const std::vector<double>& r,
                                     double t);

DualityReport duality_check(const BranchingParams& p, const MassLevel& z,
                            const std::vector<double>& r, const BlockCounts& n,
                            double t, long long reps, double dt, std::uint64_t seed,
                            double zthreshold = 3.0, bool exact_backward = true);

}  // namespace coalbranch
