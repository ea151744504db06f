#pragma once

#include <cstdint>
#include <vector>

#include "coalbranch/coalescent.hpp"
#include "coalbranch/params.hpp"
#include "coalbranch/trajectory.hpp"
#include "coalbranch/transform.hpp"

namespace coalbranch {

// Coefficients of the autonomous frequency dynamics at mass level z, all
// reduced to finite sums over the pushed-forward jump atoms:
//   drift(i,j)   = b_ij z_j/z_i + z_j int u_i dT_z mu_j   (j != i, diagonal 0)
//   diffusion[i] = 2 c_i / z_i
//   jump_atoms[j] = atoms (u, lambda) of T_z mu_j
//   jump_flow(i,j) = z_j sum_atoms lambda u_i   (mean displacement bookkeeping)
struct FreqParams {
  MassLevel z;
  SquareMatrix drift;
  std::vector<double> diffusion;
  std::vector<std::vector<Atom>> jump_atoms;
  SquareMatrix jump_flow;

  int dim() const { return z.dim(); }
};

FreqParams build_freq_params(const BranchingParams& p, const MassLevel& z);

// Fingerprint, stamped onto trajectories produced from these coefficients.
std::string digest(const FreqParams& fp);

// Euler scheme for the frequency SDE on [0,1]^d. Per step: compensated drift,
// Wright-Fisher-type diffusion sqrt(diffusion[i] r_i (1-r_i)), clamp to the
// cube, then frozen-rate jump events
//   family 1 at rate z_j r_j lambda:       r <- r + (1-r) .* u
//   family 2 at rate z_j (1-r_j) lambda:   r <- r - r .* u
// One event moves every coordinate at once.
Trajectory<std::vector<double>> simulate_limit_sde(const FreqParams& fp,
                                                   const std::vector<double>& r0,
                                                   double horizon, double dt,
                                                   std::uint64_t seed);

// Compensated drift of the jump families at state r; exposed for testing the
// drift bookkeeping against its defining sum.
std::vector<double> jump_compensator(const FreqParams& fp,
                                     const std::vector<double>& r);

struct SeqSampleConfig {
  int n = 1;             // sampling intensity (skeleton jumps arrive at rate n)
  double eps = 0.0;      // lower total-mass guard
  double L = 0.0;        // upper total-mass guard
  double inner_dt = 0.0; // inner pair-simulation step; 0 = 1/(10 n)
};

// Sequential sampling: between jump times of a rate-n Poisson clock the pair
// (R, Z) evolves from the current frequency with total mass reset to z, for
// duration 1/n or until Z leaves (eps, L); the frequency found there becomes
// the next skeleton value.
Trajectory<std::vector<double>> sequential_sampling(const BranchingParams& p,
                                                    const MassLevel& z,
                                                    const std::vector<double>& r0,
                                                    const SeqSampleConfig& cfg,
                                                    double horizon,
                                                    std::uint64_t seed);

// Action of the frequency generator on the monomial r^n, as the finite sum
//   sum_i 2(c_i/z_i) binom(n_i,2) (r^{n-e_i} - r^n)
//   + sum_i sum_{j != i} n_i b_ij (z_j/z_i) (r^{n-e_i+e_j} - r^n)
//   + sum_i sum_k z_i binom(n,k) [int u^k (1-u)^{n-k} dT_z mu_i] (r^{n-k+e_i} - r^n).
double generator_on_monomial(const FreqParams& fp, const BlockCounts& n,
                             const std::vector<double>& r);

}  // namespace coalbranch
