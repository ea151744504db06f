#pragma once

#include <cstdint>
#include <vector>

#include "coalbranch/params.hpp"
#include "coalbranch/trajectory.hpp"

namespace coalbranch {

// Mass per colony.
using CsbpState = std::vector<double>;

// Frequency / total-mass pair derived from two independent populations X, Y:
// r_i = X_i / (X_i + Y_i), z_i = X_i + Y_i. `stopped` marks the first grid
// time at which some z_i left the guard interval; r is frozen at its last
// well-defined value once z_i hits 0.
struct FreqMass {
  std::vector<double> r;
  std::vector<double> z;
  bool stopped = false;
};

// Coordinates above this are treated as an explosion and end the trajectory.
inline constexpr double kExplosionCap = 1e12;

// First-moment matrix: M(k,i) = b_ki + int (w_k - (1 ^ w_i) 1{k=i}) mu_i(dw),
// so the ensemble mean obeys E[X(t)] = exp(tM) x0.
SquareMatrix mean_matrix(const BranchingParams& p);

// exp(t * mean_matrix) applied to x0; reference value for ensemble means.
std::vector<double> mean_forecast(const BranchingParams& p,
                                  const std::vector<double>& x0, double t);

// Euler-Maruyama / frozen-rate jump splitting with full truncation at 0:
// per step h, (i) x += h (B x + compensation) + sqrt(2 c_i x_i h) xi_i with
// compensation_k = -x_k int (1 ^ w_k) mu_k(dw), (ii) clamp at 0, (iii) each
// atom (w, lambda) of mu_i fires Poisson(x_i lambda h) times and adds w.
Trajectory<CsbpState> simulate_csbp(const BranchingParams& p,
                                    const std::vector<double>& x0, double horizon,
                                    double dt, std::uint64_t seed);

// Two independent copies started at x0 = r0 .* z0 and y0 = z0 - x0, reported
// through (r, z); ends at the first grid time some z_i leaves (eps, L).
Trajectory<FreqMass> simulate_pair_rz(const BranchingParams& p,
                                      const std::vector<double>& r0,
                                      const std::vector<double>& z0, double horizon,
                                      double dt, std::uint64_t seed, double eps,
                                      double L);

}  // namespace coalbranch
