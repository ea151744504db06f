#pragma once

#include <vector>

#include "coalbranch/params.hpp"

namespace coalbranch {

// Fixed total-mass level z in (0, infinity)^d at which the branching and
// coalescent parameterisations are matched.
struct MassLevel {
  std::vector<double> z;
  explicit MassLevel(std::vector<double> z_in);
  int dim() const { return static_cast<int>(z.size()); }
};

// Fixed diagonal of B used when inverting: the diagonal does not enter the
// coalescent rates, so the inverse map must be told what to restore.
struct DiagonalAnchor {
  std::vector<double> a;
  explicit DiagonalAnchor(std::vector<double> a_in);
  static DiagonalAnchor zeros(int d);
};

// Coordinatewise w_i -> w_i / (w_i + z_i), mapping the positive orthant into
// [0,1)^d.
std::vector<double> t_z(const std::vector<double>& w, const MassLevel& z);

// Inverse u_i -> z_i u_i / (1 - u_i); throws std::domain_error if some
// u_i >= 1.
std::vector<double> t_z_inverse(const std::vector<double>& u, const MassLevel& z);

// Image measure under t_z: atoms mapped, weights kept (coincident images are
// merged). Result lives on the unit cube with no mass on the boundary.
AtomicMeasure pushforward(const AtomicMeasure& m, const MassLevel& z);

// Image measure under t_z_inverse, back onto the positive orthant.
AtomicMeasure pullback(const AtomicMeasure& m, const MassLevel& z);

// Branching -> coalescent parameter map at level z:
//   rho_ii = 2 c_i / z_i,  rho_ij = b_ji z_i / z_j (j != i),
//   Q_i = z_i * (pushforward of mu_i).
// Requires validate_branching(p).ok.
CoalescentParams h_z(const BranchingParams& p, const MassLevel& z);

// Inverse map:
//   c_i = z_i rho_ii / 2,  b_ii = a_i,  b_ij = rho_ji z_i / z_j (j != i),
//   mu_i = (1/z_i) * (pullback of Q_i).
// Requires the prop flag (no Q mass on the cube boundary), otherwise the
// pullback diverges; throws std::domain_error.
BranchingParams h_z_inverse(const CoalescentParams& p, const MassLevel& z,
                            const DiagonalAnchor& a);

}  // namespace coalbranch
