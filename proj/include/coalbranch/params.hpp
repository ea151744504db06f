#pragma once

#include <string>
#include <vector>

#include "coalbranch/atomic_measure.hpp"
#include "coalbranch/matrix.hpp"

namespace coalbranch {

// Characterising triplet (B, c, mu) of a d-type continuous-state branching
// process: interaction matrix B (off-diagonal entries must be nonnegative),
// per-colony diffusion coefficients c, and one jump measure per colony on the
// punctured positive orthant.
struct BranchingParams {
  int d = 0;
  SquareMatrix B;
  std::vector<double> c;
  std::vector<AtomicMeasure> mu;

  // Throws on structural defects (size mismatches, wrong measure domains).
  // Sign conditions are left to validate_branching so that invalid parameter
  // sets can still be constructed and reported on.
  BranchingParams(int d, SquareMatrix B, std::vector<double> c,
                  std::vector<AtomicMeasure> mu);
};

// Characterising pair (rho, Q) of a d-type coalescent with multiple mergers:
// rho[i][j] is the migration rate j -> i for i != j and rho[i][i] the pairwise
// merger rate of type-i blocks; Q[i] drives multiple mergers resulting in a
// type-i block.
struct CoalescentParams {
  int d = 0;
  SquareMatrix rho;
  std::vector<AtomicMeasure> Q;

  CoalescentParams(int d, SquareMatrix rho, std::vector<AtomicMeasure> Q);

  // True iff no Q[i] puts mass on points with a coordinate equal to 1.
  bool is_prop() const;
};

struct ValidationCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationCheck> checks;

  void add(std::string name, double value, double threshold, bool passed);
  const ValidationCheck* find(const std::string& name) const;
};

// Sign conditions on (B, c) and the jump-measure integrability functional
// int (xi_i(w)^2 + sum_{j != i} xi_j(w)) mu_i(dw), with xi the truncation
// 1 ^ w on the positive orthant. Finite by construction for atomic measures;
// the values are still computed and reported.
ValidationReport validate_branching(const BranchingParams& p);

// Nonnegativity of rho, the integrability sums
// sum_j int u_j^{1+delta_ij} Q_i(du), and the "prop" membership flag (no mass
// on the cube boundary {some u_j = 1}).
ValidationReport validate_coalescent(const CoalescentParams& p);

// Whether simulators accept the parameters. All checks must pass except
// "prop": coalescents with boundary mass are legitimate processes, the flag
// only gates the inverse transform.
bool simulatable(const ValidationReport& report);

// Short hex fingerprint of a parameter set, stamped onto trajectories.
std::string digest(const BranchingParams& p);
std::string digest(const CoalescentParams& p);

}  // namespace coalbranch
