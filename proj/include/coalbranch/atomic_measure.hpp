#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coalbranch {

// Absolute tolerance used when comparing atom coordinates (distinctness and
// domain membership). Transform maps produce computed coordinates, so exact
// comparison would be too brittle.
inline constexpr double kPointTol = 1e-12;

// Support domains for atomic measures: the punctured positive orthant
// R_+^d \ {0} and the punctured unit cube [0,1]^d \ {0}.
enum class Domain { kPositiveOrthant, kUnitCube };

struct Atom {
  std::vector<double> point;
  double weight = 0.0;
};

// Finite weighted sum of point masses on one of the two domains. Immutable
// after construction; all integrals against it are exact finite sums.
class AtomicMeasure {
 public:
  // Validates atoms: positive weights, no atom at the origin, pairwise
  // distinct points, coordinates inside the tagged domain (up to kPointTol).
  AtomicMeasure(int dim, Domain domain, std::vector<Atom> atoms = {});

  // Same checks, but coincident points (within tolerance) are first merged by
  // summing their weights. Pushforward maps can collapse distinct points.
  static AtomicMeasure with_merging(int dim, Domain domain,
                                    std::vector<Atom> atoms);

  int dim() const { return dim_; }
  Domain domain() const { return domain_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  double total_mass() const;

  // Sum of weight * f(point) over all atoms.
  double integrate(const std::function<double(const std::vector<double>&)>& f) const;

  // True iff no atom has a coordinate equal to 1 (within tolerance). Always
  // true on the positive orthant domain.
  bool zero_mass_on_unit_boundary() const;

 private:
  int dim_ = 0;
  Domain domain_ = Domain::kPositiveOrthant;
  std::vector<Atom> atoms_;
};

// Largest probe discrepancy max_f |int f dm1 - int f dm2|; a pseudo-metric
// lower bound on the bounded-Lipschitz distance for Lipschitz probes.
double bl_distance(
    const AtomicMeasure& m1, const AtomicMeasure& m2,
    const std::vector<std::function<double(const std::vector<double>&)>>& probes);

}  // namespace coalbranch
