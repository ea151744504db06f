#include "coalbranch/atomic_measure.hpp"

#include <algorithm>

namespace coalbranch {

namespace {

bool same_point(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > kPointTol) return false;
  return true;
}

bool is_origin(const std::vector<double>& p) {
  return std::all_of(p.begin(), p.end(),
                     [](double x) { return std::fabs(x) <= kPointTol; });
}

void check_domain(Domain domain, const std::vector<double>& p) {
  for (double x : p) {
    if (!std::isfinite(x)) throw std::invalid_argument("atom coordinate not finite");
    if (x < -kPointTol) throw std::invalid_argument("atom coordinate negative");
    if (domain == Domain::kUnitCube && x > 1.0 + kPointTol)
      throw std::invalid_argument("atom coordinate exceeds 1 on unit cube domain");
  }
}

}  // namespace

AtomicMeasure::AtomicMeasure(int dim, Domain domain, std::vector<Atom> atoms)
    : dim_(dim), domain_(domain), atoms_(std::move(atoms)) {
  if (dim_ <= 0) throw std::invalid_argument("AtomicMeasure: dim must be positive");
  for (const Atom& a : atoms_) {
    if (static_cast<int>(a.point.size()) != dim_)
      throw std::invalid_argument("AtomicMeasure: atom dimension mismatch");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw std::invalid_argument("AtomicMeasure: atom weight must be positive and finite");
    if (is_origin(a.point))
      throw std::invalid_argument("AtomicMeasure: atom at the origin is not allowed");
    check_domain(domain_, a.point);
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if (same_point(atoms_[i].point, atoms_[j].point))
        throw std::invalid_argument("AtomicMeasure: atoms must have distinct points");
}

AtomicMeasure AtomicMeasure::with_merging(int dim, Domain domain,
                                          std::vector<Atom> atoms) {
  std::vector<Atom> merged;
  for (Atom& a : atoms) {
    auto hit = std::find_if(merged.begin(), merged.end(), [&](const Atom& m) {
      return m.point.size() == a.point.size() && same_point(m.point, a.point);
    });
    if (hit != merged.end())
      hit->weight += a.weight;
    else
      merged.push_back(std::move(a));
  }
  return AtomicMeasure(dim, domain, std::move(merged));
}

double AtomicMeasure::total_mass() const {
  double mass = 0.0;
  for (const Atom& a : atoms_) mass += a.weight;
  return mass;
}

double AtomicMeasure::integrate(
    const std::function<double(const std::vector<double>&)>& f) const {
  double acc = 0.0;
  for (const Atom& a : atoms_) acc += a.weight * f(a.point);
  return acc;
}

bool AtomicMeasure::zero_mass_on_unit_boundary() const {
  for (const Atom& a : atoms_)
    for (double x : a.point)
      if (std::fabs(x - 1.0) <= kPointTol) return false;
  return true;
}

double bl_distance(
    const AtomicMeasure& m1, const AtomicMeasure& m2,
    const std::vector<std::function<double(const std::vector<double>&)>>& probes) {
  if (m1.domain() != m2.domain() || m1.dim() != m2.dim())
    throw std::invalid_argument("bl_distance: measures live on different domains");
  if (probes.empty()) throw std::invalid_argument("bl_distance: empty probe list");
  double best = 0.0;
  for (const auto& f : probes)
    best = std::max(best, std::fabs(m1.integrate(f) - m2.integrate(f)));
  return best;
}

}  // namespace coalbranch
