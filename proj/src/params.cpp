#include "coalbranch/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coalbranch/fnv.hpp"

namespace coalbranch {

BranchingParams::BranchingParams(int d_in, SquareMatrix B_in,
                                 std::vector<double> c_in,
                                 std::vector<AtomicMeasure> mu_in)
    : d(d_in), B(std::move(B_in)), c(std::move(c_in)), mu(std::move(mu_in)) {
  if (d <= 0) throw std::invalid_argument("BranchingParams: d must be positive");
  if (B.size() != d || static_cast<int>(c.size()) != d ||
      static_cast<int>(mu.size()) != d)
    throw std::invalid_argument("BranchingParams: dimension mismatch between B, c, mu");
  for (const AtomicMeasure& m : mu) {
    if (m.dim() != d)
      throw std::invalid_argument("BranchingParams: measure dimension mismatch");
    if (m.domain() != Domain::kPositiveOrthant)
      throw std::invalid_argument("BranchingParams: mu must live on the positive orthant");
  }
  for (double ci : c)
    if (!std::isfinite(ci))
      throw std::invalid_argument("BranchingParams: c entries must be finite");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (!std::isfinite(B(i, j)))
        throw std::invalid_argument("BranchingParams: B entries must be finite");
}

CoalescentParams::CoalescentParams(int d_in, SquareMatrix rho_in,
                                   std::vector<AtomicMeasure> Q_in)
    : d(d_in), rho(std::move(rho_in)), Q(std::move(Q_in)) {
  if (d <= 0) throw std::invalid_argument("CoalescentParams: d must be positive");
  if (rho.size() != d || static_cast<int>(Q.size()) != d)
    throw std::invalid_argument("CoalescentParams: dimension mismatch between rho, Q");
  for (const AtomicMeasure& m : Q) {
    if (m.dim() != d)
      throw std::invalid_argument("CoalescentParams: measure dimension mismatch");
    if (m.domain() != Domain::kUnitCube)
      throw std::invalid_argument("CoalescentParams: Q must live on the unit cube");
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (!std::isfinite(rho(i, j)))
        throw std::invalid_argument("CoalescentParams: rho entries must be finite");
}

bool CoalescentParams::is_prop() const {
  return std::all_of(Q.begin(), Q.end(), [](const AtomicMeasure& m) {
    return m.zero_mass_on_unit_boundary();
  });
}

void ValidationReport::add(std::string name, double value, double threshold,
                           bool passed) {
  ok = ok && passed;
  checks.push_back({std::move(name), value, threshold, passed});
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

double truncate_unit(double w) { return std::min(1.0, w); }

}  // namespace

ValidationReport validate_branching(const BranchingParams& p) {
  ValidationReport report;

  double min_offdiag = 0.0;
  for (int i = 0; i < p.d; ++i)
    for (int j = 0; j < p.d; ++j)
      if (i != j) min_offdiag = std::min(min_offdiag, p.B(i, j));
  report.add("offdiag_nonneg", min_offdiag, 0.0, min_offdiag >= 0.0);

  const double min_c = p.c.empty() ? 0.0 : *std::min_element(p.c.begin(), p.c.end());
  report.add("c_nonneg", min_c, 0.0, min_c >= 0.0);

  for (int i = 0; i < p.d; ++i) {
    const double value = p.mu[i].integrate([&](const std::vector<double>& w) {
      const double xi_i = truncate_unit(w[i]);
      double sum = xi_i * xi_i;
      for (int j = 0; j < p.d; ++j)
        if (j != i) sum += truncate_unit(w[j]);
      return sum;
    });
    report.add("mu_integrability_" + std::to_string(i), value,
               std::numeric_limits<double>::infinity(), std::isfinite(value));
  }
  return report;
}

ValidationReport validate_coalescent(const CoalescentParams& p) {
  ValidationReport report;

  double min_rho = 0.0;
  for (int i = 0; i < p.d; ++i)
    for (int j = 0; j < p.d; ++j) min_rho = std::min(min_rho, p.rho(i, j));
  report.add("rho_nonneg", min_rho, 0.0, min_rho >= 0.0);

  for (int i = 0; i < p.d; ++i) {
    const double value = p.Q[i].integrate([&](const std::vector<double>& u) {
      double sum = 0.0;
      for (int j = 0; j < p.d; ++j) {
        const double base = u[j];
        sum += (j == i) ? base * base : base;
      }
      return sum;
    });
    report.add("Q_integrability_" + std::to_string(i), value,
               std::numeric_limits<double>::infinity(), std::isfinite(value));
  }

  double boundary_mass = 0.0;
  for (const AtomicMeasure& m : p.Q)
    for (const Atom& a : m.atoms())
      for (double x : a.point)
        if (std::fabs(x - 1.0) <= kPointTol) {
          boundary_mass += a.weight;
          break;
        }
  report.add("prop", boundary_mass, 0.0, boundary_mass <= 0.0);
  return report;
}

bool simulatable(const ValidationReport& report) {
  return std::all_of(report.checks.begin(), report.checks.end(),
                     [](const ValidationCheck& c) {
                       return c.name == "prop" || c.passed;
                     });
}

namespace {

void feed_measure(Fnv1a& h, const AtomicMeasure& m) {
  h.feed(static_cast<int>(m.atoms().size()));
  for (const Atom& a : m.atoms()) {
    for (double p : a.point) h.feed(p);
    h.feed(a.weight);
  }
}

}  // namespace

std::string digest(const BranchingParams& p) {
  Fnv1a h;
  h.feed(p.d);
  for (int i = 0; i < p.d; ++i)
    for (int j = 0; j < p.d; ++j) h.feed(p.B(i, j));
  for (double ci : p.c) h.feed(ci);
  for (const AtomicMeasure& m : p.mu) feed_measure(h, m);
  return h.hex();
}

std::string digest(const CoalescentParams& p) {
  Fnv1a h;
  h.feed(p.d);
  for (int i = 0; i < p.d; ++i)
    for (int j = 0; j < p.d; ++j) h.feed(p.rho(i, j));
  for (const AtomicMeasure& m : p.Q) feed_measure(h, m);
  return h.hex();
}

}  // namespace coalbranch
