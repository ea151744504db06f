#include "coalbranch/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace coalbranch {

MassLevel::MassLevel(std::vector<double> z_in) : z(std::move(z_in)) {
  if (z.empty()) throw std::invalid_argument("MassLevel: empty level vector");
  for (double zi : z)
    if (!(zi > 0.0) || !std::isfinite(zi))
      throw std::invalid_argument("MassLevel: entries must be positive and finite");
}

DiagonalAnchor::DiagonalAnchor(std::vector<double> a_in) : a(std::move(a_in)) {
  for (double ai : a)
    if (!std::isfinite(ai))
      throw std::invalid_argument("DiagonalAnchor: entries must be finite");
}

DiagonalAnchor DiagonalAnchor::zeros(int d) {
  return DiagonalAnchor(std::vector<double>(static_cast<std::size_t>(d), 0.0));
}

std::vector<double> t_z(const std::vector<double>& w, const MassLevel& z) {
  if (w.size() != z.z.size()) throw std::invalid_argument("t_z: dimension mismatch");
  std::vector<double> u(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) throw std::invalid_argument("t_z: negative coordinate");
    u[i] = w[i] / (w[i] + z.z[i]);
  }
  return u;
}

std::vector<double> t_z_inverse(const std::vector<double>& u, const MassLevel& z) {
  if (u.size() != z.z.size())
    throw std::invalid_argument("t_z_inverse: dimension mismatch");
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0.0) throw std::invalid_argument("t_z_inverse: negative coordinate");
    if (u[i] >= 1.0) throw std::domain_error("t_z_inverse: coordinate at or above 1");
    w[i] = z.z[i] * u[i] / (1.0 - u[i]);
  }
  return w;
}

AtomicMeasure pushforward(const AtomicMeasure& m, const MassLevel& z) {
  if (m.domain() != Domain::kPositiveOrthant)
    throw std::invalid_argument("pushforward: measure must live on the positive orthant");
  if (m.dim() != z.dim()) throw std::invalid_argument("pushforward: dimension mismatch");
  std::vector<Atom> atoms;
  atoms.reserve(m.size());
  for (const Atom& a : m.atoms()) {
    std::vector<double> w = a.point;
    for (double& x : w) x = std::max(x, 0.0);
    atoms.push_back({t_z(w, z), a.weight});
  }
  return AtomicMeasure::with_merging(m.dim(), Domain::kUnitCube, std::move(atoms));
}

AtomicMeasure pullback(const AtomicMeasure& m, const MassLevel& z) {
  if (m.domain() != Domain::kUnitCube)
    throw std::invalid_argument("pullback: measure must live on the unit cube");
  if (m.dim() != z.dim()) throw std::invalid_argument("pullback: dimension mismatch");
  std::vector<Atom> atoms;
  atoms.reserve(m.size());
  for (const Atom& a : m.atoms()) {
    std::vector<double> u = a.point;
    for (double& x : u) x = std::clamp(x, 0.0, 1.0);
    atoms.push_back({t_z_inverse(u, z), a.weight});
  }
  return AtomicMeasure::with_merging(m.dim(), Domain::kPositiveOrthant,
                                     std::move(atoms));
}

CoalescentParams h_z(const BranchingParams& p, const MassLevel& z) {
  if (p.d != z.dim()) throw std::invalid_argument("h_z: dimension mismatch");
  if (!validate_branching(p).ok)
    throw std::invalid_argument("h_z: branching parameters fail validation");
  SquareMatrix rho(p.d);
  for (int i = 0; i < p.d; ++i) {
    rho(i, i) = 2.0 * p.c[i] / z.z[i];
    for (int j = 0; j < p.d; ++j)
      if (j != i) rho(i, j) = p.B(j, i) * z.z[i] / z.z[j];
  }
  std::vector<AtomicMeasure> Q;
  Q.reserve(p.mu.size());
  for (int i = 0; i < p.d; ++i) {
    std::vector<Atom> atoms = pushforward(p.mu[i], z).atoms();
    for (Atom& a : atoms) a.weight *= z.z[i];
    Q.emplace_back(p.d, Domain::kUnitCube, std::move(atoms));
  }
  return CoalescentParams(p.d, std::move(rho), std::move(Q));
}

BranchingParams h_z_inverse(const CoalescentParams& p, const MassLevel& z,
                            const DiagonalAnchor& a) {
  if (p.d != z.dim() || p.d != static_cast<int>(a.a.size()))
    throw std::invalid_argument("h_z_inverse: dimension mismatch");
  if (!p.is_prop())
    throw std::domain_error(
        "h_z_inverse: Q has mass on the cube boundary; the pullback diverges");
  SquareMatrix B(p.d);
  std::vector<double> c(static_cast<std::size_t>(p.d));
  for (int i = 0; i < p.d; ++i) {
    c[i] = z.z[i] * p.rho(i, i) / 2.0;
    B(i, i) = a.a[i];
    for (int j = 0; j < p.d; ++j)
      if (j != i) B(i, j) = p.rho(j, i) * z.z[i] / z.z[j];
  }
  std::vector<AtomicMeasure> mu;
  mu.reserve(p.Q.size());
  for (int i = 0; i < p.d; ++i) {
    std::vector<Atom> atoms = pullback(p.Q[i], z).atoms();
    for (Atom& a_ : atoms) a_.weight /= z.z[i];
    mu.emplace_back(p.d, Domain::kPositiveOrthant, std::move(atoms));
  }
  return BranchingParams(p.d, std::move(B), std::move(c), std::move(mu));
}

}  // namespace coalbranch
