#include "coalbranch/branching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coalbranch/rng.hpp"

namespace coalbranch {

SquareMatrix mean_matrix(const BranchingParams& p) {
  SquareMatrix m(p.d);
  for (int k = 0; k < p.d; ++k)
    for (int i = 0; i < p.d; ++i) {
      double entry = p.B(k, i);
      entry += p.mu[i].integrate([&](const std::vector<double>& w) {
        double v = w[k];
        if (i == k) v -= std::min(1.0, w[i]);
        return v;
      });
      m(k, i) = entry;
    }
  return m;
}

std::vector<double> mean_forecast(const BranchingParams& p,
                                  const std::vector<double>& x0, double t) {
  if (static_cast<int>(x0.size()) != p.d)
    throw std::invalid_argument("mean_forecast: dimension mismatch");
  return matvec(expm(mean_matrix(p), t), x0);
}

namespace {

struct CsbpKernel {
  const BranchingParams& p;
  std::vector<double> compensation;  // int (1 ^ w_k) mu_k(dw) per colony

  explicit CsbpKernel(const BranchingParams& params) : p(params) {
    compensation.resize(static_cast<std::size_t>(p.d));
    for (int k = 0; k < p.d; ++k)
      compensation[k] = p.mu[k].integrate(
          [&](const std::vector<double>& w) { return std::min(1.0, w[k]); });
  }

  // One step of length h in place; returns false on explosion.
  bool step(std::vector<double>& x, double h, Rng& rng) const {
    const int d = p.d;
    std::vector<double> next(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      double drift = -x[static_cast<std::size_t>(i)] * compensation[static_cast<std::size_t>(i)];
      for (int j = 0; j < d; ++j) drift += p.B(i, j) * x[static_cast<std::size_t>(j)];
      double v = x[static_cast<std::size_t>(i)] + h * drift;
      if (p.c[static_cast<std::size_t>(i)] > 0.0) {
        const double var = 2.0 * p.c[static_cast<std::size_t>(i)] *
                           x[static_cast<std::size_t>(i)] * h;
        if (var > 0.0) v += std::sqrt(var) * rng.normal();
      }
      next[static_cast<std::size_t>(i)] = std::max(v, 0.0);
    }
    // Jump rates frozen at the post-diffusion state.
    x = next;
    for (int i = 0; i < d; ++i) {
      const double xi = next[static_cast<std::size_t>(i)];
      if (xi <= 0.0) continue;
      for (const Atom& a : p.mu[static_cast<std::size_t>(i)].atoms()) {
        const long long count = rng.poisson(xi * a.weight * h);
        if (count == 0) continue;
        for (int j = 0; j < d; ++j)
          x[static_cast<std::size_t>(j)] +=
              static_cast<double>(count) * a.point[static_cast<std::size_t>(j)];
      }
    }
    for (double xi : x)
      if (xi > kExplosionCap) return false;
    return true;
  }
};

bool all_zero(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

void check_sim_inputs(const BranchingParams& p, const std::vector<double>& x0,
                      double horizon, double dt, const char* who) {
  if (!simulatable(validate_branching(p)))
    throw std::invalid_argument(std::string(who) + ": invalid branching parameters");
  if (static_cast<int>(x0.size()) != p.d)
    throw std::invalid_argument(std::string(who) + ": state dimension mismatch");
  for (double v : x0)
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument(std::string(who) + ": state must be nonnegative");
  if (!(dt > 0.0)) throw std::invalid_argument(std::string(who) + ": dt must be > 0");
  if (horizon < 0.0) throw std::invalid_argument(std::string(who) + ": negative horizon");
}

}  // namespace

Trajectory<CsbpState> simulate_csbp(const BranchingParams& p,
                                    const std::vector<double>& x0, double horizon,
                                    double dt, std::uint64_t seed) {
  check_sim_inputs(p, x0, horizon, dt, "simulate_csbp");
  Trajectory<CsbpState> traj;
  traj.seed = seed;
  traj.meta = digest(p);
  Rng rng(seed);
  CsbpKernel kernel(p);
  std::vector<double> x = x0;
  traj.record(0.0, x);
  const long long steps = static_cast<long long>(std::ceil(horizon / dt - 1e-9));
  for (long long s = 1; s <= steps; ++s) {
    const double t = std::min(static_cast<double>(s) * dt, horizon);
    if (all_zero(x)) break;  // 0 is absorbing, every rate vanishes
    if (!kernel.step(x, t - traj.times.back(), rng)) {
      traj.record(t, x);
      traj.exploded = true;
      return traj;
    }
    traj.record(t, x);
  }
  return traj;
}

Trajectory<FreqMass> simulate_pair_rz(const BranchingParams& p,
                                      const std::vector<double>& r0,
                                      const std::vector<double>& z0, double horizon,
                                      double dt, std::uint64_t seed, double eps,
                                      double L) {
  check_sim_inputs(p, z0, horizon, dt, "simulate_pair_rz");
  if (static_cast<int>(r0.size()) != p.d)
    throw std::invalid_argument("simulate_pair_rz: frequency dimension mismatch");
  for (double ri : r0)
    if (ri < 0.0 || ri > 1.0)
      throw std::invalid_argument("simulate_pair_rz: r0 outside [0,1]^d");
  double zmin = z0[0], zmax = z0[0];
  for (double zi : z0) {
    zmin = std::min(zmin, zi);
    zmax = std::max(zmax, zi);
  }
  if (!(eps > 0.0 && eps < zmin && zmax < L))
    throw std::invalid_argument("simulate_pair_rz: need 0 < eps < min z0 <= max z0 < L");

  Trajectory<FreqMass> traj;
  traj.seed = seed;
  traj.meta = digest(p);
  Rng rng(seed);
  CsbpKernel kernel(p);
  const int d = p.d;
  std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    x[static_cast<std::size_t>(i)] = r0[static_cast<std::size_t>(i)] * z0[static_cast<std::size_t>(i)];
    y[static_cast<std::size_t>(i)] = z0[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)];
  }

  FreqMass state{r0, z0, false};
  traj.record(0.0, state);
  const long long steps = static_cast<long long>(std::ceil(horizon / dt - 1e-9));
  for (long long s = 1; s <= steps; ++s) {
    const double t = std::min(static_cast<double>(s) * dt, horizon);
    const double h = t - traj.times.back();
    const bool x_ok = kernel.step(x, h, rng);
    const bool y_ok = kernel.step(y, h, rng);
    bool rail_hit = false;
    for (int i = 0; i < d; ++i) {
      const double zi = x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)];
      state.z[static_cast<std::size_t>(i)] = zi;
      if (zi > 0.0)
        state.r[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] / zi;
      if (!(zi > eps && zi < L)) rail_hit = true;
    }
    if (!x_ok || !y_ok) {
      traj.exploded = true;
      rail_hit = true;
    }
    state.stopped = rail_hit;
    traj.record(t, state);
    if (rail_hit) break;
  }
  return traj;
}

}  // namespace coalbranch
