#include "coalbranch/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coalbranch/branching.hpp"
#include "coalbranch/fnv.hpp"
#include "coalbranch/multiindex.hpp"
#include "coalbranch/rng.hpp"

namespace coalbranch {

namespace {

void check_cube(const std::vector<double>& r, int d, const char* who) {
  if (static_cast<int>(r.size()) != d)
    throw std::invalid_argument(std::string(who) + ": frequency dimension mismatch");
  for (double ri : r)
    if (!(ri >= 0.0 && ri <= 1.0))
      throw std::invalid_argument(std::string(who) + ": frequency outside [0,1]^d");
}

}  // namespace

FreqParams build_freq_params(const BranchingParams& p, const MassLevel& z) {
  if (p.d != z.dim())
    throw std::invalid_argument("build_freq_params: dimension mismatch");
  if (!simulatable(validate_branching(p)))
    throw std::invalid_argument("build_freq_params: invalid branching parameters");
  const int d = p.d;
  FreqParams fp{z, SquareMatrix(d), std::vector<double>(static_cast<std::size_t>(d)),
                {}, SquareMatrix(d)};
  fp.jump_atoms.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    fp.jump_atoms[static_cast<std::size_t>(j)] = pushforward(p.mu[static_cast<std::size_t>(j)], z).atoms();
    for (const Atom& a : fp.jump_atoms[static_cast<std::size_t>(j)])
      for (double u : a.point)
        if (u >= 1.0)
          throw std::invalid_argument("build_freq_params: pushforward atom reached 1");
  }
  for (int i = 0; i < d; ++i) {
    fp.diffusion[static_cast<std::size_t>(i)] = 2.0 * p.c[static_cast<std::size_t>(i)] / z.z[static_cast<std::size_t>(i)];
    for (int j = 0; j < d; ++j) {
      double flow = 0.0;
      for (const Atom& a : fp.jump_atoms[static_cast<std::size_t>(j)])
        flow += a.weight * a.point[static_cast<std::size_t>(i)];
      flow *= z.z[static_cast<std::size_t>(j)];
      fp.jump_flow(i, j) = flow;
      if (j != i)
        fp.drift(i, j) = p.B(i, j) * z.z[static_cast<std::size_t>(j)] / z.z[static_cast<std::size_t>(i)] + flow;
    }
  }
  return fp;
}

std::string digest(const FreqParams& fp) {
  Fnv1a h;
  h.feed(fp.dim());
  for (double zi : fp.z.z) h.feed(zi);
  for (int i = 0; i < fp.dim(); ++i)
    for (int j = 0; j < fp.dim(); ++j) h.feed(fp.drift(i, j));
  for (double g : fp.diffusion) h.feed(g);
  for (const auto& atoms : fp.jump_atoms) {
    h.feed(static_cast<int>(atoms.size()));
    for (const Atom& a : atoms) {
      for (double u : a.point) h.feed(u);
      h.feed(a.weight);
    }
  }
  return h.hex();
}

std::vector<double> jump_compensator(const FreqParams& fp,
                                     const std::vector<double>& r) {
  const int d = fp.dim();
  std::vector<double> comp(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      comp[static_cast<std::size_t>(i)] +=
          fp.jump_flow(i, j) * (r[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(j)]);
  return comp;
}

Trajectory<std::vector<double>> simulate_limit_sde(const FreqParams& fp,
                                                   const std::vector<double>& r0,
                                                   double horizon, double dt,
                                                   std::uint64_t seed) {
  const int d = fp.dim();
  check_cube(r0, d, "simulate_limit_sde");
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_limit_sde: dt must be > 0");
  if (horizon < 0.0) throw std::invalid_argument("simulate_limit_sde: negative horizon");

  Trajectory<std::vector<double>> traj;
  traj.seed = seed;
  traj.meta = digest(fp);
  Rng rng(seed);
  std::vector<double> r = r0;
  traj.record(0.0, r);
  std::vector<double> next(static_cast<std::size_t>(d));
  const long long steps = static_cast<long long>(std::ceil(horizon / dt - 1e-9));
  for (long long s = 1; s <= steps; ++s) {
    const double t = std::min(static_cast<double>(s) * dt, horizon);
    const double h = t - traj.times.back();
    const std::vector<double> comp = jump_compensator(fp, r);
    for (int i = 0; i < d; ++i) {
      double drift = comp[static_cast<std::size_t>(i)];
      for (int j = 0; j < d; ++j)
        if (j != i)
          drift += fp.drift(i, j) * (r[static_cast<std::size_t>(j)] - r[static_cast<std::size_t>(i)]);
      double v = r[static_cast<std::size_t>(i)] + h * drift;
      const double gamma = fp.diffusion[static_cast<std::size_t>(i)];
      if (gamma > 0.0) {
        const double var =
            gamma * r[static_cast<std::size_t>(i)] * (1.0 - r[static_cast<std::size_t>(i)]) * h;
        if (var > 0.0) v += std::sqrt(var) * rng.normal();
      }
      next[static_cast<std::size_t>(i)] = std::clamp(v, 0.0, 1.0);
    }
    // Jump rates frozen at the clamped post-diffusion state.
    r = next;
    for (int j = 0; j < d; ++j) {
      const double zj = fp.z.z[static_cast<std::size_t>(j)];
      const double rate1 = zj * next[static_cast<std::size_t>(j)];
      const double rate2 = zj * (1.0 - next[static_cast<std::size_t>(j)]);
      for (const Atom& a : fp.jump_atoms[static_cast<std::size_t>(j)]) {
        const long long grow = rate1 > 0.0 ? rng.poisson(rate1 * a.weight * h) : 0;
        for (long long e = 0; e < grow; ++e)
          for (int i = 0; i < d; ++i)
            r[static_cast<std::size_t>(i)] +=
                (1.0 - r[static_cast<std::size_t>(i)]) * a.point[static_cast<std::size_t>(i)];
        const long long shrink = rate2 > 0.0 ? rng.poisson(rate2 * a.weight * h) : 0;
        for (long long e = 0; e < shrink; ++e)
          for (int i = 0; i < d; ++i)
            r[static_cast<std::size_t>(i)] -=
                r[static_cast<std::size_t>(i)] * a.point[static_cast<std::size_t>(i)];
      }
    }
    traj.record(t, r);
  }
  return traj;
}

Trajectory<std::vector<double>> sequential_sampling(const BranchingParams& p,
                                                    const MassLevel& z,
                                                    const std::vector<double>& r0,
                                                    const SeqSampleConfig& cfg,
                                                    double horizon,
                                                    std::uint64_t seed) {
  if (p.d != z.dim())
    throw std::invalid_argument("sequential_sampling: dimension mismatch");
  check_cube(r0, p.d, "sequential_sampling");
  if (cfg.n < 1) throw std::invalid_argument("sequential_sampling: intensity n must be >= 1");
  double zmin = z.z[0], zmax = z.z[0];
  for (double zi : z.z) {
    zmin = std::min(zmin, zi);
    zmax = std::max(zmax, zi);
  }
  if (!(cfg.eps > 0.0 && cfg.eps < zmin && zmax < cfg.L))
    throw std::invalid_argument("sequential_sampling: need 0 < eps < min z <= max z < L");
  const double inner_dt = cfg.inner_dt > 0.0 ? cfg.inner_dt : 1.0 / (10.0 * cfg.n);
  if (horizon < 0.0) throw std::invalid_argument("sequential_sampling: negative horizon");

  Trajectory<std::vector<double>> traj;
  traj.seed = seed;
  traj.meta = digest(p);
  Rng clock(seed);
  std::vector<double> r = r0;
  double t = 0.0;
  traj.record(t, r);
  const double segment = 1.0 / static_cast<double>(cfg.n);
  for (;;) {
    t += clock.exponential(static_cast<double>(cfg.n));
    if (t > horizon) break;
    const std::uint64_t inner_seed = clock.next_u64();
    const auto inner = simulate_pair_rz(p, r, z.z, segment, inner_dt, inner_seed,
                                        cfg.eps, cfg.L);
    r = inner.final_state().r;
    traj.record(t, r);
  }
  return traj;
}

double generator_on_monomial(const FreqParams& fp, const BlockCounts& n,
                             const std::vector<double>& r) {
  const int d = fp.dim();
  check_cube(r, d, "generator_on_monomial");
  if (static_cast<int>(n.size()) != d)
    throw std::invalid_argument("generator_on_monomial: exponent dimension mismatch");
  for (int ni : n)
    if (ni < 0) throw std::invalid_argument("generator_on_monomial: negative exponent");

  const double rn = monomial(r, n);
  double acc = 0.0;
  BlockCounts m = n;
  for (int i = 0; i < d; ++i) {
    if (n[static_cast<std::size_t>(i)] >= 2 && fp.diffusion[static_cast<std::size_t>(i)] > 0.0) {
      m[static_cast<std::size_t>(i)] -= 1;
      acc += fp.diffusion[static_cast<std::size_t>(i)] * binom(n[static_cast<std::size_t>(i)], 2) *
             (monomial(r, m) - rn);
      m[static_cast<std::size_t>(i)] += 1;
    }
    if (n[static_cast<std::size_t>(i)] >= 1) {
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        const double bare = fp.drift(i, j) - fp.jump_flow(i, j);  // b_ij z_j / z_i
        if (bare == 0.0) continue;
        m[static_cast<std::size_t>(i)] -= 1;
        m[static_cast<std::size_t>(j)] += 1;
        acc += n[static_cast<std::size_t>(i)] * bare * (monomial(r, m) - rn);
        m[static_cast<std::size_t>(i)] += 1;
        m[static_cast<std::size_t>(j)] -= 1;
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    const auto& atoms = fp.jump_atoms[static_cast<std::size_t>(i)];
    if (atoms.empty()) continue;
    const double zi = fp.z.z[static_cast<std::size_t>(i)];
    BlockCounts k(n.size(), 0);
    do {
      if (is_zero(k) || is_unit_at(k, i)) continue;
      double lam = 0.0;
      for (const Atom& a : atoms) {
        double prod = 1.0;
        for (int j = 0; j < d; ++j)
          prod *= ipow(a.point[static_cast<std::size_t>(j)], k[static_cast<std::size_t>(j)]) *
                  ipow(1.0 - a.point[static_cast<std::size_t>(j)],
                       n[static_cast<std::size_t>(j)] - k[static_cast<std::size_t>(j)]);
        lam += a.weight * prod;
      }
      if (lam == 0.0) continue;
      BlockCounts target = n;
      for (int j = 0; j < d; ++j) target[static_cast<std::size_t>(j)] -= k[static_cast<std::size_t>(j)];
      target[static_cast<std::size_t>(i)] += 1;
      acc += zi * multi_binom(n, k) * lam * (monomial(r, target) - rn);
    } while (next_in_box(k, n));
  }
  return acc;
}

}  // namespace coalbranch
