#include "coalbranch/duality.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "coalbranch/multiindex.hpp"
#include "coalbranch/parallel.hpp"
#include "coalbranch/rng.hpp"

namespace coalbranch {

namespace {

MomentEstimate summarise(const std::vector<double>& samples) {
  const MeanStderr ms = mean_and_stderr(samples);
  return {ms.mean, ms.stderr_of_mean, static_cast<long long>(samples.size())};
}

template <class Simulate>
MomentEstimate backward_mc_impl(const BlockCounts& n, const std::vector<double>& r,
                                long long reps, std::uint64_t seed,
                                Simulate&& simulate) {
  if (reps <= 0) throw std::invalid_argument("backward_moment: reps must be positive");
  std::vector<double> samples(static_cast<std::size_t>(reps));
  parallel_for(reps, [&](std::int64_t k) {
    const auto traj = simulate(derive_stream(seed, static_cast<std::uint64_t>(k)));
    samples[static_cast<std::size_t>(k)] = monomial(r, traj.final_state());
  });
  return summarise(samples);
}

// Reachable-state CTMC solver. Transitions only shrink or retype, so a
// breadth-first walk from n terminates; the transient expectation of r^N(t)
// is then a uniformization series over the finite generator.
class ReachableChain {
 public:
  ReachableChain(const BlockCounts& n0,
                 const std::function<std::vector<BlockTransition>(const BlockCounts&)>&
                     enumerate) {
    index_of_[n0] = 0;
    states_.push_back(n0);
    for (std::size_t next = 0; next < states_.size(); ++next) {
      const BlockCounts state = states_[next];
      std::vector<std::pair<std::size_t, double>> row;
      double outflow = 0.0;
      for (const BlockTransition& tr : enumerate(state)) {
        row.emplace_back(intern(tr.target), tr.rate);
        outflow += tr.rate;
      }
      edges_.push_back(std::move(row));
      total_rate_.push_back(outflow);
      max_rate_ = std::max(max_rate_, outflow);
    }
  }

  double expectation(const std::vector<double>& r, double t) const {
    std::vector<double> v(states_.size());
    for (std::size_t s = 0; s < states_.size(); ++s) v[s] = monomial(r, states_[s]);
    if (max_rate_ <= 0.0 || t <= 0.0) return v[0];

    const double lt = max_rate_ * t;
    double log_weight = -lt;  // log of the Poisson(lt) mass at j = 0
    double covered = std::exp(log_weight);
    double acc = covered * v[0];
    std::vector<double> w(states_.size());
    for (long long j = 1; covered < 1.0 - 1e-14; ++j) {
      // w = P v with P = I + Q / max_rate_
      for (std::size_t s = 0; s < states_.size(); ++s) {
        double flow = -total_rate_[s] * v[s];
        for (const auto& [target, rate] : edges_[s]) flow += rate * v[target];
        w[s] = v[s] + flow / max_rate_;
      }
      v.swap(w);
      log_weight += std::log(lt) - std::log(static_cast<double>(j));
      const double weight = std::exp(log_weight);
      covered += weight;
      acc += weight * v[0];
      if (j > static_cast<long long>(lt + 60.0 + 15.0 * std::sqrt(lt + 1.0))) break;
    }
    return acc;
  }

  std::size_t size() const { return states_.size(); }

 private:
  std::size_t intern(const BlockCounts& s) {
    auto [it, inserted] = index_of_.try_emplace(s, states_.size());
    if (inserted) {
      states_.push_back(s);
      if (states_.size() > kMaxExactStates)
        throw std::runtime_error(
            "backward_moment_exact: reachable state space exceeds the cap; "
            "use the Monte Carlo mode");
    }
    return it->second;
  }

  std::map<BlockCounts, std::size_t> index_of_;
  std::vector<BlockCounts> states_;
  std::vector<std::vector<std::pair<std::size_t, double>>> edges_;
  std::vector<double> total_rate_;
  double max_rate_ = 0.0;
};

MomentEstimate exact_impl(
    const BlockCounts& n, const std::vector<double>& r, double t,
    const std::function<std::vector<BlockTransition>(const BlockCounts&)>& enumerate) {
  if (t < 0.0) throw std::invalid_argument("backward_moment_exact: negative time");
  ReachableChain chain(n, enumerate);
  return {chain.expectation(r, t), 0.0, 1};
}

}  // namespace

MomentEstimate forward_moment(const BranchingParams& p, const MassLevel& z,
                              const std::vector<double>& r, const BlockCounts& n,
                              double t, long long reps, double dt,
                              std::uint64_t seed) {
  if (reps <= 0) throw std::invalid_argument("forward_moment: reps must be positive");
  const FreqParams fp = build_freq_params(p, z);
  std::vector<double> samples(static_cast<std::size_t>(reps));
  parallel_for(reps, [&](std::int64_t k) {
    const auto traj =
        simulate_limit_sde(fp, r, t, dt, derive_stream(seed, static_cast<std::uint64_t>(k)));
    samples[static_cast<std::size_t>(k)] = monomial(traj.final_state(), n);
  });
  return summarise(samples);
}

MomentEstimate backward_moment_mc(const CoalescentParams& p, const BlockCounts& n,
                                  const std::vector<double>& r, double t,
                                  long long reps, std::uint64_t seed) {
  return backward_mc_impl(n, r, reps, seed, [&](std::uint64_t stream) {
    return simulate_block_counting(n, p, t, stream);
  });
}

MomentEstimate backward_moment_mc(const BranchingParams& p, const MassLevel& z,
                                  const BlockCounts& n, const std::vector<double>& r,
                                  double t, long long reps, std::uint64_t seed) {
  return backward_mc_impl(n, r, reps, seed, [&](std::uint64_t stream) {
    return simulate_block_counting(n, p, z, t, stream);
  });
}

MomentEstimate backward_moment_exact(const CoalescentParams& p, const BlockCounts& n,
                                     const std::vector<double>& r, double t) {
  return exact_impl(n, r, t, [&](const BlockCounts& s) {
    return enumerate_block_transitions(s, p);
  });
}

MomentEstimate backward_moment_exact(const BranchingParams& p, const MassLevel& z,
                                     const BlockCounts& n, const std::vector<double>& r,
                                     double t) {
  return exact_impl(n, r, t, [&](const BlockCounts& s) {
    return enumerate_block_transitions(s, p, z);
  });
}

DualityReport duality_check(const BranchingParams& p, const MassLevel& z,
                            const std::vector<double>& r, const BlockCounts& n,
                            double t, long long reps, double dt, std::uint64_t seed,
                            double zthreshold, bool exact_backward) {
  DualityReport report;
  report.forward = forward_moment(p, z, r, n, t, reps, dt, seed);
  report.backward = exact_backward
                        ? backward_moment_exact(p, z, n, r, t)
                        : backward_moment_mc(p, z, n, r, t, reps, seed ^ 0x9E3779B97F4A7C15ull);
  const double gap = report.forward.value - report.backward.value;
  const double spread = std::sqrt(report.forward.std_error * report.forward.std_error +
                                  report.backward.std_error * report.backward.std_error);
  if (spread > 0.0)
    report.zscore = gap / spread;
  else
    report.zscore = gap == 0.0 ? 0.0
                               : std::copysign(std::numeric_limits<double>::infinity(), gap);
  report.passed = std::fabs(report.zscore) <= zthreshold;
  return report;
}

}  // namespace coalbranch
