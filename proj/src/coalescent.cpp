#include "coalbranch/coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "coalbranch/multiindex.hpp"
#include "coalbranch/rng.hpp"

namespace coalbranch {

namespace {

bool is_two_at(const BlockCounts& k, int i) {
  for (std::size_t j = 0; j < k.size(); ++j)
    if (k[j] != (static_cast<int>(j) == i ? 2 : 0)) return false;
  return true;
}

void check_counts(const BlockCounts& n, int d, const char* who) {
  if (static_cast<int>(n.size()) != d)
    throw std::invalid_argument(std::string(who) + ": block count dimension mismatch");
  for (int x : n)
    if (x < 0) throw std::invalid_argument(std::string(who) + ": negative block count");
}

}  // namespace

TypedPartition::TypedPartition(int ground_size_in, std::vector<TypedBlock> blocks_in)
    : ground_size(ground_size_in), blocks(std::move(blocks_in)) {
  if (ground_size <= 0)
    throw std::invalid_argument("TypedPartition: ground set must be nonempty");
  std::vector<bool> seen(static_cast<std::size_t>(ground_size) + 1, false);
  int covered = 0;
  for (TypedBlock& b : blocks) {
    if (b.elements.empty())
      throw std::invalid_argument("TypedPartition: empty block");
    if (b.type < 0) throw std::invalid_argument("TypedPartition: negative type");
    std::sort(b.elements.begin(), b.elements.end());
    for (int e : b.elements) {
      if (e < 1 || e > ground_size)
        throw std::invalid_argument("TypedPartition: element outside ground set");
      if (seen[static_cast<std::size_t>(e)])
        throw std::invalid_argument("TypedPartition: blocks are not disjoint");
      seen[static_cast<std::size_t>(e)] = true;
      ++covered;
    }
  }
  if (covered != ground_size)
    throw std::invalid_argument("TypedPartition: blocks do not cover the ground set");
  std::sort(blocks.begin(), blocks.end(),
            [](const TypedBlock& a, const TypedBlock& b) {
              return a.elements.front() < b.elements.front();
            });
}

TypedPartition TypedPartition::singletons(int ground_size,
                                          const std::vector<int>& types) {
  if (static_cast<int>(types.size()) != ground_size)
    throw std::invalid_argument("singletons: need one type per element");
  std::vector<TypedBlock> blocks;
  blocks.reserve(types.size());
  for (int e = 1; e <= ground_size; ++e)
    blocks.push_back({{e}, types[static_cast<std::size_t>(e - 1)]});
  return TypedPartition(ground_size, std::move(blocks));
}

BlockCounts TypedPartition::block_counts(int d) const {
  BlockCounts n(static_cast<std::size_t>(d), 0);
  for (const TypedBlock& b : blocks) {
    if (b.type >= d)
      throw std::invalid_argument("block_counts: block type outside [0,d)");
    ++n[static_cast<std::size_t>(b.type)];
  }
  return n;
}

int TypedPartition::type_of_element(int element) const {
  for (const TypedBlock& b : blocks)
    if (std::binary_search(b.elements.begin(), b.elements.end(), element))
      return b.type;
  throw std::invalid_argument("type_of_element: element not in ground set");
}

double lambda_rate(const BlockCounts& b, const BlockCounts& k, int result_type,
                   const CoalescentParams& p) {
  check_counts(b, p.d, "lambda_rate");
  check_counts(k, p.d, "lambda_rate");
  if (result_type < 0 || result_type >= p.d)
    throw std::invalid_argument("lambda_rate: result type outside [0,d)");
  for (int j = 0; j < p.d; ++j)
    if (k[j] > b[j]) throw std::invalid_argument("lambda_rate: k outside the box [0,b]");
  if (is_zero(k) || is_unit_at(k, result_type))
    throw std::invalid_argument("lambda_rate: k must not be 0 or e_i");

  const int i = result_type;
  double rate = 0.0;
  if (is_two_at(k, i)) rate += p.rho(i, i);
  for (int j = 0; j < p.d; ++j)
    if (j != i && is_unit_at(k, j)) rate += p.rho(i, j);
  if (!p.Q[i].empty()) {
    rate += p.Q[i].integrate([&](const std::vector<double>& u) {
      double prod = 1.0;
      for (int j = 0; j < p.d; ++j)
        prod *= ipow(u[j], k[j]) * ipow(1.0 - u[j], b[j] - k[j]);
      return prod;
    });
  }
  return rate;
}

std::pair<double, AtomicMeasure> classical_lambda_to_Q(
    const std::vector<Atom>& lambda_atoms) {
  double rho = 0.0;
  std::vector<Atom> q_atoms;
  for (const Atom& a : lambda_atoms) {
    if (a.point.size() != 1)
      throw std::invalid_argument("classical_lambda_to_Q: atoms must be one-dimensional");
    const double x = a.point[0];
    if (x < -kPointTol || x > 1.0 + kPointTol)
      throw std::invalid_argument("classical_lambda_to_Q: atom outside [0,1]");
    if (!(a.weight > 0.0))
      throw std::invalid_argument("classical_lambda_to_Q: weights must be positive");
    if (std::fabs(x) <= kPointTol)
      rho += a.weight;
    else
      q_atoms.push_back({{x}, a.weight / (x * x)});
  }
  return {rho, AtomicMeasure::with_merging(1, Domain::kUnitCube, std::move(q_atoms))};
}

namespace {

// Shared enumeration body. The three mechanism callbacks supply the pairwise
// rate rho_ii, the migration rate rho_ij, and the merger measure for result
// type i (already carrying any z scaling).
std::vector<BlockTransition> enumerate_impl(
    const BlockCounts& n, int d,
    const std::function<double(int)>& pairwise_rate,
    const std::function<double(int, int)>& migration_rate,
    const std::function<const AtomicMeasure*(int)>& merger_measure) {
  std::vector<BlockTransition> out;
  if (total(n) == 0) return out;
  for (int i = 0; i < d; ++i) {
    if (n[i] >= 2) {
      const double rate = binom(n[i], 2) * pairwise_rate(i);
      if (rate > 0.0) {
        BlockCounts target = n;
        target[i] -= 1;
        BlockCounts k(n.size(), 0);
        k[i] = 2;
        out.push_back({std::move(target), std::move(k), i,
                       TransitionKind::kPairwise, rate});
      }
    }
    for (int j = 0; j < d; ++j) {
      if (j == i || n[j] < 1) continue;
      const double rate = n[j] * migration_rate(i, j);
      if (rate > 0.0) {
        BlockCounts target = n;
        target[j] -= 1;
        target[i] += 1;
        BlockCounts k(n.size(), 0);
        k[j] = 1;
        out.push_back({std::move(target), std::move(k), i,
                       TransitionKind::kMigration, rate});
      }
    }
    const AtomicMeasure* measure = merger_measure(i);
    if (measure == nullptr || measure->empty()) continue;
    BlockCounts k(n.size(), 0);
    do {
      if (is_zero(k) || is_unit_at(k, i)) continue;
      const double integral = measure->integrate([&](const std::vector<double>& u) {
        double prod = 1.0;
        for (int j = 0; j < d; ++j)
          prod *= ipow(u[j], k[j]) * ipow(1.0 - u[j], n[j] - k[j]);
        return prod;
      });
      const double rate = multi_binom(n, k) * integral;
      if (rate <= 0.0) continue;
      BlockCounts target = n;
      for (int j = 0; j < d; ++j) target[j] -= k[j];
      target[i] += 1;
      out.push_back({std::move(target), k, i, TransitionKind::kMultiMerger, rate});
    } while (next_in_box(k, n));
  }
  return out;
}

}  // namespace

std::vector<BlockTransition> enumerate_block_transitions(
    const BlockCounts& n, const CoalescentParams& p) {
  check_counts(n, p.d, "enumerate_block_transitions");
  if (!simulatable(validate_coalescent(p)))
    throw std::invalid_argument("enumerate_block_transitions: invalid coalescent parameters");
  return enumerate_impl(
      n, p.d, [&](int i) { return p.rho(i, i); },
      [&](int i, int j) { return p.rho(i, j); },
      [&](int i) { return &p.Q[i]; });
}

std::vector<BlockTransition> enumerate_block_transitions(
    const BlockCounts& n, const BranchingParams& p, const MassLevel& z) {
  check_counts(n, p.d, "enumerate_block_transitions");
  if (p.d != z.dim())
    throw std::invalid_argument("enumerate_block_transitions: mass level dimension mismatch");
  if (!simulatable(validate_branching(p)))
    throw std::invalid_argument("enumerate_block_transitions: invalid branching parameters");
  std::vector<AtomicMeasure> scaled;
  scaled.reserve(static_cast<std::size_t>(p.d));
  for (int i = 0; i < p.d; ++i) {
    std::vector<Atom> atoms = pushforward(p.mu[i], z).atoms();
    for (Atom& a : atoms) a.weight *= z.z[i];
    scaled.emplace_back(p.d, Domain::kUnitCube, std::move(atoms));
  }
  return enumerate_impl(
      n, p.d, [&](int i) { return 2.0 * p.c[i] / z.z[i]; },
      [&](int i, int j) { return p.B(j, i) * z.z[i] / z.z[j]; },
      [&](int i) { return &scaled[i]; });
}

namespace {

template <class Enumerator>
Trajectory<BlockCounts> gillespie_blocks(const BlockCounts& n0, double horizon,
                                         std::uint64_t seed, std::string meta,
                                         Enumerator&& enumerate) {
  if (horizon < 0.0) throw std::invalid_argument("simulate_block_counting: negative horizon");
  Trajectory<BlockCounts> traj;
  traj.seed = seed;
  traj.meta = std::move(meta);
  Rng rng(seed);
  BlockCounts n = n0;
  double t = 0.0;
  traj.record(t, n);
  for (;;) {
    const std::vector<BlockTransition> moves = enumerate(n);
    double total_rate = 0.0;
    for (const auto& m : moves) total_rate += m.rate;
    if (total_rate <= 0.0) break;
    t += rng.exponential(total_rate);
    if (t > horizon) break;
    double x = rng.uniform() * total_rate;
    std::size_t pick = 0;
    for (; pick + 1 < moves.size(); ++pick) {
      x -= moves[pick].rate;
      if (x <= 0.0) break;
    }
    n = moves[pick].target;
    traj.record(t, n);
  }
  return traj;
}

}  // namespace

Trajectory<BlockCounts> simulate_block_counting(const BlockCounts& n0,
                                                const CoalescentParams& p,
                                                double horizon,
                                                std::uint64_t seed) {
  return gillespie_blocks(n0, horizon, seed, digest(p), [&](const BlockCounts& n) {
    return enumerate_block_transitions(n, p);
  });
}

Trajectory<BlockCounts> simulate_block_counting(const BlockCounts& n0,
                                                const BranchingParams& p,
                                                const MassLevel& z,
                                                double horizon,
                                                std::uint64_t seed) {
  return gillespie_blocks(n0, horizon, seed, digest(p), [&](const BlockCounts& n) {
    return enumerate_block_transitions(n, p, z);
  });
}

namespace {

struct MergeEvent {
  double rate = 0.0;
  int result_type = 0;
  BlockCounts k;
  std::vector<int> chosen;  // indices into pi.blocks
  TransitionKind kind = TransitionKind::kMultiMerger;
};

TransitionKind classify(const BlockCounts& k, int i) {
  if (total(k) == 1) return TransitionKind::kMigration;
  if (is_two_at(k, i)) return TransitionKind::kPairwise;
  return TransitionKind::kMultiMerger;
}

// All choices of k[j] blocks of each type j, appended to `events` with the
// given per-subset rate.
void emit_subsets(const std::vector<std::vector<int>>& by_type,
                  const BlockCounts& k, int i, double rate,
                  std::vector<MergeEvent>& events) {
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int type) {
    if (type == static_cast<int>(by_type.size())) {
      events.push_back({rate, i, k, chosen, classify(k, i)});
      return;
    }
    const int want = k[static_cast<std::size_t>(type)];
    const auto& pool = by_type[static_cast<std::size_t>(type)];
    if (want == 0) {
      rec(type + 1);
      return;
    }
    std::vector<int> pick(static_cast<std::size_t>(want));
    std::function<void(int, int)> comb = [&](int start, int depth) {
      if (depth == want) {
        chosen.insert(chosen.end(), pick.begin(), pick.end());
        rec(type + 1);
        chosen.resize(chosen.size() - static_cast<std::size_t>(want));
        return;
      }
      for (int idx = start; idx <= static_cast<int>(pool.size()) - (want - depth);
           ++idx) {
        pick[static_cast<std::size_t>(depth)] = pool[static_cast<std::size_t>(idx)];
        comb(idx + 1, depth + 1);
      }
    };
    comb(0, 0);
  };
  rec(0);
}

std::vector<MergeEvent> enumerate_merge_events(const TypedPartition& pi,
                                               const CoalescentParams& p) {
  if (!simulatable(validate_coalescent(p)))
    throw std::invalid_argument("enumerate_partition_transitions: invalid coalescent parameters");
  const BlockCounts b = pi.block_counts(p.d);
  std::vector<std::vector<int>> by_type(static_cast<std::size_t>(p.d));
  for (int idx = 0; idx < static_cast<int>(pi.blocks.size()); ++idx)
    by_type[static_cast<std::size_t>(pi.blocks[static_cast<std::size_t>(idx)].type)]
        .push_back(idx);

  std::vector<MergeEvent> events;
  for (int i = 0; i < p.d; ++i) {
    BlockCounts k(b.size(), 0);
    do {
      if (is_zero(k) || is_unit_at(k, i)) continue;
      const double rate = lambda_rate(b, k, i, p);
      if (rate <= 0.0) continue;
      emit_subsets(by_type, k, i, rate, events);
    } while (next_in_box(k, b));
  }
  return events;
}

TypedPartition apply_merge(const TypedPartition& pi, const MergeEvent& ev) {
  std::vector<bool> merged_mask(pi.blocks.size(), false);
  for (int idx : ev.chosen) merged_mask[static_cast<std::size_t>(idx)] = true;
  std::vector<TypedBlock> blocks;
  TypedBlock merged;
  merged.type = ev.result_type;
  for (std::size_t idx = 0; idx < pi.blocks.size(); ++idx) {
    if (merged_mask[idx])
      merged.elements.insert(merged.elements.end(), pi.blocks[idx].elements.begin(),
                             pi.blocks[idx].elements.end());
    else
      blocks.push_back(pi.blocks[idx]);
  }
  blocks.push_back(std::move(merged));
  return TypedPartition(pi.ground_size, std::move(blocks));
}

}  // namespace

std::vector<PartitionTransition> enumerate_partition_transitions(
    const TypedPartition& pi, const CoalescentParams& p) {
  std::vector<PartitionTransition> out;
  for (const MergeEvent& ev : enumerate_merge_events(pi, p))
    out.push_back({apply_merge(pi, ev), ev.k, ev.result_type, ev.kind, ev.rate});
  return out;
}

Trajectory<TypedPartition> simulate_partition(const TypedPartition& pi0,
                                              const CoalescentParams& p,
                                              double horizon, std::uint64_t seed) {
  if (horizon < 0.0) throw std::invalid_argument("simulate_partition: negative horizon");
  Trajectory<TypedPartition> traj;
  traj.seed = seed;
  traj.meta = digest(p);
  Rng rng(seed);
  TypedPartition pi = pi0;
  double t = 0.0;
  traj.record(t, pi);
  for (;;) {
    const std::vector<MergeEvent> events = enumerate_merge_events(pi, p);
    double total_rate = 0.0;
    for (const auto& ev : events) total_rate += ev.rate;
    if (total_rate <= 0.0) break;
    t += rng.exponential(total_rate);
    if (t > horizon) break;
    double x = rng.uniform() * total_rate;
    std::size_t pick = 0;
    for (; pick + 1 < events.size(); ++pick) {
      x -= events[pick].rate;
      if (x <= 0.0) break;
    }
    pi = apply_merge(pi, events[pick]);
    traj.record(t, pi);
  }
  return traj;
}

TypedPartition restrict_partition(const TypedPartition& pi, int m) {
  if (m < 1 || m > pi.ground_size)
    throw std::invalid_argument("restrict_partition: level outside [1, M]");
  std::vector<TypedBlock> blocks;
  for (const TypedBlock& b : pi.blocks) {
    TypedBlock cut;
    cut.type = b.type;
    for (int e : b.elements)
      if (e <= m) cut.elements.push_back(e);
    if (!cut.elements.empty()) blocks.push_back(std::move(cut));
  }
  return TypedPartition(m, std::move(blocks));
}

double partition_distance(const TypedPartition& a, const TypedPartition& b) {
  if (a.ground_size != b.ground_size)
    throw std::invalid_argument("partition_distance: mismatched ground sets");
  int agree = 0;
  for (int m = 1; m <= a.ground_size; ++m) {
    if (!(restrict_partition(a, m) == restrict_partition(b, m))) break;
    agree = m;
  }
  if (agree == a.ground_size) return 0.0;
  if (agree == 0) return 2.0;
  return 1.0 / static_cast<double>(agree);
}

}  // namespace coalbranch
