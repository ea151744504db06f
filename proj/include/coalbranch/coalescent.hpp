#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "coalbranch/params.hpp"
#include "coalbranch/trajectory.hpp"
#include "coalbranch/transform.hpp"

namespace coalbranch {

// Number of blocks per type.
using BlockCounts = std::vector<int>;

enum class TransitionKind { kPairwise, kMigration, kMultiMerger };

// One move of the block-counting chain: k[j] blocks of type j leave, one block
// of type result_type appears.
struct BlockTransition {
  BlockCounts target;
  BlockCounts k;
  int result_type = 0;
  TransitionKind kind = TransitionKind::kMultiMerger;
  double rate = 0.0;
};

// Block of a typed partition: sorted elements of the ground set {1..M} plus a
// type in {0..d-1}. Empty blocks are never stored.
struct TypedBlock {
  std::vector<int> elements;
  int type = 0;
  bool operator==(const TypedBlock&) const = default;
};

// d-type partition of {1..M}; blocks are kept ordered by least element.
struct TypedPartition {
  int ground_size = 0;
  std::vector<TypedBlock> blocks;

  TypedPartition() = default;
  // Validates the disjoint-cover invariant and canonicalises the ordering.
  TypedPartition(int ground_size, std::vector<TypedBlock> blocks);

  static TypedPartition singletons(int ground_size, const std::vector<int>& types);

  BlockCounts block_counts(int d) const;
  int type_of_element(int element) const;

  bool operator==(const TypedPartition&) const = default;
};

struct PartitionTransition {
  TypedPartition target;
  BlockCounts k;
  int result_type = 0;
  TransitionKind kind = TransitionKind::kMultiMerger;
  double rate = 0.0;
};

// Rate at which a fixed k-tuple of blocks (k[j] of type j, b[j] present)
// merges into one block of type result_type i:
//   rho_ii 1{k = 2 e_i} + sum_{j != i} rho_ij 1{k = e_j}
//   + int u^k (1-u)^{b-k} Q_i(du).
// Preconditions: k inside the box [0,b], k not 0 and not e_i.
double lambda_rate(const BlockCounts& b, const BlockCounts& k, int result_type,
                   const CoalescentParams& p);

// Classical single-type reduction: a finite measure Lambda on [0,1], given as
// weighted atoms (an atom at 0 is allowed and becomes the pairwise rate),
// turns into (rho, Q) with Q(du) = u^{-2} Lambda(du) on (0,1].
std::pair<double, AtomicMeasure> classical_lambda_to_Q(
    const std::vector<Atom>& lambda_atoms);

// All positive-rate moves of the block-counting chain out of n, one entry per
// (mechanism, result type, k). Rates aggregate subsets: multi-merger moves
// carry the factor binom(n, k).
std::vector<BlockTransition> enumerate_block_transitions(
    const BlockCounts& n, const CoalescentParams& p);

// Same chain parameterised by a branching triplet at mass level z:
//   2 (c_i/z_i) binom(n_i, 2)            -> n - e_i,
//   n_j b_ji z_i / z_j                   -> n - e_j + e_i,
//   z_i binom(n,k) int u^k (1-u)^{n-k} dT_z mu_i  -> n - k + e_i.
std::vector<BlockTransition> enumerate_block_transitions(
    const BlockCounts& n, const BranchingParams& p, const MassLevel& z);

Trajectory<BlockCounts> simulate_block_counting(const BlockCounts& n0,
                                                const CoalescentParams& p,
                                                double horizon,
                                                std::uint64_t seed);
Trajectory<BlockCounts> simulate_block_counting(const BlockCounts& n0,
                                                const BranchingParams& p,
                                                const MassLevel& z,
                                                double horizon,
                                                std::uint64_t seed);

// Every single move of the partition-valued chain: each choice of k[j] blocks
// per type merging into one block of type i (single foreign blocks retype,
// i.e. migrate). Rates are per subset.
std::vector<PartitionTransition> enumerate_partition_transitions(
    const TypedPartition& pi, const CoalescentParams& p);

Trajectory<TypedPartition> simulate_partition(const TypedPartition& pi0,
                                              const CoalescentParams& p,
                                              double horizon, std::uint64_t seed);

// Intersect blocks with {1..m}, drop empties, keep types.
TypedPartition restrict_partition(const TypedPartition& pi, int m);

// 1 / max{m : restrictions to [m] agree}, with 0 when the partitions agree on
// the whole ground set and 2 when they already differ on {1}.
double partition_distance(const TypedPartition& a, const TypedPartition& b);

}  // namespace coalbranch
