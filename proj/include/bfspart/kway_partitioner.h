/*******************************************************************************
 * Multilevel k-way partitioning: heavy-edge matching, greedy graph growing
 * and boundary FM refinement on every level.
 *
 * @file:   kway_partitioner.h
 ******************************************************************************/
#pragma once

#include <cstdint>

#include "bfspart/partition.h"

namespace bfspart {

struct KWayOptions {
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 1;
  // Independent greedy-growing attempts on the coarsest graph.
  int initial_attempts = 4;
  int max_refinement_passes = 10;
};

/// Partitions `wg` into `blocks` blocks minimizing the weighted edge cut
/// subject to max block size (1 + epsilon) * ceil(n / blocks). Deterministic
/// for a fixed seed. Never returns a partition whose weighted cut exceeds the
/// random_partition baseline with the same seed.
Partition partition_kway(const WeightedGraph &wg, BlockId blocks, const KWayOptions &options);

inline Partition partition_kway(
    const WeightedGraph &wg, const BlockId blocks, const double epsilon, const std::uint64_t seed
) {
  return partition_kway(wg, blocks, KWayOptions{.epsilon = epsilon, .seed = seed});
}

} // namespace bfspart
