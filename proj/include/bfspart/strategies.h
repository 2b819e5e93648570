/*******************************************************************************
 * Edge weightings that feed the partitioner: unweighted baseline, weights
 * from observed message counts (single run or smoothed over several), and
 * weights predicted by the frontier model.
 *
 * @file:   strategies.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bfspart/bfs.h"
#include "bfspart/class_matrix.h"
#include "bfspart/degree_stats.h"
#include "bfspart/frontier_model.h"
#include "bfspart/graph.h"
#include "bfspart/partition.h"

namespace bfspart {

enum class StrategyKind { baseline, emp, smooth, avg };

std::string_view to_string(StrategyKind kind);
/// Accepts "baseline", "emp", "smooth", "avg"; throws std::invalid_argument.
StrategyKind parse_strategy(std::string_view name);
std::vector<StrategyKind> all_strategies();

/// Weights below this fraction of the largest weight are raised to it.
inline constexpr double kWeightFloor = 1e-6;

struct BurnIn {
  std::vector<VertexId> roots;
  std::vector<MessageTrace> traces;
  // Mean frontier size per iteration (shorter traces padded with 0), rounded,
  // trailing zeros dropped.
  std::vector<std::uint64_t> frontier_sizes;
  // Most frequent peak iteration, smallest on ties.
  std::size_t modal_peak = 0;
};

/// BFS from `runs` distinct random roots of the largest component. Traces
/// carry peak class counts at cap k_cap.
BurnIn burn_in(
    const Graph &g, const Partition &part, std::size_t runs, std::uint64_t seed, VertexId k_cap = kDefaultDegreeCap,
    MessageRule rule = MessageRule::unexpanded_targets
);

/// Per-slot weights from a class table; entries below the floor are raised
/// to kWeightFloor times the maximum. An all-zero table gives unit weights.
WeightedGraph weights_from_table(const Graph &g, const ClassMatrix &table);

enum class WeightScale {
  // w(k, k') is the message probability of one edge of class (k, k').
  per_edge,
  // Transition probabilities multiplied by the joint degree distribution.
  joint,
};

/// Class table of the model weighting for the messages sent by frontier
/// `peak` (clamped so that peak + 1 is a valid iteration). Empty when the
/// profile has fewer than two iterations.
std::optional<WeightTable> avg_weight_table(
    const DegreeStats &stats, std::span<const std::uint64_t> frontier_sizes, std::optional<std::size_t> peak = {},
    WeightScale scale = WeightScale::per_edge
);

/// Model weighting. Without `peak` the largest mean frontier is used. A
/// single-iteration profile falls back to unit weights with a warning.
WeightedGraph build_w_avg(
    const Graph &g, const DegreeStats &stats, std::span<const std::uint64_t> frontier_sizes,
    std::optional<std::size_t> peak = {}, WeightScale scale = WeightScale::per_edge
);

/// m(k, k') / (edges of class (k, k')): expected messages per edge.
/// Throws if the count matrix is all zero.
WeightedGraph build_w_emp(const Graph &g, const ClassMatrix &class_counts);

/// Mean of the per-run counts plus `pseudo_count` on every class pair that
/// has at least one edge, then weighted as in build_w_emp.
WeightedGraph build_w_smooth(const Graph &g, std::span<const ClassMatrix> run_counts, double pseudo_count = 1.0);

/// "u v weight" per undirected edge, u < v.
void export_weighted(const WeightedGraph &wg, std::ostream &out);

} // namespace bfspart
