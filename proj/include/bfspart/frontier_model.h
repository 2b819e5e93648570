/*******************************************************************************
 * Expected degree profile of BFS frontiers in a configuration-model graph.
 *
 * Stubs are paired in a random order mapped onto a continuous time t in
 * [0, 1]. A degree-k vertex is still untouched at time t with probability
 * (1 - t)^k, which gives closed forms for the touched fraction per degree
 * class. Measured cumulative frontier sizes are converted into times, and
 * differences between consecutive times give the per-iteration usage
 * probability of every degree class. Combining consecutive usage profiles
 * with the joint degree distribution yields the probability that an edge of
 * class (k, k') carries a message in a given iteration.
 *
 * @file:   frontier_model.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bfspart/class_matrix.h"
#include "bfspart/degree_stats.h"
#include "bfspart/graph.h"
#include "bfspart/partition.h"

namespace bfspart {

/// p_k * (1 - (1 - t)^k): fraction of all vertices that have degree k and
/// are touched before time t.
double touched_fraction_k(double pk, VertexId k, double t);

/// 1 - sum_k p_k (1 - t)^k over classes k = 1..p.size() (p[k - 1] = p_k).
double touched_fraction(std::span<const double> p, double t);

/// Time t with |touched_fraction(p, t) - y| <= 1e-10, by bisection.
double invert_touched_fraction(std::span<const double> p, double y);

struct FrontierProfile {
  VertexId k_cap = 0;
  // Population the profile is normalized against (non-isolated vertices).
  VertexId population = 0;

  std::vector<std::uint64_t> frontier_sizes;
  std::vector<std::uint64_t> cumulative;
  std::vector<double> times;

  // Rows are iterations, columns degree classes 1..k_cap:
  //   counts[tau] = expected frontier members per class,
  //   distribution[tau] = counts[tau] normalized to sum 1,
  //   usage[tau] = counts[tau] / (p_k * population), clamped to [0, 1].
  std::vector<std::vector<double>> counts;
  std::vector<std::vector<double>> distribution;
  std::vector<std::vector<double>> usage;

  [[nodiscard]] std::size_t iterations() const { return frontier_sizes.size(); }
  [[nodiscard]] double usage_of(const std::size_t tau, const VertexId k) const { return usage[tau][k - 1]; }
};

/// Builds the per-iteration profile from measured frontier sizes |V_0|,
/// |V_1|, ... (index 0 is the root frontier).
FrontierProfile build_frontier_profile(const DegreeStats &stats, std::span<const std::uint64_t> frontier_sizes);

/// pi_k^tau * joint(k, k') * pi_k'^(tau + 1).
ClassMatrix transition_matrix(const FrontierProfile &profile, const ClassMatrix &joint, std::size_t tau);

inline ClassMatrix transition_matrix(const FrontierProfile &profile, const DegreeStats &stats, const std::size_t tau) {
  return transition_matrix(profile, stats.joint, tau);
}

struct WeightTable {
  std::size_t tau = 0;
  ClassMatrix w;

  [[nodiscard]] VertexId k_cap() const { return w.k_cap(); }
};

/// w(k, k') = p(k, k') + p(k', k) - p(k, k') p(k', k) for a transition matrix
/// p: the edge is used in one direction or the other, not both.
WeightTable combine_directions(const ClassMatrix &transition, std::size_t tau);

/// Weights from the joint degree distribution exactly as the transition
/// matrix defines them. Entries are joint probabilities, so they sum (over
/// classes) to an expected fraction of edges rather than a per-edge value.
WeightTable message_weight_table(const FrontierProfile &profile, const DegreeStats &stats, std::size_t tau);

/// Per-edge variant: the transition is conditioned on the edge class, i.e.
/// the joint distribution is replaced by 1 on every class pair that occurs
/// in the graph. w(k, k') is then the probability that one particular edge
/// of that class carries a message in iteration tau.
WeightTable edge_message_table(const FrontierProfile &profile, const DegreeStats &stats, std::size_t tau);

/// Sum of w(class(u), class(v)) over undirected edges whose endpoints lie in
/// different blocks.
double expected_cut(const Graph &g, const Partition &part, const WeightTable &table);

namespace serial {
double expected_cut(const Graph &g, const Partition &part, const WeightTable &table);
} // namespace serial

/// {"tau", "k_cap", "w" (row-major)}
nlohmann::json to_json(const WeightTable &table);
/// {"frontier_sizes", "cumulative", "times", "usage"}
nlohmann::json to_json(const FrontierProfile &profile);

} // namespace bfspart
