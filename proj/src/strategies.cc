/*******************************************************************************
 * @file:   strategies.cc
 ******************************************************************************/
#include "bfspart/strategies.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace bfspart {

std::string_view to_string(const StrategyKind kind) {
  switch (kind) {
  case StrategyKind::baseline:
    return "baseline";
  case StrategyKind::emp:
    return "emp";
  case StrategyKind::smooth:
    return "smooth";
  case StrategyKind::avg:
    return "avg";
  }
  return "unknown";
}

StrategyKind parse_strategy(const std::string_view name) {
  for (const StrategyKind kind : all_strategies()) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::vector<StrategyKind> all_strategies() {
  return {StrategyKind::baseline, StrategyKind::emp, StrategyKind::smooth, StrategyKind::avg};
}

BurnIn burn_in(
    const Graph &g, const Partition &part, const std::size_t runs, const std::uint64_t seed, const VertexId k_cap,
    const MessageRule rule
) {
  if (runs == 0) {
    throw std::invalid_argument("burn-in needs at least one run");
  }
  auto candidates = largest_component(g);
  if (candidates.empty()) {
    throw std::invalid_argument("graph has no vertices");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);

  BurnIn result;
  result.roots.assign(candidates.begin(), candidates.begin() + std::min(runs, candidates.size()));
  result.traces.resize(result.roots.size());
  const TraceOptions options{rule, true, k_cap};
  for (std::size_t i = 0; i < result.roots.size(); ++i) {
    result.traces[i] = bfs_trace(g, part, result.roots[i], options);
  }

  std::size_t length = 0;
  std::map<std::size_t, std::size_t> peak_votes;
  for (const MessageTrace &trace : result.traces) {
    length = std::max(length, trace.frontier_sizes.size());
    ++peak_votes[trace.peak_iteration];
  }
  std::vector<double> sums(length, 0.0);
  for (const MessageTrace &trace : result.traces) {
    for (std::size_t tau = 0; tau < trace.frontier_sizes.size(); ++tau) {
      sums[tau] += static_cast<double>(trace.frontier_sizes[tau]);
    }
  }
  const auto count = static_cast<double>(result.traces.size());
  for (const double sum : sums) {
    result.frontier_sizes.push_back(static_cast<std::uint64_t>(std::llround(sum / count)));
  }
  while (!result.frontier_sizes.empty() && result.frontier_sizes.back() == 0) {
    result.frontier_sizes.pop_back();
  }

  std::size_t best_votes = 0;
  for (const auto &[peak, votes] : peak_votes) {
    if (votes > best_votes) {
      best_votes = votes;
      result.modal_peak = peak;
    }
  }
  return result;
}

WeightedGraph weights_from_table(const Graph &g, const ClassMatrix &table) {
  const VertexId k_cap = table.k_cap();
  std::vector<double> weights(g.adjacency().size());
  double max_weight = 0.0;
  for (VertexId u = 0; u < g.n(); ++u) {
    const VertexId ku = std::min(g.degree(u), k_cap);
    const EdgeIndex first = g.first_edge(u);
    const auto neighbors = g.neighbors(u);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      const double w = table(ku, std::min(g.degree(neighbors[i]), k_cap));
      weights[first + i] = w;
      max_weight = std::max(max_weight, w);
    }
  }
  if (!(max_weight > 0.0)) {
    std::fill(weights.begin(), weights.end(), 1.0);
    return {g, std::move(weights)};
  }
  const double floor = kWeightFloor * max_weight;
  for (double &w : weights) {
    w = std::max(w, floor);
  }
  return {g, std::move(weights)};
}

std::optional<WeightTable> avg_weight_table(
    const DegreeStats &stats, std::span<const std::uint64_t> frontier_sizes, std::optional<std::size_t> peak,
    const WeightScale scale
) {
  if (frontier_sizes.size() < 2) {
    return std::nullopt;
  }
  const FrontierProfile profile = build_frontier_profile(stats, frontier_sizes);
  std::size_t tau = peak.value_or(static_cast<std::size_t>(
      std::max_element(frontier_sizes.begin(), frontier_sizes.end()) - frontier_sizes.begin()
  ));
  tau = std::min(tau, frontier_sizes.size() - 2);
  return scale == WeightScale::per_edge ? edge_message_table(profile, stats, tau)
                                        : message_weight_table(profile, stats, tau);
}

WeightedGraph build_w_avg(
    const Graph &g, const DegreeStats &stats, std::span<const std::uint64_t> frontier_sizes,
    const std::optional<std::size_t> peak, const WeightScale scale
) {
  const auto table = avg_weight_table(stats, frontier_sizes, peak, scale);
  if (!table) {
    std::clog << "warning: frontier profile has a single iteration, using unit weights\n";
    return WeightedGraph::unit(g);
  }
  return weights_from_table(g, table->w);
}

namespace {

ClassMatrix per_edge_ratio(const Graph &g, const ClassMatrix &counts) {
  const ClassMatrix edges = edge_class_counts(g, counts.k_cap());
  ClassMatrix ratio(counts.k_cap());
  for (VertexId k = 1; k <= counts.k_cap(); ++k) {
    for (VertexId k2 = 1; k2 <= counts.k_cap(); ++k2) {
      ratio(k, k2) = edges(k, k2) > 0.0 ? counts(k, k2) / edges(k, k2) : 0.0;
    }
  }
  return ratio;
}

} // namespace

WeightedGraph build_w_emp(const Graph &g, const ClassMatrix &class_counts) {
  if (!(class_counts.max() > 0.0)) {
    throw std::invalid_argument("message class counts are all zero");
  }
  return weights_from_table(g, per_edge_ratio(g, class_counts));
}

WeightedGraph build_w_smooth(const Graph &g, std::span<const ClassMatrix> run_counts, const double pseudo_count) {
  if (run_counts.empty()) {
    throw std::invalid_argument("smoothing needs at least one run");
  }
  const VertexId k_cap = run_counts.front().k_cap();
  ClassMatrix mean(k_cap);
  for (const ClassMatrix &counts : run_counts) {
    if (counts.k_cap() != k_cap) {
      throw std::invalid_argument("class count matrices use different degree caps");
    }
    for (std::size_t i = 0; i < mean.data().size(); ++i) {
      mean.data()[i] += counts.data()[i];
    }
  }
  const ClassMatrix edges = edge_class_counts(g, k_cap);
  const auto runs = static_cast<double>(run_counts.size());
  for (std::size_t i = 0; i < mean.data().size(); ++i) {
    mean.data()[i] /= runs;
    if (edges.data()[i] > 0.0) {
      mean.data()[i] += pseudo_count;
    }
  }
  return weights_from_table(g, per_edge_ratio(g, mean));
}

void export_weighted(const WeightedGraph &wg, std::ostream &out) {
  const Graph &g = wg.graph();
  const auto flags = out.flags();
  out << std::setprecision(17);
  for (VertexId u = 0; u < g.n(); ++u) {
    const auto neighbors = g.neighbors(u);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      if (u < neighbors[i]) {
        out << u << ' ' << neighbors[i] << ' ' << wg.weight(g.first_edge(u) + i) << '\n';
      }
    }
  }
  out.flags(flags);
}

} // namespace bfspart
