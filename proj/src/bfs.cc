/*******************************************************************************
 * @file:   bfs.cc
 ******************************************************************************/
#include "bfspart/bfs.h"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <queue>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <omp.h>

namespace bfspart {

std::uint64_t MessageTrace::total_cross() const {
  return std::accumulate(messages_cross.begin(), messages_cross.end(), std::uint64_t{0});
}

std::uint64_t MessageTrace::component_size() const {
  return std::accumulate(frontier_sizes.begin(), frontier_sizes.end(), std::uint64_t{0});
}

namespace {

void check_root(const Graph &g, const VertexId root) {
  if (root >= g.n()) {
    throw std::out_of_range("root " + std::to_string(root) + " out of range");
  }
}

void check_partition(const Graph &g, const Partition &part) {
  if (part.n() != g.n()) {
    throw std::invalid_argument("partition does not match the graph");
  }
}

// With final BFS levels, the iteration-tau messages are exactly the slots
// (u, v) with level(u) == tau and level(v) >= tau (or == tau + 1).
bool is_message(const std::int32_t target_level, const std::int32_t tau, const MessageRule rule) {
  return rule == MessageRule::unexpanded_targets ? target_level >= tau : target_level == tau + 1;
}

ClassMatrix count_classes(
    const Graph &g, const std::vector<std::int32_t> &levels, const std::size_t tau, const VertexId k_cap,
    const MessageRule rule
) {
  ClassMatrix counts(k_cap);
  const auto level = static_cast<std::int32_t>(tau);
  for (VertexId u = 0; u < g.n(); ++u) {
    if (levels[u] != level) {
      continue;
    }
    const VertexId ku = std::min(g.degree(u), k_cap);
    for (const VertexId v : g.neighbors(u)) {
      if (is_message(levels[v], level, rule)) {
        const VertexId kv = std::min(g.degree(v), k_cap);
        counts(ku, kv) += 1.0;
        if (ku != kv) {
          counts(kv, ku) += 1.0;
        }
      }
    }
  }
  return counts;
}

void finish_trace(MessageTrace &trace) {
  while (!trace.messages_total.empty() && trace.messages_total.back() == 0) {
    trace.messages_total.pop_back();
    trace.messages_cross.pop_back();
  }
  trace.peak_iteration = static_cast<std::size_t>(
      std::max_element(trace.frontier_sizes.begin(), trace.frontier_sizes.end()) - trace.frontier_sizes.begin()
  );
}

} // namespace

MessageTrace bfs_trace(const Graph &g, const Partition &part, const VertexId root, const TraceOptions &options) {
  check_root(g, root);
  check_partition(g, part);

  MessageTrace trace;
  trace.root = root;
  std::vector<std::int32_t> levels(g.n(), -1);
  levels[root] = 0;
  std::vector<VertexId> frontier{root};
  std::vector<VertexId> next;
  const auto unexpanded = options.rule == MessageRule::unexpanded_targets;

  for (std::int32_t tau = 0; !frontier.empty(); ++tau) {
    trace.frontier_sizes.push_back(frontier.size());
    std::uint64_t cross = 0;
    std::uint64_t total = 0;
    next.clear();

#pragma omp parallel reduction(+ : cross, total)
    {
      std::vector<VertexId> local_next;
#pragma omp for schedule(dynamic, 64) nowait
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(frontier.size()); ++i) {
        const VertexId u = frontier[static_cast<std::size_t>(i)];
        const BlockId bu = part.block(u);
        for (const VertexId v : g.neighbors(u)) {
          std::atomic_ref<std::int32_t> level(levels[v]);
          std::int32_t seen = level.load(std::memory_order_relaxed);
          if (seen == -1) {
            if (level.compare_exchange_strong(seen, tau + 1, std::memory_order_relaxed)) {
              local_next.push_back(v);
            }
            // Either we claimed v, or another thread just did: both leave
            // v in the next frontier.
            seen = tau + 1;
          }
          if (unexpanded ? seen >= tau : seen == tau + 1) {
            ++total;
            cross += part.block(v) != bu ? 1 : 0;
          }
        }
      }
#pragma omp critical
      next.insert(next.end(), local_next.begin(), local_next.end());
    }

    trace.messages_cross.push_back(cross);
    trace.messages_total.push_back(total);
    std::sort(next.begin(), next.end());
    frontier.swap(next);
  }

  finish_trace(trace);
  if (options.collect_classes) {
    trace.peak_class_counts = count_classes(g, levels, trace.peak_iteration, options.k_cap, options.rule);
  }
  return trace;
}

std::vector<std::int32_t> bfs_levels(const Graph &g, const VertexId root) {
  check_root(g, root);
  std::vector<std::int32_t> levels(g.n(), -1);
  levels[root] = 0;
  std::vector<VertexId> frontier{root};
  std::vector<VertexId> next;
  for (std::int32_t tau = 0; !frontier.empty(); ++tau) {
    next.clear();
    for (const VertexId u : frontier) {
      for (const VertexId v : g.neighbors(u)) {
        if (levels[v] == -1) {
          levels[v] = tau + 1;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return levels;
}

PeakStats peak_stats(const MessageTrace &trace) {
  PeakStats stats;
  stats.iteration = trace.peak_iteration;
  const std::uint64_t total = trace.total_cross();
  if (total > 0) {
    stats.share = static_cast<double>(trace.peak_cross()) / static_cast<double>(total);
  }
  return stats;
}

ClassMatrix message_class_counts(
    const Graph &g, const VertexId root, const std::size_t tau, const VertexId k_cap, const MessageRule rule
) {
  return count_classes(g, bfs_levels(g, root), tau, k_cap, rule);
}

namespace serial {

MessageTrace bfs_trace(const Graph &g, const Partition &part, const VertexId root, const TraceOptions &options) {
  check_root(g, root);
  check_partition(g, part);

  MessageTrace trace;
  trace.root = root;
  std::vector<bool> expanded(g.n(), false);
  std::vector<bool> discovered(g.n(), false);
  std::vector<bool> in_frontier(g.n(), false);
  std::vector<VertexId> frontier{root};
  discovered[root] = true;
  std::vector<std::vector<VertexId>> frontiers;

  while (!frontier.empty()) {
    trace.frontier_sizes.push_back(frontier.size());
    frontiers.push_back(frontier);
    for (const VertexId u : frontier) {
      in_frontier[u] = true;
    }

    std::vector<VertexId> next;
    std::uint64_t cross = 0;
    std::uint64_t total = 0;
    for (const VertexId u : frontier) {
      for (const VertexId v : g.neighbors(u)) {
        const bool message = options.rule == MessageRule::unexpanded_targets ? !expanded[v] : !in_frontier[v] && !expanded[v];
        if (message) {
          ++total;
          if (part.block(u) != part.block(v)) {
            ++cross;
          }
        }
        if (!discovered[v]) {
          discovered[v] = true;
          next.push_back(v);
        }
      }
    }
    trace.messages_cross.push_back(cross);
    trace.messages_total.push_back(total);

    // Expansion state changes only once the whole iteration is done.
    for (const VertexId u : frontier) {
      expanded[u] = true;
      in_frontier[u] = false;
    }
    frontier = std::move(next);
  }

  finish_trace(trace);
  if (options.collect_classes) {
    std::vector<std::int32_t> levels(g.n(), -1);
    for (std::size_t tau = 0; tau < frontiers.size(); ++tau) {
      for (const VertexId u : frontiers[tau]) {
        levels[u] = static_cast<std::int32_t>(tau);
      }
    }
    trace.peak_class_counts = count_classes(g, levels, trace.peak_iteration, options.k_cap, options.rule);
  }
  return trace;
}

std::vector<std::int32_t> bfs_distances(const Graph &g, const VertexId root) {
  check_root(g, root);
  std::vector<std::int32_t> dist(g.n(), -1);
  std::queue<VertexId> queue;
  dist[root] = 0;
  queue.push(root);
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop();
    for (const VertexId v : g.neighbors(u)) {
      if (dist[v] == -1) {
        dist[v] = dist[u] + 1;
        queue.push(v);
      }
    }
  }
  return dist;
}

} // namespace serial

nlohmann::json to_json(const MessageTrace &trace) {
  return {
      {"root", trace.root},
      {"frontier_sizes", trace.frontier_sizes},
      {"messages_cross", trace.messages_cross},
      {"messages_total", trace.messages_total},
      {"peak", trace.peak_iteration},
  };
}

} // namespace bfspart
