/*******************************************************************************
 * Level-synchronous BFS that counts the notification messages a 1-D
 * partitioned parallel BFS would exchange in every iteration.
 *
 * Iteration tau expands frontier V_tau. Every frontier vertex u sends one
 * message to each neighbor v that had not been expanded before the
 * iteration started (by default: v in V_tau or v untouched), so a vertex
 * reached from several frontier vertices receives several messages. A
 * message is crossing when u and v live in different blocks.
 *
 * Arrays are indexed by the frontier being expanded: entry tau holds the
 * messages sent by V_tau. The peak iteration's cost is the batch sent by the
 * largest frontier.
 *
 * @file:   bfs.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bfspart/class_matrix.h"
#include "bfspart/degree_stats.h"
#include "bfspart/graph.h"
#include "bfspart/partition.h"

namespace bfspart {

enum class MessageRule {
  // Targets not expanded before the iteration: untouched vertices and other
  // members of the current frontier (edges inside a frontier send both ways).
  unexpanded_targets,
  // Only targets that join the next frontier.
  next_frontier_only,
};

struct TraceOptions {
  MessageRule rule = MessageRule::unexpanded_targets;
  bool collect_classes = false;
  VertexId k_cap = kDefaultDegreeCap;
};

struct MessageTrace {
  VertexId root = 0;
  // frontier_sizes[tau] = |V_tau|, V_0 = {root}.
  std::vector<std::uint64_t> frontier_sizes;
  // Messages sent while expanding V_tau; trailing message-free iterations
  // are dropped, so these may be shorter than frontier_sizes.
  std::vector<std::uint64_t> messages_cross;
  std::vector<std::uint64_t> messages_total;
  // First iteration with the largest frontier.
  std::size_t peak_iteration = 0;
  // Messages sent by the peak frontier by (source class, target class),
  // symmetrized; present when requested.
  std::optional<ClassMatrix> peak_class_counts;

  [[nodiscard]] std::uint64_t cross_at(const std::size_t tau) const {
    return tau < messages_cross.size() ? messages_cross[tau] : 0;
  }
  /// Crossing messages sent by the peak frontier.
  [[nodiscard]] std::uint64_t peak_cross() const { return cross_at(peak_iteration); }
  [[nodiscard]] std::uint64_t total_cross() const;
  [[nodiscard]] std::uint64_t component_size() const;
};

/// Parallel (OpenMP) level-synchronous trace.
MessageTrace bfs_trace(const Graph &g, const Partition &part, VertexId root, const TraceOptions &options = {});

/// BFS level of every vertex (-1 if unreachable).
std::vector<std::int32_t> bfs_levels(const Graph &g, VertexId root);

struct PeakStats {
  std::size_t iteration = 0;
  // peak_cross() over all crossing messages.
  double share = 0.0;
};

PeakStats peak_stats(const MessageTrace &trace);

/// Messages of iteration tau (crossing and internal) by capped degree class
/// of (source, target), symmetrized: a message between classes a != b adds
/// one to (a, b) and to (b, a). Zero matrix if the BFS has no iteration tau.
ClassMatrix message_class_counts(
    const Graph &g, VertexId root, std::size_t tau, VertexId k_cap,
    MessageRule rule = MessageRule::unexpanded_targets
);

namespace serial {

/// Straightforward single-threaded trace, frontier by frontier.
MessageTrace bfs_trace(const Graph &g, const Partition &part, VertexId root, const TraceOptions &options = {});

/// Queue-based BFS distances (-1 if unreachable).
std::vector<std::int32_t> bfs_distances(const Graph &g, VertexId root);

} // namespace serial

/// {"root", "frontier_sizes", "messages_cross", "messages_total", "peak"}
nlohmann::json to_json(const MessageTrace &trace);

} // namespace bfspart
