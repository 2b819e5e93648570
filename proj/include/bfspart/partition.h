/*******************************************************************************
 * Vertex partitions, weighted graphs and partition quality metrics.
 *
 * @file:   partition.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bfspart/graph.h"

namespace bfspart {

using BlockId = std::uint32_t;

inline constexpr double kDefaultEpsilon = 0.05;

/// Disjoint cover of the vertex set by `blocks` blocks.
class Partition {
public:
  Partition() = default;
  Partition(std::vector<BlockId> block_of, BlockId blocks, double epsilon = kDefaultEpsilon);

  /// Everything in block 0.
  static Partition single_block(VertexId n);

  [[nodiscard]] VertexId n() const { return static_cast<VertexId>(_block_of.size()); }
  [[nodiscard]] BlockId blocks() const { return _blocks; }
  [[nodiscard]] double epsilon() const { return _epsilon; }
  [[nodiscard]] BlockId block(const VertexId u) const { return _block_of[u]; }
  [[nodiscard]] std::span<const BlockId> assignment() const { return _block_of; }

  [[nodiscard]] std::vector<VertexId> block_sizes() const;

  /// Largest block size permitted: floor((1 + epsilon) * ceil(n / blocks)).
  [[nodiscard]] VertexId max_block_size() const;
  [[nodiscard]] bool is_balanced() const;

  friend bool operator==(const Partition &, const Partition &) = default;

private:
  std::vector<BlockId> _block_of;
  BlockId _blocks = 0;
  double _epsilon = kDefaultEpsilon;
};

VertexId max_block_size(VertexId n, BlockId blocks, double epsilon);

/// A graph plus one nonnegative weight per adjacency slot. The weight of
/// slot (u -> v) equals the weight of slot (v -> u). The base graph must
/// outlive this object.
class WeightedGraph {
public:
  WeightedGraph(const Graph &base, std::vector<double> slot_weights);

  static WeightedGraph unit(const Graph &base);

  /// Calls weight(u, v) once per undirected edge with u < v.
  static WeightedGraph
  from_edge_function(const Graph &base, const std::function<double(VertexId, VertexId)> &weight);

  [[nodiscard]] const Graph &graph() const { return *_base; }
  [[nodiscard]] std::span<const double> slot_weights() const { return _weights; }
  [[nodiscard]] double weight(const EdgeIndex slot) const { return _weights[slot]; }

  /// Checks the symmetry invariant; O(m log d).
  [[nodiscard]] bool is_symmetric() const;

  [[nodiscard]] WeightedGraph scaled(double factor) const;

private:
  const Graph *_base;
  std::vector<double> _weights;
};

/// Sum of weights of edges whose endpoints lie in different blocks, each
/// edge counted once.
double edge_cut(const WeightedGraph &wg, const Partition &part);

/// Sum over vertices of the number of foreign blocks among its neighbors.
std::uint64_t comm_volume(const Graph &g, const Partition &part);

namespace serial {
double edge_cut(const WeightedGraph &wg, const Partition &part);
} // namespace serial

/// Balanced assignment by shuffled round-robin.
Partition random_partition(VertexId n, BlockId blocks, std::uint64_t seed, double epsilon = kDefaultEpsilon);

/// One line per vertex: "vertex block".
void export_partition(const Partition &part, std::ostream &out);

enum class PartitionFormat { pairs, metis };

/// Parses a partition over n vertices. `pairs` expects "vertex block" lines;
/// `metis` expects one block id per line with the line index as vertex id.
/// The block count is one past the largest block id unless `blocks` is given.
Partition import_partition(
    std::istream &in, VertexId n, PartitionFormat format = PartitionFormat::pairs, BlockId blocks = 0
);

} // namespace bfspart
