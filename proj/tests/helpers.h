/*******************************************************************************
 * Small graphs and fixtures shared by the unit tests.
 *
 * @file:   helpers.h
 ******************************************************************************/
#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bfspart/graph.h"
#include "bfspart/partition.h"

namespace bfspart::testing {

inline Graph graph_of(const VertexId n, const std::vector<std::pair<VertexId, VertexId>> &edges) {
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(const VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u + 1 < n; ++u) {
    edges.emplace_back(u, u + 1);
  }
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(const VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    edges.emplace_back(u, (u + 1) % n);
  }
  return Graph::from_edges(n, edges);
}

inline Graph star_graph(const VertexId leaves) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 1; u <= leaves; ++u) {
    edges.emplace_back(0, u);
  }
  return Graph::from_edges(leaves + 1, edges);
}

/// `count` disjoint cliques of `size` vertices, optionally chained by one
/// bridge edge between consecutive cliques.
inline Graph cliques(const VertexId count, const VertexId size, const bool bridged = false) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId c = 0; c < count; ++c) {
    const VertexId base = c * size;
    for (VertexId u = 0; u < size; ++u) {
      for (VertexId v = u + 1; v < size; ++v) {
        edges.emplace_back(base + u, base + v);
      }
    }
    if (bridged && c + 1 < count) {
      edges.emplace_back(base + size - 1, base + size);
    }
  }
  return Graph::from_edges(count * size, edges);
}

inline Graph figure1_graph() {
  std::ifstream in(std::string(TEST_DATA_DIR) + "/figure1.txt");
  return load_edge_list(in).graph;
}

inline Partition figure1_partition() {
  std::ifstream in(std::string(TEST_DATA_DIR) + "/figure1_blocks.txt");
  return import_partition(in, 10);
}

/// Random small graph: G(n, m) for even seeds, power-law configuration model
/// for odd seeds.
inline Graph random_small_graph(const std::uint64_t seed, const VertexId max_n = 200) {
  std::mt19937_64 rng(seed);
  const VertexId n = std::uniform_int_distribution<VertexId>(5, max_n)(rng);
  if (seed % 2 == 0) {
    const EdgeIndex max_m = static_cast<EdgeIndex>(n) * (n - 1) / 2;
    const EdgeIndex m = std::min<EdgeIndex>(max_m, std::uniform_int_distribution<EdgeIndex>(n / 2, 3 * n)(rng));
    return generate_er(n, m, seed).graph;
  }
  return generate_config_model(power_law_degree_sequence(n, 2.0, 0, seed), seed + 1).graph;
}

} // namespace bfspart::testing
