/*******************************************************************************
 * @file:   test_kway.cc
 ******************************************************************************/
#include <random>

#include <doctest.h>

#include "bfspart/kway_partitioner.h"
#include "helpers.h"

using namespace bfspart;
using namespace bfspart::testing;

namespace {

WeightedGraph random_weights(const Graph &g, const std::uint64_t seed) {
  return WeightedGraph::from_edge_function(g, [seed](VertexId u, VertexId v) {
    std::mt19937_64 rng(seed * 1000003 + static_cast<std::uint64_t>(u) * 7919 + v);
    return std::uniform_real_distribution<double>(0.01, 10.0)(rng);
  });
}

} // namespace

TEST_SUITE("kway") {
  TEST_CASE("disconnected equal components are separated") {
    for (const BlockId p : {2u, 4u, 8u}) {
      const Graph g = cliques(p, 12);
      const Partition part = partition_kway(WeightedGraph::unit(g), p, 0.05, 1);
      CHECK(part.is_balanced());
      CHECK(edge_cut(WeightedGraph::unit(g), part) == 0.0);
    }
  }

  TEST_CASE("heavy path edge is never cut") {
    const Graph g = path_graph(4);
    const WeightedGraph w = WeightedGraph::from_edge_function(g, [](VertexId u, VertexId) {
      return u == 1 ? 100.0 : 1.0;
    });
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Partition part = partition_kway(w, 2, 0.1, seed);
      CHECK(part.block(1) == part.block(2));
      CHECK(edge_cut(w, part) <= 2.0);
    }
  }

  TEST_CASE("ring of eight") {
    const Graph g = cycle_graph(8);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CHECK(edge_cut(WeightedGraph::unit(g), partition_kway(WeightedGraph::unit(g), 2, 0.05, seed)) == 2.0);
    }
  }

  TEST_CASE("balance and random baseline on randomized instances") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Graph g = random_small_graph(seed, 300);
      const WeightedGraph w = random_weights(g, seed);
      const auto blocks = static_cast<BlockId>(2 + seed % 7);
      if (blocks > g.n()) {
        continue;
      }
      const Partition part = partition_kway(w, blocks, 0.05, seed);
      CHECK(part.n() == g.n());
      CHECK(part.is_balanced());
      CHECK(edge_cut(w, part) <= edge_cut(w, random_partition(g.n(), blocks, seed, 0.05)) + 1e-9);
    }
  }

  TEST_CASE("uniform weight scaling returns the same partition") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = generate_config_model(power_law_degree_sequence(3000, 2.0, 0, seed), seed).graph;
      const WeightedGraph w = random_weights(g, seed);
      CHECK(partition_kway(w, 16, 0.05, seed) == partition_kway(w.scaled(3.0), 16, 0.05, seed));
    }
  }

  TEST_CASE("deterministic for a fixed seed") {
    const Graph g = generate_er(5000, 20000, 3).graph;
    const WeightedGraph w = WeightedGraph::unit(g);
    CHECK(partition_kway(w, 20, 0.05, 9) == partition_kway(w, 20, 0.05, 9));
  }

  TEST_CASE("weights steer the cut on a planted graph") {
    // Two dense halves joined by many edges that carry weight 10; inside the
    // halves weight 1. The unweighted optimum cuts between the halves.
    std::mt19937_64 rng(3);
    constexpr VertexId half = 200;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::uniform_int_distribution<VertexId> pick(0, half - 1);
    for (int i = 0; i < 2000; ++i) {
      edges.emplace_back(pick(rng), pick(rng));
      edges.emplace_back(half + pick(rng), half + pick(rng));
    }
    for (int i = 0; i < 300; ++i) {
      edges.emplace_back(pick(rng), half + pick(rng));
    }
    const Graph g = Graph::from_edges(2 * half, edges);
    const WeightedGraph truth = WeightedGraph::from_edge_function(g, [](VertexId u, VertexId v) {
      return (u < half) != (v < half) ? 10.0 : 1.0;
    });
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Partition weighted = partition_kway(truth, 2, 0.05, seed);
      const Partition plain = partition_kway(WeightedGraph::unit(g), 2, 0.05, seed);
      CHECK(edge_cut(truth, weighted) <= edge_cut(truth, plain) + 1e-9);
    }
  }

  TEST_CASE("invalid block counts") {
    const Graph g = path_graph(3);
    CHECK_THROWS((void)partition_kway(WeightedGraph::unit(g), 4, 0.05, 1));
    CHECK_THROWS((void)partition_kway(WeightedGraph::unit(g), 0, 0.05, 1));
    const Partition one = partition_kway(WeightedGraph::unit(g), 1, 0.05, 1);
    CHECK(one.blocks() == 1);
    CHECK(one.block_sizes() == std::vector<VertexId>{3});
  }
}
