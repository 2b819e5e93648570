/*******************************************************************************
 * @file:   test_graph.cc
 ******************************************************************************/
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <doctest.h>

#include "bfspart/degree_stats.h"
#include "bfspart/graph.h"
#include "helpers.h"

using namespace bfspart;
using namespace bfspart::testing;

namespace {

std::set<std::pair<VertexId, VertexId>> edge_set(const Graph &g) {
  const auto e = g.edges();
  return {e.begin(), e.end()};
}

void check_simple_symmetric(const Graph &g) {
  EdgeIndex degree_sum = 0;
  for (VertexId u = 0; u < g.n(); ++u) {
    const auto nb = g.neighbors(u);
    degree_sum += nb.size();
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    for (const VertexId v : nb) {
      CHECK(v != u);
      CHECK(g.find_edge(v, u) >= 0);
    }
  }
  CHECK(degree_sum == 2 * g.m());
}

} // namespace

TEST_SUITE("graph") {
  TEST_CASE("path edge list") {
    std::istringstream in("0 1\n1 2");
    const Graph g = load_edge_list(in).graph;
    CHECK(g.n() == 3);
    CHECK(g.m() == 2);
    const auto nb = g.neighbors(1);
    CHECK(std::vector<VertexId>(nb.begin(), nb.end()) == std::vector<VertexId>{0, 2});
  }

  TEST_CASE("duplicates and self-loops are dropped") {
    std::istringstream in("0 1\n1 0\n0 0");
    const Graph g = load_edge_list(in).graph;
    CHECK(g.n() == 2);
    CHECK(g.m() == 1);
  }

  TEST_CASE("comments and extra columns") {
    std::istringstream in("% header\n# another\n10 20 1 1234567\n20 30 7\n");
    const LoadedGraph loaded = load_edge_list(in);
    CHECK(loaded.graph.n() == 3);
    CHECK(loaded.graph.m() == 2);
    CHECK(loaded.labels == std::vector<std::int64_t>{10, 20, 30});
  }

  TEST_CASE("malformed token reports its line") {
    std::istringstream in("0 1\n1 x\n");
    try {
      (void)load_edge_list(in);
      FAIL("expected a parse error");
    } catch (const ParseError &e) {
      CHECK(e.line() == 2);
    }
    std::istringstream one_token("0 1\n5\n");
    CHECK_THROWS_AS((void)load_edge_list(one_token), ParseError);
  }

  TEST_CASE("empty input is an error") {
    std::istringstream in("% only a comment\n");
    CHECK_THROWS((void)load_edge_list(in));
  }

  TEST_CASE("figure fixture") {
    const Graph g = figure1_graph();
    CHECK(g.n() == 10);
    CHECK(g.m() == 10);
    check_simple_symmetric(g);
  }

  TEST_CASE("write and reload keeps the edge set") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = random_small_graph(seed);
      std::stringstream buffer;
      write_edge_list(g, buffer);
      const LoadedGraph back = load_edge_list(buffer);
      // Isolated vertices vanish, so compare through the label map.
      std::set<std::pair<VertexId, VertexId>> relabeled;
      for (const auto &[u, v] : back.graph.edges()) {
        const auto a = static_cast<VertexId>(back.labels[u]);
        const auto b = static_cast<VertexId>(back.labels[v]);
        relabeled.emplace(std::min(a, b), std::max(a, b));
      }
      CHECK(relabeled == edge_set(g));
    }
  }

  TEST_CASE("generated graphs are simple and symmetric") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      check_simple_symmetric(random_small_graph(seed));
    }
  }

  TEST_CASE("G(n, m) saturation gives the complete graph") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Graph g = generate_er(4, 6, seed).graph;
      CHECK(g.m() == 6);
      for (VertexId u = 0; u < 4; ++u) {
        CHECK(g.degree(u) == 3);
      }
    }
    CHECK_THROWS_AS((void)generate_er(4, 7, 1), std::invalid_argument);
  }

  TEST_CASE("G(n, m) has exactly m edges and is deterministic") {
    const GeneratedGraph a = generate_er(1000, 5000, 7);
    const GeneratedGraph b = generate_er(1000, 5000, 7);
    CHECK(a.graph.m() == 5000);
    CHECK(edge_set(a.graph) == edge_set(b.graph));
    CHECK(a.largest_component_size == largest_component(a.graph).size());
    CHECK(edge_set(generate_er(1000, 5000, 8).graph) != edge_set(a.graph));
  }

  TEST_CASE("G(n, m) degree histogram against a binomial sampling oracle") {
    // Oracle: each vertex degree ~ Binomial(n - 1, 2m / (n (n - 1))).
    constexpr VertexId n = 1000;
    constexpr EdgeIndex m = 5000;
    constexpr int seeds = 30;
    constexpr VertexId bins = 30;
    std::vector<double> generated(bins, 0.0);
    std::vector<double> oracle(bins, 0.0);
    std::mt19937_64 rng(12345);
    std::binomial_distribution<int> binom(n - 1, 2.0 * m / (static_cast<double>(n) * (n - 1)));
    double mean_degree = 0.0;
    for (int s = 0; s < seeds; ++s) {
      const Graph g = generate_er(n, m, s).graph;
      for (VertexId u = 0; u < n; ++u) {
        ++generated[std::min(g.degree(u), bins - 1)];
        ++oracle[std::min<VertexId>(binom(rng), bins - 1)];
        mean_degree += g.degree(u);
      }
    }
    mean_degree /= static_cast<double>(n) * seeds;
    CHECK(mean_degree == doctest::Approx(10.0).epsilon(0.05));
    double l1 = 0.0;
    for (VertexId k = 0; k < bins; ++k) {
      l1 += std::abs(generated[k] - oracle[k]) / (static_cast<double>(n) * seeds);
    }
    CHECK(l1 < 0.03);
  }

  TEST_CASE("configuration model small cases") {
    const std::vector<VertexId> pair{1, 1};
    const Graph single = generate_config_model(pair, 3).graph;
    CHECK(single.m() == 1);
    CHECK(single.find_edge(0, 1) >= 0);

    const std::vector<VertexId> odd{1, 1, 1};
    CHECK_THROWS_AS((void)generate_config_model(odd, 1), std::invalid_argument);

    // [3, 1, 1, 1]: every pairing without a discard is the star K_{1,3}.
    const std::vector<VertexId> star{3, 1, 1, 1};
    int discard_free = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Graph g = generate_config_model(star, seed).graph;
      if (g.m() == 3) {
        ++discard_free;
        CHECK(g.degree(0) == 3);
      }
    }
    CHECK(discard_free > 0);
  }

  TEST_CASE("configuration model with a k^-2 sequence") {
    // Unbounded degrees: p_1 should approach 1 / zeta(2) = 6 / pi^2.
    const auto sequence = power_law_degree_sequence(50000, 2.0, 0, 3);
    const Graph g = generate_config_model(sequence, 3).graph;
    const double p1 = static_cast<double>(std::count_if(
                          sequence.begin(), sequence.end(), [](VertexId d) { return d == 1; }
                      )) /
                      static_cast<double>(sequence.size());
    double zeta2 = 0.0;
    for (int k = 1; k < 1000000; ++k) {
      zeta2 += 1.0 / (static_cast<double>(k) * k);
    }
    CHECK(std::abs(p1 - 1.0 / zeta2) < 0.02);
    const DegreeStats stats = degree_stats(g);
    CHECK(std::abs(stats.pk(1) - 1.0 / zeta2) < 0.02);
  }

  TEST_CASE("configuration model recovers a truncated histogram") {
    constexpr VertexId cap = 300;
    const auto sequence = power_law_degree_sequence(50000, 2.0, cap, 11);
    const Graph g = generate_config_model(sequence, 12).graph;
    std::vector<double> target(cap + 1, 0.0);
    std::vector<double> realized(cap + 1, 0.0);
    for (VertexId u = 0; u < g.n(); ++u) {
      target[sequence[u]] += 1.0 / g.n();
      realized[g.degree(u)] += 1.0 / g.n();
    }
    double l1 = 0.0;
    for (VertexId k = 0; k <= cap; ++k) {
      l1 += std::abs(target[k] - realized[k]);
    }
    CHECK(l1 < 0.05);
  }

  TEST_CASE("connected components") {
    const Graph g = graph_of(7, {{0, 1}, {1, 2}, {3, 4}, {5, 6}, {4, 5}});
    const auto label = connected_components(g);
    CHECK(label == std::vector<VertexId>{0, 0, 0, 1, 1, 1, 1});
    CHECK(largest_component(g) == std::vector<VertexId>{3, 4, 5, 6});
  }
}
