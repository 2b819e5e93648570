/*******************************************************************************
 * @file:   test_frontier_model.cc
 ******************************************************************************/
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "bfspart/degree_stats.h"
#include "bfspart/frontier_model.h"
#include "helpers.h"

using namespace bfspart;
using namespace bfspart::testing;

namespace {

std::vector<double> power_law(const VertexId k_max, const double exponent = 2.0) {
  std::vector<double> p(k_max);
  for (VertexId k = 1; k <= k_max; ++k) {
    p[k - 1] = std::pow(static_cast<double>(k), -exponent);
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double &x : p) {
    x /= total;
  }
  return p;
}

/// Statistics without a graph: degree distribution p over `population`
/// vertices and a uniform joint matrix.
DegreeStats synthetic_stats(std::vector<double> p, const VertexId population) {
  DegreeStats s;
  s.k_cap = static_cast<VertexId>(p.size());
  s.vertex_count = population;
  s.support_count = population;
  s.p = std::move(p);
  s.joint = ClassMatrix(s.k_cap, 1.0 / (static_cast<double>(s.k_cap) * s.k_cap));
  return s;
}

/// Frontier sizes whose cumulative coverage is f(t) at each of `times`.
std::vector<std::uint64_t> sizes_for_times(const DegreeStats &s, const std::vector<double> &times) {
  std::vector<std::uint64_t> sizes;
  std::uint64_t previous = 0;
  for (const double t : times) {
    const auto cumulative =
        static_cast<std::uint64_t>(std::llround(touched_fraction(s.p, t) * s.support_count));
    sizes.push_back(cumulative - previous);
    previous = cumulative;
  }
  return sizes;
}

std::vector<double> random_distribution(std::mt19937_64 &rng, const std::size_t k_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(k_max);
  for (double &x : p) {
    x = u(rng);
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double &x : p) {
    x /= total;
  }
  return p;
}

} // namespace

TEST_SUITE("frontier_model") {
  TEST_CASE("per-class touched fraction") {
    CHECK(touched_fraction_k(0.3, 4, 0.0) == 0.0);
    CHECK(touched_fraction_k(0.3, 4, 1.0) == doctest::Approx(0.3));
    const double p1 = 6.0 / (M_PI * M_PI);
    CHECK(std::abs(touched_fraction_k(p1, 1, 0.19) - 0.1155) < 1e-4);
    CHECK_THROWS((void)touched_fraction_k(0.3, 1, 1.5));
    CHECK_THROWS((void)touched_fraction_k(0.3, 1, -0.1));
  }

  TEST_CASE("touched fraction endpoints and brute-force sum") {
    const auto p = power_law(300);
    CHECK(touched_fraction(p, 0.0) == 0.0);
    CHECK(touched_fraction(p, 1.0) == doctest::Approx(1.0));
    double untouched = 0.0;
    for (VertexId k = 1; k <= 300; ++k) {
      untouched += p[k - 1] * std::pow(0.5, k);
    }
    CHECK(touched_fraction(p, 0.5) == doctest::Approx(1.0 - untouched).epsilon(1e-14));
    // Summing the per-class terms gives the same value.
    double by_class = 0.0;
    for (VertexId k = 1; k <= 300; ++k) {
      by_class += touched_fraction_k(p[k - 1], k, 0.5);
    }
    CHECK(by_class == doctest::Approx(touched_fraction(p, 0.5)).epsilon(1e-12));
  }

  TEST_CASE("touched fraction is monotone") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = random_distribution(rng, 1 + trial);
      double previous = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double f = touched_fraction(p, i / 200.0);
        CHECK(f >= previous - 1e-15);
        previous = f;
      }
    }
  }

  TEST_CASE("inversion round trip") {
    const auto p = power_law(300);
    CHECK(invert_touched_fraction(p, 0.0) == 0.0);
    CHECK(invert_touched_fraction(p, 1.0) == 1.0);
    CHECK(invert_touched_fraction(p, touched_fraction(p, 0.3)) == doctest::Approx(0.3).epsilon(1e-8));
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      const auto q = random_distribution(rng, 50);
      for (int i = 1; i <= 99; ++i) {
        const double t = i / 100.0;
        CHECK(std::abs(invert_touched_fraction(q, touched_fraction(q, t)) - t) <= 1e-8);
      }
    }
  }

  TEST_CASE("degree-1 share of touched mass at the third reference time") {
    const auto p = power_law(300);
    const double share = touched_fraction_k(p[0], 1, 0.19) / touched_fraction(p, 0.19);
    CHECK(std::abs(share - 0.25) <= 0.10);
  }

  TEST_CASE("single iteration covering everything") {
    const DegreeStats s = degree_stats(random_small_graph(1, 200), 300);
    const std::vector<std::uint64_t> sizes{s.support_count};
    const FrontierProfile profile = build_frontier_profile(s, sizes);
    CHECK(profile.times.back() == 1.0);
    for (VertexId k = 1; k <= s.k_cap; ++k) {
      CHECK(profile.distribution[0][k - 1] == doctest::Approx(s.pk(k)).epsilon(1e-9));
      CHECK(profile.usage_of(0, k) == doctest::Approx(s.pk(k) > 0.0 ? 1.0 : 0.0).epsilon(1e-9));
    }
  }

  TEST_CASE("two-iteration toy against hand evaluation") {
    // p_1 = p_2 = 1/2, N = 4, sizes [2, 2]. f(t) = 1/2 means s + s^2 = 1
    // with s = 1 - t, so t_0 = 1 - (sqrt 5 - 1) / 2.
    const DegreeStats s = synthetic_stats({0.5, 0.5}, 4);
    const std::vector<std::uint64_t> sizes{2, 2};
    const FrontierProfile profile = build_frontier_profile(s, sizes);
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const double t0 = 1.0 - golden;
    REQUIRE(profile.times.size() == 2);
    CHECK(profile.times[0] == doctest::Approx(t0).epsilon(1e-9));
    CHECK(profile.times[1] == 1.0);
    CHECK(profile.cumulative == std::vector<std::uint64_t>{2, 4});
    // Touched mass at t_0: class 1 has (1 - s)/2, class 2 has (1 - s^2)/2.
    const double c1 = 2.0 * t0;
    const double c2 = 2.0 - c1;
    CHECK(profile.counts[0][0] == doctest::Approx(c1).epsilon(1e-9));
    CHECK(profile.counts[0][1] == doctest::Approx(c2).epsilon(1e-9));
    CHECK(profile.counts[1][0] == doctest::Approx(2.0 - c1).epsilon(1e-9));
    CHECK(profile.counts[1][1] == doctest::Approx(2.0 - c2).epsilon(1e-9));
    CHECK(profile.counts[0][0] == doctest::Approx(0.763932).epsilon(1e-6));
    CHECK(profile.distribution[0][0] == doctest::Approx(c1 / 2.0).epsilon(1e-9));
    CHECK(profile.usage_of(0, 1) == doctest::Approx(0.381966).epsilon(1e-6));
    CHECK(profile.usage_of(0, 2) == doctest::Approx(0.618034).epsilon(1e-6));
    CHECK(profile.usage_of(1, 1) == doctest::Approx(0.618034).epsilon(1e-6));
    CHECK(profile.usage_of(1, 2) == doctest::Approx(0.381966).epsilon(1e-6));
  }

  TEST_CASE("rows sum to one and usage is conserved on full coverage") {
    for (std::uint64_t seed = 1; seed < 12; seed += 2) {
      const Graph g = random_small_graph(seed, 200);
      const DegreeStats s = degree_stats(g, 300);
      // Any split of the support into frontiers covering it completely.
      std::vector<std::uint64_t> sizes{1};
      std::uint64_t left = s.support_count - 1;
      std::mt19937_64 rng(seed);
      while (left > 0) {
        const std::uint64_t take = std::min<std::uint64_t>(left, 1 + rng() % (s.support_count / 3 + 1));
        sizes.push_back(take);
        left -= take;
      }
      const FrontierProfile profile = build_frontier_profile(s, sizes);
      for (std::size_t tau = 0; tau < sizes.size(); ++tau) {
        const auto &row = profile.distribution[tau];
        CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-6));
      }
      for (VertexId k = 1; k <= s.k_cap; ++k) {
        double total = 0.0;
        double usage = 0.0;
        for (std::size_t tau = 0; tau < sizes.size(); ++tau) {
          total += profile.counts[tau][k - 1];
          usage += profile.usage_of(tau, k);
        }
        CHECK(std::abs(total - s.pk(k) * s.support_count) <= 1.0);
        CHECK(usage <= 1.0 + 1e-6);
      }
      for (std::size_t tau = 1; tau < profile.times.size(); ++tau) {
        CHECK(profile.times[tau] > profile.times[tau - 1]);
      }
    }
  }

  TEST_CASE("oversized profile is rejected") {
    const DegreeStats s = synthetic_stats({0.5, 0.5}, 4);
    const std::vector<std::uint64_t> sizes{3, 2};
    CHECK_THROWS((void)build_frontier_profile(s, sizes));
    CHECK_THROWS((void)build_frontier_profile(s, std::vector<std::uint64_t>{}));
  }

  TEST_CASE("reference times reproduce the degree bias of the usage curves") {
    const std::vector<double> times{0.0006, 0.02, 0.19, 0.53, 0.81, 0.93, 0.97, 0.99, 1.0};
    const DegreeStats s = synthetic_stats(power_law(300), 1000000);
    const FrontierProfile profile = build_frontier_profile(s, sizes_for_times(s, times));
    for (std::size_t i = 0; i < times.size(); ++i) {
      CHECK(std::abs(profile.times[i] - times[i]) <= 0.02);
    }
    // The usage curve labelled iteration 4 is the one ending at t = 0.19
    // (index 2): degree-1 vertices rarely used, a bump near degree 10. The
    // next curve has much higher degree-1 usage.
    const auto &curve = profile.usage[2];
    const auto peak = static_cast<VertexId>(std::max_element(curve.begin(), curve.end()) - curve.begin()) + 1;
    CHECK(std::abs(profile.usage_of(2, 1) - 0.15) <= 0.1);
    CHECK(std::abs(profile.usage_of(3, 1) - 0.4) <= 0.1);
    CHECK(peak >= 5);
    CHECK(peak <= 20);
    CHECK(profile.usage_of(3, 10) < profile.usage_of(2, 10));
    MESSAGE("usage curve peaks at degree " << peak << " with height " << curve[peak - 1]);
  }

  TEST_CASE("transition matrix") {
    FrontierProfile profile;
    profile.k_cap = 2;
    profile.frontier_sizes = {1, 1};
    profile.usage = {{1.0, 0.0}, {0.0, 1.0}};
    const ClassMatrix q(2, 0.25);
    const ClassMatrix p = transition_matrix(profile, q, 0);
    CHECK(p(1, 2) == 0.25);
    CHECK(p(1, 1) == 0.0);
    CHECK(p(2, 1) == 0.0);
    CHECK(p(2, 2) == 0.0);
    CHECK_THROWS_AS((void)transition_matrix(profile, q, 1), std::out_of_range);

    profile.usage = {{0.0, 0.0}, {0.3, 0.9}};
    CHECK(transition_matrix(profile, q, 0).sum() == 0.0);
    profile.usage = {{1.0, 1.0}, {1.0, 1.0}};
    ClassMatrix joint(2);
    joint(1, 1) = 0.1;
    joint(1, 2) = 0.2;
    joint(2, 1) = 0.2;
    joint(2, 2) = 0.5;
    const ClassMatrix same = transition_matrix(profile, joint, 0);
    CHECK(std::equal(same.data().begin(), same.data().end(), joint.data().begin()));
  }

  TEST_CASE("combining directions") {
    ClassMatrix p(2);
    CHECK(combine_directions(p, 0).w.sum() == 0.0);
    p(1, 2) = 0.3;
    p(2, 1) = 0.2;
    const WeightTable t = combine_directions(p, 4);
    CHECK(t.tau == 4);
    CHECK(t.w(1, 2) == doctest::Approx(0.44));
    CHECK(t.w(2, 1) == doctest::Approx(0.44));
    ClassMatrix full(2, 1.0);
    const WeightTable saturated = combine_directions(full, 0);
    CHECK(saturated.w(1, 2) == 1.0);
    CHECK(saturated.w(2, 2) == 1.0);
  }

  TEST_CASE("weight tables are symmetric and bounded") {
    for (std::uint64_t seed = 1; seed < 8; seed += 2) {
      const Graph g = random_small_graph(seed, 200);
      const DegreeStats s = degree_stats(g, 300);
      const std::uint64_t a = s.support_count / 4;
      const std::vector<std::uint64_t> sizes{1, a, a, s.support_count - 1 - 2 * a};
      const FrontierProfile profile = build_frontier_profile(s, sizes);
      for (std::size_t tau = 0; tau + 1 < sizes.size(); ++tau) {
        for (const WeightTable &t : {message_weight_table(profile, s, tau), edge_message_table(profile, s, tau)}) {
          CHECK(t.w.is_symmetric());
          for (const double w : t.w.data()) {
            CHECK(w >= 0.0);
            CHECK(w <= 1.0);
          }
        }
      }
    }
  }

  TEST_CASE("expected cut") {
    const Graph g = figure1_graph();
    const Partition part = figure1_partition();
    const WeightTable ones{0, ClassMatrix(300, 1.0)};
    CHECK(expected_cut(g, part, ones) == doctest::Approx(edge_cut(WeightedGraph::unit(g), part)));
    CHECK(expected_cut(g, Partition::single_block(10), ones) == 0.0);
    CHECK_THROWS((void)expected_cut(g, Partition::single_block(9), ones));

    const Graph h = random_small_graph(3, 200);
    const DegreeStats s = degree_stats(h, 300);
    const std::uint64_t a = s.support_count / 3;
    const std::vector<std::uint64_t> sizes{1, a, s.support_count - 1 - a};
    const WeightTable table = edge_message_table(build_frontier_profile(s, sizes), s, 1);
    const Partition part2 = random_partition(h.n(), 5, 2);
    CHECK(expected_cut(h, part2, table) == doctest::Approx(serial::expected_cut(h, part2, table)));
  }

  TEST_CASE("json exports") {
    const DegreeStats s = synthetic_stats({0.5, 0.5}, 4);
    const FrontierProfile profile = build_frontier_profile(s, std::vector<std::uint64_t>{2, 2});
    const nlohmann::json j = to_json(profile);
    CHECK(j["frontier_sizes"].size() == 2);
    CHECK(j["times"].size() == 2);
    const nlohmann::json w = to_json(message_weight_table(profile, s, 0));
    CHECK(w["k_cap"] == 2);
    CHECK(w["w"].size() == 4);
  }
}
