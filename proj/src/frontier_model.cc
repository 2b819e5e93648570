/*******************************************************************************
 * @file:   frontier_model.cc
 ******************************************************************************/
#include "bfspart/frontier_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace bfspart {

namespace {

void check_time(const double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("time " + std::to_string(t) + " outside [0, 1]");
  }
}

} // namespace

double touched_fraction_k(const double pk, const VertexId k, const double t) {
  check_time(t);
  return pk * (1.0 - std::pow(1.0 - t, static_cast<double>(k)));
}

double touched_fraction(std::span<const double> p, const double t) {
  check_time(t);
  if (t == 0.0) {
    return 0.0;
  }
  double untouched = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    untouched += p[i] * std::pow(1.0 - t, static_cast<double>(i + 1));
  }
  return 1.0 - untouched;
}

double invert_touched_fraction(std::span<const double> p, const double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("fraction " + std::to_string(y) + " outside [0, 1]");
  }
  if (y == 0.0) {
    return 0.0;
  }
  if (y == 1.0) {
    return 1.0;
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = touched_fraction(p, mid);
    if (std::abs(f - y) <= 1e-12) {
      return mid;
    }
    (f < y ? lo : hi) = mid;
    if (hi - lo <= 1e-17) {
      break;
    }
  }
  return 0.5 * (lo + hi);
}

FrontierProfile build_frontier_profile(const DegreeStats &stats, std::span<const std::uint64_t> frontier_sizes) {
  if (frontier_sizes.empty()) {
    throw std::invalid_argument("frontier profile needs at least one iteration");
  }
  const std::uint64_t total = std::accumulate(frontier_sizes.begin(), frontier_sizes.end(), std::uint64_t{0});
  if (total > stats.support_count) {
    throw std::invalid_argument(
        "frontier sizes cover " + std::to_string(total) + " vertices but only " +
        std::to_string(stats.support_count) + " are available"
    );
  }

  const VertexId k_cap = stats.k_cap;
  const auto population = static_cast<double>(stats.support_count);
  FrontierProfile profile;
  profile.k_cap = k_cap;
  profile.population = stats.support_count;
  profile.frontier_sizes.assign(frontier_sizes.begin(), frontier_sizes.end());

  const std::size_t iterations = frontier_sizes.size();
  profile.counts.assign(iterations, std::vector<double>(k_cap, 0.0));
  profile.distribution.assign(iterations, std::vector<double>(k_cap, 0.0));
  profile.usage.assign(iterations, std::vector<double>(k_cap, 0.0));

  std::vector<double> assigned(k_cap, 0.0); // sum of counts over earlier iterations
  std::vector<double> raw(k_cap);
  std::uint64_t cumulative = 0;

  for (std::size_t tau = 0; tau < iterations; ++tau) {
    cumulative += frontier_sizes[tau];
    profile.cumulative.push_back(cumulative);
    const double t = invert_touched_fraction(stats.p, static_cast<double>(cumulative) / population);
    profile.times.push_back(t);

    const double touched = touched_fraction(stats.p, t);
    double raw_sum = 0.0;
    for (VertexId k = 1; k <= k_cap; ++k) {
      const double share = touched > 0.0 ? touched_fraction_k(stats.pk(k), k, t) / touched : 0.0;
      raw[k - 1] = std::max(0.0, share * static_cast<double>(cumulative) - assigned[k - 1]);
      raw_sum += raw[k - 1];
    }

    const auto size = static_cast<double>(frontier_sizes[tau]);
    if (frontier_sizes[tau] == 0) {
      continue;
    }
    auto &dist = profile.distribution[tau];
    for (VertexId k = 1; k <= k_cap; ++k) {
      dist[k - 1] = raw_sum > 0.0 ? raw[k - 1] / raw_sum : stats.pk(k);
    }
    for (VertexId k = 1; k <= k_cap; ++k) {
      const double count = dist[k - 1] * size;
      profile.counts[tau][k - 1] = count;
      assigned[k - 1] += count;
      const double expected = stats.pk(k) * population;
      profile.usage[tau][k - 1] = expected > 0.0 ? std::clamp(count / expected, 0.0, 1.0) : 0.0;
    }
  }
  return profile;
}

ClassMatrix transition_matrix(const FrontierProfile &profile, const ClassMatrix &joint, const std::size_t tau) {
  if (tau + 1 >= profile.iterations()) {
    throw std::out_of_range(
        "transition from iteration " + std::to_string(tau) + " needs " + std::to_string(tau + 2) +
        " iterations, profile has " + std::to_string(profile.iterations())
    );
  }
  if (joint.k_cap() != profile.k_cap) {
    throw std::invalid_argument("joint matrix and profile use different degree caps");
  }
  const VertexId k_cap = profile.k_cap;
  ClassMatrix result(k_cap);
  const auto &from = profile.usage[tau];
  const auto &to = profile.usage[tau + 1];
  for (VertexId k = 1; k <= k_cap; ++k) {
    for (VertexId k2 = 1; k2 <= k_cap; ++k2) {
      result(k, k2) = from[k - 1] * joint(k, k2) * to[k2 - 1];
    }
  }
  return result;
}

WeightTable combine_directions(const ClassMatrix &transition, const std::size_t tau) {
  const VertexId k_cap = transition.k_cap();
  WeightTable table{tau, ClassMatrix(k_cap)};
  for (VertexId k = 1; k <= k_cap; ++k) {
    for (VertexId k2 = k; k2 <= k_cap; ++k2) {
      const double forward = transition(k, k2);
      const double backward = transition(k2, k);
      const double w = std::clamp(forward + backward - forward * backward, 0.0, 1.0);
      table.w(k, k2) = w;
      table.w(k2, k) = w;
    }
  }
  return table;
}

WeightTable message_weight_table(const FrontierProfile &profile, const DegreeStats &stats, const std::size_t tau) {
  return combine_directions(transition_matrix(profile, stats.joint, tau), tau);
}

WeightTable edge_message_table(const FrontierProfile &profile, const DegreeStats &stats, const std::size_t tau) {
  ClassMatrix present(stats.k_cap);
  for (VertexId k = 1; k <= stats.k_cap; ++k) {
    for (VertexId k2 = 1; k2 <= stats.k_cap; ++k2) {
      present(k, k2) = stats.joint(k, k2) > 0.0 ? 1.0 : 0.0;
    }
  }
  return combine_directions(transition_matrix(profile, present, tau), tau);
}

namespace {

void check_cut_inputs(const Graph &g, const Partition &part) {
  if (g.n() != part.n()) {
    throw std::invalid_argument(
        "partition covers " + std::to_string(part.n()) + " vertices but graph has " +
        std::to_string(g.n())
    );
  }
}

} // namespace

double expected_cut(const Graph &g, const Partition &part, const WeightTable &table) {
  check_cut_inputs(g, part);
  const VertexId k_cap = table.k_cap();
  double total = 0.0;
#pragma omp parallel for schedule(dynamic, 1024) reduction(+ : total)
  for (std::int64_t su = 0; su < static_cast<std::int64_t>(g.n()); ++su) {
    const auto u = static_cast<VertexId>(su);
    const VertexId ku = std::min(g.degree(u), k_cap);
    for (const VertexId v : g.neighbors(u)) {
      if (u < v && part.block(u) != part.block(v)) {
        total += table.w(ku, std::min(g.degree(v), k_cap));
      }
    }
  }
  return total;
}

namespace serial {

double expected_cut(const Graph &g, const Partition &part, const WeightTable &table) {
  check_cut_inputs(g, part);
  const VertexId k_cap = table.k_cap();
  double total = 0.0;
  for (const auto &[u, v] : g.edges()) {
    if (part.block(u) != part.block(v)) {
      total += table.w(std::min(g.degree(u), k_cap), std::min(g.degree(v), k_cap));
    }
  }
  return total;
}

} // namespace serial

nlohmann::json to_json(const WeightTable &table) {
  const auto w = table.w.data();
  return {{"tau", table.tau}, {"k_cap", table.k_cap()}, {"w", std::vector<double>(w.begin(), w.end())}};
}

nlohmann::json to_json(const FrontierProfile &profile) {
  return {
      {"k_cap", profile.k_cap},
      {"population", profile.population},
      {"frontier_sizes", profile.frontier_sizes},
      {"cumulative", profile.cumulative},
      {"times", profile.times},
      {"usage", profile.usage},
  };
}

} // namespace bfspart
