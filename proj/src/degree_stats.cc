/*******************************************************************************
 * @file:   degree_stats.cc
 ******************************************************************************/
#include "bfspart/degree_stats.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <omp.h>

namespace bfspart {

double ClassMatrix::sum() const {
  double total = 0.0;
  for (const double x : _data) {
    total += x;
  }
  return total;
}

double ClassMatrix::max() const {
  double result = 0.0;
  for (const double x : _data) {
    result = std::max(result, x);
  }
  return result;
}

bool ClassMatrix::is_symmetric() const {
  for (VertexId k = 1; k <= _k_cap; ++k) {
    for (VertexId k2 = k + 1; k2 <= _k_cap; ++k2) {
      if ((*this)(k, k2) != (*this)(k2, k)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<VertexId> degree_classes(const Graph &g, const VertexId k_cap) {
  std::vector<VertexId> cls(g.n());
  for (VertexId u = 0; u < g.n(); ++u) {
    cls[u] = std::min(g.degree(u), k_cap);
  }
  return cls;
}

ClassMatrix edge_class_counts(const Graph &g, const VertexId k_cap) {
  ClassMatrix counts(k_cap);
  for (VertexId u = 0; u < g.n(); ++u) {
    const VertexId ku = std::min(g.degree(u), k_cap);
    for (const VertexId v : g.neighbors(u)) {
      if (u < v) {
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

namespace {

struct Accumulators {
  std::vector<std::uint64_t> vertex_hist;
  std::vector<std::uint64_t> joint;
  std::uint64_t support = 0;
  std::uint64_t samples = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  std::uint64_t sum_prod = 0;

  explicit Accumulators(const VertexId k_cap)
      : vertex_hist(k_cap, 0),
        joint(static_cast<std::size_t>(k_cap) * k_cap, 0) {}

  void add_vertex(const Graph &g, const VertexId u, const VertexId k_cap) {
    const VertexId ku = std::min(g.degree(u), k_cap);
    if (ku == 0) {
      return;
    }
    ++vertex_hist[ku - 1];
    ++support;
    for (const VertexId v : g.neighbors(u)) {
      const VertexId kv = std::min(g.degree(v), k_cap);
      ++joint[static_cast<std::size_t>(ku - 1) * k_cap + (kv - 1)];
      ++samples;
      sum += ku;
      sum_sq += static_cast<std::uint64_t>(ku) * ku;
      sum_prod += static_cast<std::uint64_t>(ku) * kv;
    }
  }

  void merge(const Accumulators &other) {
    for (std::size_t i = 0; i < vertex_hist.size(); ++i) {
      vertex_hist[i] += other.vertex_hist[i];
    }
    for (std::size_t i = 0; i < joint.size(); ++i) {
      joint[i] += other.joint[i];
    }
    support += other.support;
    samples += other.samples;
    sum += other.sum;
    sum_sq += other.sum_sq;
    sum_prod += other.sum_prod;
  }
};

DegreeStats finalize(const Graph &g, const VertexId k_cap, const Accumulators &acc) {
  DegreeStats stats;
  stats.k_cap = k_cap;
  stats.vertex_count = g.n();
  stats.support_count = static_cast<VertexId>(acc.support);
  stats.edge_count = g.m();
  stats.p.assign(k_cap, 0.0);
  stats.joint = ClassMatrix(k_cap);

  if (acc.support > 0) {
    for (VertexId k = 1; k <= k_cap; ++k) {
      stats.p[k - 1] = static_cast<double>(acc.vertex_hist[k - 1]) / static_cast<double>(acc.support);
    }
  }
  if (acc.samples > 0) {
    auto q = stats.joint.data();
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = static_cast<double>(acc.joint[i]) / static_cast<double>(acc.samples);
    }

    // Both endpoint marginals are identical because every edge is sampled in
    // both orientations, so the Pearson coefficient reduces to
    // (E[xy] - E[x]^2) / (E[x^2] - E[x]^2).
    const auto n = static_cast<long double>(acc.samples);
    const long double mean = static_cast<long double>(acc.sum) / n;
    const long double var = static_cast<long double>(acc.sum_sq) / n - mean * mean;
    const long double cov = static_cast<long double>(acc.sum_prod) / n - mean * mean;
    if (var > 1e-12L * std::max(1.0L, mean * mean)) {
      stats.assortativity = std::clamp(static_cast<double>(cov / var), -1.0, 1.0);
    }
  }
  return stats;
}

} // namespace

DegreeStats degree_stats(const Graph &g, const VertexId k_cap) {
  if (k_cap < 1) {
    throw std::invalid_argument("degree cap must be at least 1");
  }
  Accumulators total(k_cap);

#pragma omp parallel
  {
    Accumulators local(k_cap);
#pragma omp for schedule(dynamic, 1024) nowait
    for (std::int64_t u = 0; u < static_cast<std::int64_t>(g.n()); ++u) {
      local.add_vertex(g, static_cast<VertexId>(u), k_cap);
    }
#pragma omp critical
    total.merge(local);
  }

  return finalize(g, k_cap, total);
}

namespace serial {

DegreeStats degree_stats(const Graph &g, const VertexId k_cap) {
  if (k_cap < 1) {
    throw std::invalid_argument("degree cap must be at least 1");
  }
  Accumulators acc(k_cap);
  for (VertexId u = 0; u < g.n(); ++u) {
    acc.add_vertex(g, u, k_cap);
  }
  return finalize(g, k_cap, acc);
}

} // namespace serial

nlohmann::json to_json(const DegreeStats &stats) {
  nlohmann::json doc;
  doc["N"] = stats.vertex_count;
  doc["N_support"] = stats.support_count;
  doc["E"] = stats.edge_count;
  doc["k_cap"] = stats.k_cap;
  doc["p_k"] = stats.p;
  const auto q = stats.joint.data();
  doc["q"] = std::vector<double>(q.begin(), q.end());
  doc["r"] = stats.assortativity;
  return doc;
}

} // namespace bfspart
