/*******************************************************************************
 * Degree distribution, capped joint degree distribution and degree
 * assortativity of a graph.
 *
 * @file:   degree_stats.h
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bfspart/class_matrix.h"
#include "bfspart/graph.h"

namespace bfspart {

inline constexpr VertexId kDefaultDegreeCap = 300;

struct DegreeStats {
  VertexId k_cap = 0;
  // Vertices of the source graph, and those with degree >= 1. Isolated
  // vertices are outside the support of p_k.
  VertexId vertex_count = 0;
  VertexId support_count = 0;
  EdgeIndex edge_count = 0;

  // p[k - 1] is the fraction of non-isolated vertices in degree class k.
  std::vector<double> p;
  // Symmetric; each undirected edge contributes both ordered samples.
  ClassMatrix joint;
  double assortativity = 0.0;

  [[nodiscard]] double pk(const VertexId k) const { return p[k - 1]; }
  [[nodiscard]] double q(const VertexId k, const VertexId k2) const { return joint(k, k2); }
  [[nodiscard]] VertexId degree_class(const VertexId degree) const { return std::min(degree, k_cap); }
};

/// Degree statistics with all degrees >= k_cap pooled into class k_cap.
/// Parallel over vertices; integer accumulation keeps results independent of
/// the thread count.
DegreeStats degree_stats(const Graph &g, VertexId k_cap = kDefaultDegreeCap);

/// Capped class of every vertex (0 for isolated vertices).
std::vector<VertexId> degree_classes(const Graph &g, VertexId k_cap);

/// Number of undirected edges per unordered class pair, stored symmetrically.
ClassMatrix edge_class_counts(const Graph &g, VertexId k_cap);

namespace serial {
DegreeStats degree_stats(const Graph &g, VertexId k_cap = kDefaultDegreeCap);
} // namespace serial

/// {"N", "E", "k_cap", "p_k", "q" (row-major), "r"}
nlohmann::json to_json(const DegreeStats &stats);

} // namespace bfspart
