/*******************************************************************************
 * Static undirected graph in compressed adjacency form, edge-list ingestion
 * and synthetic generators.
 *
 * @file:   graph.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bfspart {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what);

  [[nodiscard]] std::size_t line() const { return _line; }

private:
  std::size_t _line;
};

/// Simple undirected graph. Neighbor lists are sorted ascending, contain no
/// self-loops and no duplicates, and every edge is stored in both directions.
class Graph {
public:
  Graph() = default;

  /// Builds a simple graph from an arbitrary list of vertex pairs. Self-loops
  /// and repeated pairs (in either orientation) are dropped.
  static Graph from_edges(VertexId n, std::span<const std::pair<VertexId, VertexId>> edges);

  [[nodiscard]] VertexId n() const { return static_cast<VertexId>(_offsets.empty() ? 0 : _offsets.size() - 1); }
  [[nodiscard]] EdgeIndex m() const { return _adjacency.size() / 2; }

  [[nodiscard]] VertexId degree(VertexId u) const {
    return static_cast<VertexId>(_offsets[u + 1] - _offsets[u]);
  }

  [[nodiscard]] std::span<const VertexId> neighbors(VertexId u) const {
    return {_adjacency.data() + _offsets[u], _adjacency.data() + _offsets[u + 1]};
  }

  /// Position of the first adjacency entry of `u`; edge slots of `u` are
  /// [first_edge(u), first_edge(u + 1)).
  [[nodiscard]] EdgeIndex first_edge(VertexId u) const { return _offsets[u]; }

  [[nodiscard]] std::span<const EdgeIndex> offsets() const { return _offsets; }
  [[nodiscard]] std::span<const VertexId> adjacency() const { return _adjacency; }

  [[nodiscard]] VertexId max_degree() const;

  /// Adjacency slot of v within the edge slots of u, or -1 if the edge does not exist.
  [[nodiscard]] std::int64_t find_edge(VertexId u, VertexId v) const;

  /// Every undirected edge once, as (u, v) with u < v, in adjacency order.
  [[nodiscard]] std::vector<std::pair<VertexId, VertexId>> edges() const;

private:
  std::vector<EdgeIndex> _offsets;
  std::vector<VertexId> _adjacency;
};

/// Graph read from a text edge list together with the original vertex labels
/// (labels[i] is the label of vertex i; labels are sorted ascending).
struct LoadedGraph {
  Graph graph;
  std::vector<std::int64_t> labels;
};

/// Reads whitespace-separated "u v [ignored...]" lines. Lines starting with
/// '%' or '#' are comments. Vertex ids follow ascending label order.
LoadedGraph load_edge_list(std::istream &in);
LoadedGraph load_edge_list_file(const std::string &path);

void write_edge_list(const Graph &g, std::ostream &out);

/// Connected component label per vertex; labels are 0..c-1 in order of the
/// smallest vertex of each component.
std::vector<VertexId> connected_components(const Graph &g);

/// Vertices of the largest connected component, ascending. Ties go to the
/// component containing the smaller vertex.
std::vector<VertexId> largest_component(const Graph &g);

struct GeneratedGraph {
  Graph graph;
  VertexId largest_component_size = 0;
};

/// G(n, m): exactly m distinct edges drawn uniformly at random.
GeneratedGraph generate_er(VertexId n, EdgeIndex m, std::uint64_t seed);

/// Configuration model with uniform stub pairing. Self-loops and multi-edges
/// produced by the pairing are discarded.
GeneratedGraph generate_config_model(std::span<const VertexId> degree_sequence, std::uint64_t seed);

/// Degree sequence with p_k proportional to k^-exponent on 1..max_degree
/// (max_degree == 0 means n - 1). The total is made even by redrawing the
/// last vertex's degree.
std::vector<VertexId> power_law_degree_sequence(
    VertexId n, double exponent, VertexId max_degree, std::uint64_t seed
);

} // namespace bfspart
