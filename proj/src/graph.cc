/*******************************************************************************
 * @file:   graph.cc
 ******************************************************************************/
#include "bfspart/graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace bfspart {

ParseError::ParseError(const std::size_t line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      _line(line) {}

Graph Graph::from_edges(const VertexId n, std::span<const std::pair<VertexId, VertexId>> edges) {
  Graph g;
  std::vector<EdgeIndex> degree(n + 1, 0);
  for (const auto &[u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::out_of_range("edge endpoint out of range");
    }
    if (u != v) {
      ++degree[u];
      ++degree[v];
    }
  }

  std::vector<EdgeIndex> offsets(n + 1, 0);
  for (VertexId u = 0; u < n; ++u) {
    offsets[u + 1] = offsets[u] + degree[u];
  }
  std::vector<VertexId> adjacency(offsets[n]);
  std::vector<EdgeIndex> fill(offsets.begin(), offsets.end() - 1);
  for (const auto &[u, v] : edges) {
    if (u != v) {
      adjacency[fill[u]++] = v;
      adjacency[fill[v]++] = u;
    }
  }

  // Sort and deduplicate each neighbor list, then compact.
  g._offsets.assign(n + 1, 0);
  EdgeIndex write = 0;
  for (VertexId u = 0; u < n; ++u) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[u]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) {
      adjacency[write++] = *it;
    }
    g._offsets[u + 1] = write;
  }
  adjacency.resize(write);
  adjacency.shrink_to_fit();
  g._adjacency = std::move(adjacency);
  return g;
}

VertexId Graph::max_degree() const {
  VertexId result = 0;
  for (VertexId u = 0; u < n(); ++u) {
    result = std::max(result, degree(u));
  }
  return result;
}

std::int64_t Graph::find_edge(const VertexId u, const VertexId v) const {
  const auto adj = neighbors(u);
  const auto it = std::lower_bound(adj.begin(), adj.end(), v);
  if (it == adj.end() || *it != v) {
    return -1;
  }
  return static_cast<std::int64_t>(_offsets[u] + static_cast<EdgeIndex>(it - adj.begin()));
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> result;
  result.reserve(m());
  for (VertexId u = 0; u < n(); ++u) {
    for (const VertexId v : neighbors(u)) {
      if (u < v) {
        result.emplace_back(u, v);
      }
    }
  }
  return result;
}

namespace {

bool is_space(const char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Returns the next whitespace-delimited token starting at `pos`, or an empty
// view at end of line.
std::string_view next_token(std::string_view line, std::size_t &pos) {
  while (pos < line.size() && is_space(line[pos])) {
    ++pos;
  }
  const std::size_t begin = pos;
  while (pos < line.size() && !is_space(line[pos])) {
    ++pos;
  }
  return line.substr(begin, pos - begin);
}

std::int64_t parse_vertex(std::string_view token, const std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "malformed vertex token '" + std::string(token) + "'");
  }
  return value;
}

} // namespace

LoadedGraph load_edge_list(std::istream &in) {
  LoadedGraph result;
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = 0;
    const std::string_view view(line);
    const std::string_view first = next_token(view, pos);
    if (first.empty() || first.front() == '%' || first.front() == '#') {
      continue;
    }
    const std::string_view second = next_token(view, pos);
    if (second.empty()) {
      throw ParseError(line_no, "expected two vertex ids");
    }
    raw.emplace_back(parse_vertex(first, line_no), parse_vertex(second, line_no));
  }
  if (raw.empty()) {
    throw ParseError(line_no, "edge list contains no edges");
  }

  // Ids follow label order, so labels 0..n-1 map to themselves.
  for (const auto &[u, v] : raw) {
    result.labels.push_back(u);
    result.labels.push_back(v);
  }
  std::sort(result.labels.begin(), result.labels.end());
  result.labels.erase(std::unique(result.labels.begin(), result.labels.end()), result.labels.end());
  const auto id_of = [&](const std::int64_t label) {
    return static_cast<VertexId>(std::lower_bound(result.labels.begin(), result.labels.end(), label) - result.labels.begin());
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw.size());
  for (const auto &[u, v] : raw) {
    edges.emplace_back(id_of(u), id_of(v));
  }
  result.graph = Graph::from_edges(static_cast<VertexId>(result.labels.size()), edges);
  return result;
}

LoadedGraph load_edge_list_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open edge list '" + path + "'");
  }
  return load_edge_list(in);
}

void write_edge_list(const Graph &g, std::ostream &out) {
  for (VertexId u = 0; u < g.n(); ++u) {
    for (const VertexId v : g.neighbors(u)) {
      if (u < v) {
        out << u << ' ' << v << '\n';
      }
    }
  }
}

std::vector<VertexId> connected_components(const Graph &g) {
  constexpr VertexId kUnset = static_cast<VertexId>(-1);
  std::vector<VertexId> label(g.n(), kUnset);
  std::vector<VertexId> stack;
  VertexId next = 0;
  for (VertexId s = 0; s < g.n(); ++s) {
    if (label[s] != kUnset) {
      continue;
    }
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (const VertexId v : g.neighbors(u)) {
        if (label[v] == kUnset) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<VertexId> largest_component(const Graph &g) {
  if (g.n() == 0) {
    return {};
  }
  const auto label = connected_components(g);
  const VertexId count = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<VertexId> size(count, 0);
  for (const VertexId l : label) {
    ++size[l];
  }
  const auto best = static_cast<VertexId>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<VertexId> members;
  members.reserve(size[best]);
  for (VertexId u = 0; u < g.n(); ++u) {
    if (label[u] == best) {
      members.push_back(u);
    }
  }
  return members;
}

GeneratedGraph generate_er(const VertexId n, const EdgeIndex m, const std::uint64_t seed) {
  const EdgeIndex max_edges = static_cast<EdgeIndex>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (m > max_edges) {
    throw std::invalid_argument(
        "cannot place " + std::to_string(m) + " edges on " + std::to_string(n) + " vertices"
    );
  }

  std::mt19937_64 rng(seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);

  if (2 * m > max_edges) {
    // Dense request: enumerate all pairs and select a random subset.
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        edges.emplace_back(u, v);
      }
    }
    for (EdgeIndex i = 0; i < m; ++i) {
      std::uniform_int_distribution<EdgeIndex> pick(i, edges.size() - 1);
      std::swap(edges[i], edges[pick(rng)]);
    }
    edges.resize(m);
  } else {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    while (edges.size() < m) {
      VertexId u = pick(rng);
      VertexId v = pick(rng);
      if (u == v) {
        continue;
      }
      if (u > v) {
        std::swap(u, v);
      }
      if (seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) {
        edges.emplace_back(u, v);
      }
    }
  }

  GeneratedGraph result;
  result.graph = Graph::from_edges(n, edges);
  result.largest_component_size = static_cast<VertexId>(largest_component(result.graph).size());
  return result;
}

GeneratedGraph generate_config_model(std::span<const VertexId> degree_sequence, const std::uint64_t seed) {
  const EdgeIndex stubs_total =
      std::accumulate(degree_sequence.begin(), degree_sequence.end(), EdgeIndex{0});
  if (stubs_total % 2 != 0) {
    throw std::invalid_argument("degree sequence has an odd number of stubs");
  }

  std::vector<VertexId> stubs;
  stubs.reserve(stubs_total);
  for (VertexId u = 0; u < degree_sequence.size(); ++u) {
    stubs.insert(stubs.end(), degree_sequence[u], u);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(stubs.begin(), stubs.end(), rng);

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    edges.emplace_back(stubs[i], stubs[i + 1]);
  }

  GeneratedGraph result;
  result.graph = Graph::from_edges(static_cast<VertexId>(degree_sequence.size()), edges);
  result.largest_component_size = static_cast<VertexId>(largest_component(result.graph).size());
  return result;
}

std::vector<VertexId> power_law_degree_sequence(
    const VertexId n, const double exponent, VertexId max_degree, const std::uint64_t seed
) {
  if (n == 0) {
    return {};
  }
  if (max_degree == 0 || max_degree >= n) {
    max_degree = std::max<VertexId>(1, n - 1);
  }
  std::vector<double> weights(max_degree);
  for (VertexId k = 1; k <= max_degree; ++k) {
    weights[k - 1] = std::pow(static_cast<double>(k), -exponent);
  }
  std::discrete_distribution<VertexId> draw(weights.begin(), weights.end());
  std::mt19937_64 rng(seed);

  std::vector<VertexId> degrees(n);
  EdgeIndex total = 0;
  for (auto &d : degrees) {
    d = draw(rng) + 1;
    total += d;
  }
  if (max_degree == 1 && total % 2 != 0) {
    throw std::invalid_argument("an odd number of degree-1 vertices cannot be paired");
  }
  while (total % 2 != 0) {
    total -= degrees.back();
    degrees.back() = draw(rng) + 1;
    total += degrees.back();
  }
  return degrees;
}

} // namespace bfspart
