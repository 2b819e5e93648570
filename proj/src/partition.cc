/*******************************************************************************
 * @file:   partition.cc
 ******************************************************************************/
#include "bfspart/partition.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include <omp.h>

namespace bfspart {

VertexId max_block_size(const VertexId n, const BlockId blocks, const double epsilon) {
  const VertexId ideal = (n + blocks - 1) / blocks;
  // Guard against 1.05 * 20 == 20.999999...
  return static_cast<VertexId>(std::floor((1.0 + epsilon) * ideal + 1e-9));
}

Partition::Partition(std::vector<BlockId> block_of, const BlockId blocks, const double epsilon)
    : _block_of(std::move(block_of)),
      _blocks(blocks),
      _epsilon(epsilon) {
  if (blocks == 0) {
    throw std::invalid_argument("partition needs at least one block");
  }
  for (const BlockId b : _block_of) {
    if (b >= blocks) {
      throw std::out_of_range("block id " + std::to_string(b) + " >= block count");
    }
  }
}

Partition Partition::single_block(const VertexId n) {
  return {std::vector<BlockId>(n, 0), 1, 0.0};
}

std::vector<VertexId> Partition::block_sizes() const {
  std::vector<VertexId> sizes(_blocks, 0);
  for (const BlockId b : _block_of) {
    ++sizes[b];
  }
  return sizes;
}

VertexId Partition::max_block_size() const {
  return bfspart::max_block_size(n(), _blocks, _epsilon);
}

bool Partition::is_balanced() const {
  const auto sizes = block_sizes();
  return sizes.empty() || *std::max_element(sizes.begin(), sizes.end()) <= max_block_size();
}

WeightedGraph::WeightedGraph(const Graph &base, std::vector<double> slot_weights)
    : _base(&base),
      _weights(std::move(slot_weights)) {
  if (_weights.size() != base.adjacency().size()) {
    throw std::invalid_argument("weight vector does not match the adjacency size");
  }
  for (const double w : _weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("edge weights must be finite and nonnegative");
    }
  }
}

WeightedGraph WeightedGraph::unit(const Graph &base) {
  return {base, std::vector<double>(base.adjacency().size(), 1.0)};
}

WeightedGraph WeightedGraph::from_edge_function(
    const Graph &base, const std::function<double(VertexId, VertexId)> &weight
) {
  std::vector<double> w(base.adjacency().size(), 0.0);
  for (VertexId u = 0; u < base.n(); ++u) {
    const auto adj = base.neighbors(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const VertexId v = adj[i];
      if (u < v) {
        const double value = weight(u, v);
        w[base.first_edge(u) + i] = value;
        w[static_cast<EdgeIndex>(base.find_edge(v, u))] = value;
      }
    }
  }
  return {base, std::move(w)};
}

bool WeightedGraph::is_symmetric() const {
  for (VertexId u = 0; u < _base->n(); ++u) {
    const auto adj = _base->neighbors(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const auto back = _base->find_edge(adj[i], u);
      if (back < 0 || _weights[static_cast<EdgeIndex>(back)] != _weights[_base->first_edge(u) + i]) {
        return false;
      }
    }
  }
  return true;
}

WeightedGraph WeightedGraph::scaled(const double factor) const {
  std::vector<double> w(_weights);
  for (double &x : w) {
    x *= factor;
  }
  return {*_base, std::move(w)};
}

namespace {

void check_sizes(const Graph &g, const Partition &part) {
  if (g.n() != part.n()) {
    throw std::invalid_argument(
        "partition covers " + std::to_string(part.n()) + " vertices but graph has " +
        std::to_string(g.n())
    );
  }
}

} // namespace

double edge_cut(const WeightedGraph &wg, const Partition &part) {
  const Graph &g = wg.graph();
  check_sizes(g, part);
  double cut = 0.0;
#pragma omp parallel for schedule(dynamic, 1024) reduction(+ : cut)
  for (std::int64_t su = 0; su < static_cast<std::int64_t>(g.n()); ++su) {
    const auto u = static_cast<VertexId>(su);
    const auto adj = g.neighbors(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (u < adj[i] && part.block(u) != part.block(adj[i])) {
        cut += wg.weight(g.first_edge(u) + i);
      }
    }
  }
  return cut;
}

namespace serial {

double edge_cut(const WeightedGraph &wg, const Partition &part) {
  const Graph &g = wg.graph();
  check_sizes(g, part);
  double cut = 0.0;
  for (const auto &[u, v] : g.edges()) {
    if (part.block(u) != part.block(v)) {
      cut += wg.weight(static_cast<EdgeIndex>(g.find_edge(u, v)));
    }
  }
  return cut;
}

} // namespace serial

std::uint64_t comm_volume(const Graph &g, const Partition &part) {
  check_sizes(g, part);
  std::uint64_t volume = 0;
  std::vector<BlockId> seen;
  for (VertexId u = 0; u < g.n(); ++u) {
    seen.clear();
    for (const VertexId v : g.neighbors(u)) {
      if (part.block(v) != part.block(u)) {
        seen.push_back(part.block(v));
      }
    }
    std::sort(seen.begin(), seen.end());
    volume += static_cast<std::uint64_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
  }
  return volume;
}

Partition random_partition(const VertexId n, const BlockId blocks, const std::uint64_t seed, const double epsilon) {
  if (blocks == 0 || blocks > n) {
    throw std::invalid_argument(
        "cannot split " + std::to_string(n) + " vertices into " + std::to_string(blocks) + " blocks"
    );
  }
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<BlockId> block_of(n);
  for (VertexId i = 0; i < n; ++i) {
    block_of[order[i]] = i % blocks;
  }
  return {std::move(block_of), blocks, epsilon};
}

void export_partition(const Partition &part, std::ostream &out) {
  for (VertexId u = 0; u < part.n(); ++u) {
    out << u << ' ' << part.block(u) << '\n';
  }
}

namespace {

std::uint64_t parse_id(std::string_view token, const std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "malformed id '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    const std::size_t begin = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    if (pos > begin) {
      tokens.push_back(line.substr(begin, pos - begin));
    }
  }
  return tokens;
}

} // namespace

Partition import_partition(std::istream &in, const VertexId n, const PartitionFormat format, BlockId blocks) {
  constexpr BlockId kUnset = static_cast<BlockId>(-1);
  std::vector<BlockId> block_of(n, kUnset);
  std::string line;
  std::size_t line_no = 0;
  VertexId next_vertex = 0;
  BlockId max_block = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split(line);
    if (tokens.empty() || tokens.front().front() == '%' || tokens.front().front() == '#') {
      continue;
    }
    std::uint64_t vertex = 0;
    std::uint64_t block = 0;
    if (format == PartitionFormat::metis) {
      vertex = next_vertex++;
      block = parse_id(tokens[0], line_no);
    } else {
      if (tokens.size() < 2) {
        throw ParseError(line_no, "expected 'vertex block'");
      }
      vertex = parse_id(tokens[0], line_no);
      block = parse_id(tokens[1], line_no);
    }
    if (vertex >= n) {
      throw ParseError(line_no, "vertex " + std::to_string(vertex) + " out of range");
    }
    if (block >= kUnset || (blocks > 0 && block >= blocks)) {
      throw ParseError(line_no, "block " + std::to_string(block) + " out of range");
    }
    if (block_of[vertex] != kUnset) {
      throw ParseError(line_no, "vertex " + std::to_string(vertex) + " listed twice");
    }
    block_of[vertex] = static_cast<BlockId>(block);
    max_block = std::max(max_block, static_cast<BlockId>(block));
  }

  for (VertexId u = 0; u < n; ++u) {
    if (block_of[u] == kUnset) {
      throw std::invalid_argument("partition is missing vertex " + std::to_string(u));
    }
  }
  if (blocks == 0) {
    blocks = n == 0 ? 1 : max_block + 1;
  }
  return {std::move(block_of), blocks};
}

} // namespace bfspart
