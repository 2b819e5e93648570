/*******************************************************************************
 * Multilevel k-way partitioner.
 *
 * Coarsening contracts heavy-edge matchings (leaves that hang off the same
 * vertex are paired by a second two-hop pass) until the graph is small.
 * The coarsest graph is partitioned by growing all blocks simultaneously from
 * mutually distant seeds, and the partition is projected back level by level
 * with a rebalancing step followed by k-way FM refinement.
 *
 * @file:   kway_partitioner.cc
 ******************************************************************************/
#include "bfspart/kway_partitioner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace bfspart {

namespace {

constexpr double kGainTolerance = 1e-12;
// Refinement scans whole blocks for rebalancing moves only below this size.
constexpr VertexId kRemoteMoveLimit = 4096;
constexpr VertexId kInvalid = std::numeric_limits<VertexId>::max();
constexpr BlockId kNoBlock = std::numeric_limits<BlockId>::max();

using VertexWeight = std::int64_t;

struct LevelGraph {
  std::vector<EdgeIndex> xadj;
  std::vector<VertexId> adj;
  std::vector<double> ew;
  std::vector<VertexWeight> vw;
  VertexWeight total_weight = 0;
  VertexWeight max_vertex_weight = 1;

  [[nodiscard]] VertexId n() const { return static_cast<VertexId>(vw.size()); }
};

LevelGraph from_weighted(const WeightedGraph &wg) {
  const Graph &g = wg.graph();
  LevelGraph level;
  level.xadj.assign(g.offsets().begin(), g.offsets().end());
  level.adj.assign(g.adjacency().begin(), g.adjacency().end());

  // Normalizing by the largest weight makes the absolute gain tolerance
  // meaningful regardless of the caller's scale.
  const auto weights = wg.slot_weights();
  const double max_w = weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
  level.ew.resize(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    level.ew[i] = max_w > 0.0 ? weights[i] / max_w : 0.0;
  }
  level.vw.assign(g.n(), 1);
  level.total_weight = g.n();
  return level;
}

struct CoarseLevel {
  LevelGraph graph;
  std::vector<VertexId> fine_to_coarse;
};

std::vector<VertexId> random_order(const VertexId n, std::mt19937_64 &rng) {
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

std::vector<VertexId>
heavy_edge_matching(const LevelGraph &g, const VertexWeight max_vw, std::mt19937_64 &rng) {
  const VertexId n = g.n();
  std::vector<VertexId> mate(n, kInvalid);
  const auto order = random_order(n, rng);

  for (const VertexId u : order) {
    if (mate[u] != kInvalid) {
      continue;
    }
    VertexId best = kInvalid;
    double best_w = -1.0;
    for (EdgeIndex e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const VertexId v = g.adj[e];
      if (mate[v] != kInvalid || g.vw[u] + g.vw[v] > max_vw) {
        continue;
      }
      if (g.ew[e] > best_w || (g.ew[e] == best_w && v < best)) {
        best = v;
        best_w = g.ew[e];
      }
    }
    if (best != kInvalid) {
      mate[u] = best;
      mate[best] = u;
    }
  }

  // Two-hop pass: unmatched low-degree vertices that share their heaviest
  // neighbor are merged with each other. Power-law graphs otherwise stall
  // with many leaves attached to a few hubs.
  std::unordered_map<VertexId, VertexId> waiting;
  for (const VertexId u : order) {
    const EdgeIndex degree = g.xadj[u + 1] - g.xadj[u];
    if (mate[u] != kInvalid || degree == 0 || degree > 2) {
      continue;
    }
    VertexId anchor = kInvalid;
    double anchor_w = -1.0;
    for (EdgeIndex e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const VertexId v = g.adj[e];
      if (g.ew[e] > anchor_w || (g.ew[e] == anchor_w && v < anchor)) {
        anchor = v;
        anchor_w = g.ew[e];
      }
    }
    auto it = waiting.find(anchor);
    if (it == waiting.end()) {
      waiting.emplace(anchor, u);
    } else if (g.vw[u] + g.vw[it->second] <= max_vw) {
      mate[u] = it->second;
      mate[it->second] = u;
      waiting.erase(it);
    } else {
      it->second = u;
    }
  }

  for (VertexId u = 0; u < n; ++u) {
    if (mate[u] == kInvalid) {
      mate[u] = u;
    }
  }
  return mate;
}

CoarseLevel contract(const LevelGraph &g, const std::vector<VertexId> &mate) {
  const VertexId n = g.n();
  CoarseLevel level;
  level.fine_to_coarse.assign(n, kInvalid);
  std::vector<VertexId> members;
  members.reserve(n);
  std::vector<EdgeIndex> member_start;

  VertexId coarse_n = 0;
  for (VertexId u = 0; u < n; ++u) {
    if (level.fine_to_coarse[u] != kInvalid) {
      continue;
    }
    member_start.push_back(members.size());
    level.fine_to_coarse[u] = coarse_n;
    members.push_back(u);
    if (mate[u] != u) {
      level.fine_to_coarse[mate[u]] = coarse_n;
      members.push_back(mate[u]);
    }
    ++coarse_n;
  }
  member_start.push_back(members.size());

  LevelGraph &c = level.graph;
  c.xadj.assign(coarse_n + 1, 0);
  c.vw.assign(coarse_n, 0);
  c.adj.reserve(g.adj.size() / 2);
  c.ew.reserve(g.adj.size() / 2);

  std::vector<EdgeIndex> slot_of(coarse_n, std::numeric_limits<EdgeIndex>::max());
  for (VertexId cu = 0; cu < coarse_n; ++cu) {
    const EdgeIndex row_begin = c.adj.size();
    for (EdgeIndex i = member_start[cu]; i < member_start[cu + 1]; ++i) {
      const VertexId u = members[i];
      c.vw[cu] += g.vw[u];
      for (EdgeIndex e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
        const VertexId cv = level.fine_to_coarse[g.adj[e]];
        if (cv == cu) {
          continue;
        }
        if (slot_of[cv] == std::numeric_limits<EdgeIndex>::max() || slot_of[cv] < row_begin) {
          slot_of[cv] = c.adj.size();
          c.adj.push_back(cv);
          c.ew.push_back(g.ew[e]);
        } else {
          c.ew[slot_of[cv]] += g.ew[e];
        }
      }
    }
    c.xadj[cu + 1] = c.adj.size();
  }
  c.total_weight = g.total_weight;
  c.max_vertex_weight = *std::max_element(c.vw.begin(), c.vw.end());
  return level;
}

double level_cut(const LevelGraph &g, const std::vector<BlockId> &part) {
  double cut = 0.0;
  for (VertexId u = 0; u < g.n(); ++u) {
    for (EdgeIndex e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      if (u < g.adj[e] && part[u] != part[g.adj[e]]) {
        cut += g.ew[e];
      }
    }
  }
  return cut;
}

// Seeds are picked one at a time, each maximizing the hop distance to the
// seeds chosen so far (unreachable vertices first); `order` breaks ties.
std::vector<VertexId>
spread_seeds(const LevelGraph &g, const BlockId blocks, const std::vector<VertexId> &order) {
  const VertexId n = g.n();
  std::vector<VertexId> rank(n);
  for (VertexId i = 0; i < n; ++i) {
    rank[order[i]] = i;
  }
  std::vector<VertexId> dist(n, kInvalid);
  std::vector<VertexId> seeds;
  std::vector<VertexId> queue;
  VertexId next = order.front();

  while (seeds.size() < blocks) {
    seeds.push_back(next);
    dist[next] = 0;
    queue.assign(1, next);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId u = queue[head];
      for (EdgeIndex e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
        const VertexId v = g.adj[e];
        if (dist[v] > dist[u] + 1) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    VertexId best = kInvalid;
    for (VertexId u = 0; u < n; ++u) {
      if (dist[u] == 0) {
        continue;
      }
      if (best == kInvalid || dist[u] > dist[best] || (dist[u] == dist[best] && rank[u] < rank[best])) {
        best = u;
      }
    }
    if (best == kInvalid) {
      break;
    }
    next = best;
  }
  return seeds;
}

struct Candidate {
  double gain;
  VertexId vertex;
};

// Max-heap on gain, lower vertex id first among equal gains.
struct CandidateOrder {
  bool operator()(const Candidate &a, const Candidate &b) const {
    return a.gain < b.gain || (a.gain == b.gain && a.vertex > b.vertex);
  }
};

using CandidateQueue = std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder>;

std::vector<BlockId> grow_initial_partition(const LevelGraph &g, const BlockId blocks, std::mt19937_64 &rng) {
  const VertexId n = g.n();
  const auto order = random_order(n, rng);
  std::vector<BlockId> part(n, kNoBlock);
  std::vector<VertexWeight> block_weight(blocks, 0);
  std::vector<std::unordered_map<VertexId, double>> conn(blocks);
  std::vector<CandidateQueue> frontier(blocks);
  VertexId assigned = 0;

  auto assign = [&](const VertexId u, const BlockId b) {
    part[u] = b;
    block_weight[b] += g.vw[u];
    ++assigned;
    for (EdgeIndex e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const VertexId v = g.adj[e];
      if (part[v] == kNoBlock) {
        const double c = (conn[b][v] += g.ew[e]);
        frontier[b].push({c, v});
      }
    }
  };

  const auto seeds = spread_seeds(g, blocks, order);
  for (BlockId b = 0; b < seeds.size(); ++b) {
    assign(seeds[b], b);
  }

  std::size_t cursor = 0;
  while (assigned < n) {
    BlockId lightest = 0;
    for (BlockId b = 1; b < blocks; ++b) {
      if (block_weight[b] < block_weight[lightest]) {
        lightest = b;
      }
    }
    auto &queue = frontier[lightest];
    VertexId pick = kInvalid;
    while (!queue.empty()) {
      const Candidate top = queue.top();
      queue.pop();
      if (part[top.vertex] == kNoBlock && conn[lightest][top.vertex] == top.gain) {
        pick = top.vertex;
        break;
      }
    }
    if (pick == kInvalid) {
      // Region exhausted: continue the block from a fresh unassigned vertex.
      while (part[order[cursor]] != kNoBlock) {
        ++cursor;
      }
      pick = order[cursor];
    }
    assign(pick, lightest);
  }
  return part;
}

// Per-vertex lists of (block, connection weight, neighbor count) over the
// blocks of its neighbors, kept exact under single-vertex moves.
class KWayRefiner {
public:
  KWayRefiner(const LevelGraph &g, std::vector<BlockId> &part, const BlockId blocks, const VertexWeight cap)
      : _g(g),
        _part(part),
        _blocks(blocks),
        _cap(cap),
        _remote_moves(g.n() <= kRemoteMoveLimit),
        _block_weight(blocks, 0) {
    for (VertexId u = 0; u < g.n(); ++u) {
      _block_weight[part[u]] += g.vw[u];
    }
    build_connectivity();
  }

  [[nodiscard]] bool balanced() const { return _overweight_blocks == 0; }

  void rebalance() {
    for (BlockId b = 0; b < _blocks; ++b) {
      if (_block_weight[b] <= _cap) {
        continue;
      }
      std::vector<Candidate> candidates;
      for (VertexId u = 0; u < _g.n(); ++u) {
        if (_part[u] == b) {
          const auto [gain, target] = best_rebalance_move(u);
          if (target != kNoBlock) {
            candidates.push_back({gain, u});
          }
        }
      }
      std::sort(candidates.begin(), candidates.end(), [](const Candidate &x, const Candidate &y) {
        return CandidateOrder{}(y, x);
      });
      for (const Candidate &c : candidates) {
        if (_block_weight[b] <= _cap) {
          break;
        }
        const auto [gain, target] = best_rebalance_move(c.vertex);
        if (target != kNoBlock) {
          move(c.vertex, target);
        }
      }
    }
  }

  /// One FM pass; returns the cut improvement that was kept.
  double fm_pass() {
    const VertexId n = _g.n();
    std::vector<bool> locked(n, false);
    CandidateQueue queue;
    for (VertexId u = 0; u < n; ++u) {
      const auto [gain, target] = fm_move(u);
      if (target != kNoBlock) {
        queue.push({gain, u});
      }
    }

    struct Move {
      VertexId vertex;
      BlockId from;
    };
    std::vector<Move> log;
    double cumulative = 0.0;
    double best = balanced() ? 0.0 : -std::numeric_limits<double>::infinity();
    std::size_t best_length = 0;
    std::size_t since_best = 0;
    const std::size_t patience = std::min<std::size_t>(2000, 100 + n / 100);

    while (!queue.empty() && since_best <= patience) {
      const Candidate top = queue.top();
      queue.pop();
      if (locked[top.vertex]) {
        continue;
      }
      const auto [gain, target] = fm_move(top.vertex);
      if (target == kNoBlock) {
        continue;
      }
      if (gain != top.gain) {
        queue.push({gain, top.vertex});
        continue;
      }

      log.push_back({top.vertex, _part[top.vertex]});
      const bool was_over = _block_weight[target] > _cap;
      move(top.vertex, target);
      locked[top.vertex] = true;
      cumulative += gain;
      if (balanced() && cumulative > best + kGainTolerance) {
        best = cumulative;
        best_length = log.size();
        since_best = 0;
      } else {
        ++since_best;
      }

      const VertexId u = top.vertex;
      for (EdgeIndex e = _g.xadj[u]; e < _g.xadj[u + 1]; ++e) {
        const VertexId v = _g.adj[e];
        if (!locked[v]) {
          const auto [g2, t2] = fm_move(v);
          if (t2 != kNoBlock) {
            queue.push({g2, v});
          }
        }
      }
      // A block that just went over its cap offers every member a move to
      // the lightest block, adjacent or not.
      if (_remote_moves && !was_over && _block_weight[target] > _cap) {
        for (VertexId v = 0; v < n; ++v) {
          if (!locked[v] && _part[v] == target) {
            const auto [g2, t2] = fm_move(v);
            if (t2 != kNoBlock) {
              queue.push({g2, v});
            }
          }
        }
      }
    }

    while (log.size() > best_length) {
      move(log.back().vertex, log.back().from);
      log.pop_back();
    }
    return best_length > 0 ? best : 0.0;
  }

  void refine(const int max_passes) {
    if (!balanced()) {
      rebalance();
    }
    for (int pass = 0; pass < max_passes; ++pass) {
      if (fm_pass() <= kGainTolerance) {
        break;
      }
    }
  }

private:
  struct Entry {
    BlockId block;
    std::uint32_t count;
    double weight;
  };

  void build_connectivity() {
    const VertexId n = _g.n();
    _start.assign(n + 1, 0);
    for (VertexId u = 0; u < n; ++u) {
      const EdgeIndex degree = _g.xadj[u + 1] - _g.xadj[u];
      _start[u + 1] = _start[u] + std::min<EdgeIndex>(degree, _blocks);
    }
    _entries.assign(_start[n], Entry{kNoBlock, 0, 0.0});
    _size.assign(n, 0);
    for (VertexId u = 0; u < n; ++u) {
      for (EdgeIndex e = _g.xadj[u]; e < _g.xadj[u + 1]; ++e) {
        add_connection(u, _part[_g.adj[e]], _g.ew[e]);
      }
    }
    _overweight_blocks = 0;
    for (const VertexWeight w : _block_weight) {
      _overweight_blocks += w > _cap ? 1 : 0;
    }
  }

  Entry *find(const VertexId u, const BlockId b) {
    Entry *first = _entries.data() + _start[u];
    for (Entry *it = first; it != first + _size[u]; ++it) {
      if (it->block == b) {
        return it;
      }
    }
    return nullptr;
  }

  [[nodiscard]] double connection(const VertexId u, const BlockId b) const {
    const Entry *first = _entries.data() + _start[u];
    for (const Entry *it = first; it != first + _size[u]; ++it) {
      if (it->block == b) {
        return it->weight;
      }
    }
    return 0.0;
  }

  void add_connection(const VertexId u, const BlockId b, const double w) {
    if (Entry *entry = find(u, b)) {
      ++entry->count;
      entry->weight += w;
    } else {
      _entries[_start[u] + _size[u]++] = Entry{b, 1, w};
    }
  }

  void remove_connection(const VertexId u, const BlockId b, const double w) {
    Entry *entry = find(u, b);
    if (--entry->count == 0) {
      *entry = _entries[_start[u] + --_size[u]];
    } else {
      entry->weight -= w;
    }
  }

  // Best target among adjacent blocks that stay within cap + slack.
  std::pair<double, BlockId> best_move(const VertexId u, const VertexWeight slack) const {
    const BlockId own = _part[u];
    const double internal = connection(u, own);
    double best_gain = 0.0;
    BlockId best_block = kNoBlock;
    const Entry *first = _entries.data() + _start[u];
    for (const Entry *it = first; it != first + _size[u]; ++it) {
      if (it->block == own || _block_weight[it->block] + _g.vw[u] > _cap + slack) {
        continue;
      }
      const double gain = it->weight - internal;
      if (best_block == kNoBlock || gain > best_gain || (gain == best_gain && it->block < best_block)) {
        best_gain = gain;
        best_block = it->block;
      }
    }
    return {best_gain, best_block};
  }

  // FM candidate move: within cap plus one vertex of slack; vertices of an
  // overweight block may also leave for a non-adjacent block on small graphs.
  std::pair<double, BlockId> fm_move(const VertexId u) const {
    const auto local = best_move(u, _g.max_vertex_weight);
    if (!_remote_moves || _block_weight[_part[u]] <= _cap) {
      return local;
    }
    const auto remote = best_rebalance_move(u);
    if (remote.second != kNoBlock && (local.second == kNoBlock || remote.first > local.first)) {
      return remote;
    }
    return local;
  }

  // Like best_move without slack, falling back to the lightest block when no
  // adjacent block has room.
  std::pair<double, BlockId> best_rebalance_move(const VertexId u) const {
    auto result = best_move(u, 0);
    if (result.second != kNoBlock) {
      return result;
    }
    BlockId lightest = kNoBlock;
    for (BlockId b = 0; b < _blocks; ++b) {
      if (b != _part[u] && _block_weight[b] + _g.vw[u] <= _cap &&
          (lightest == kNoBlock || _block_weight[b] < _block_weight[lightest])) {
        lightest = b;
      }
    }
    return {-connection(u, _part[u]), lightest};
  }

  void move(const VertexId u, const BlockId to) {
    const BlockId from = _part[u];
    const bool from_over = _block_weight[from] > _cap;
    const bool to_over = _block_weight[to] > _cap;
    _block_weight[from] -= _g.vw[u];
    _block_weight[to] += _g.vw[u];
    _overweight_blocks += (_block_weight[from] > _cap) - from_over;
    _overweight_blocks += (_block_weight[to] > _cap) - to_over;
    _part[u] = to;
    for (EdgeIndex e = _g.xadj[u]; e < _g.xadj[u + 1]; ++e) {
      const VertexId v = _g.adj[e];
      remove_connection(v, from, _g.ew[e]);
      add_connection(v, to, _g.ew[e]);
    }
  }

  const LevelGraph &_g;
  std::vector<BlockId> &_part;
  BlockId _blocks;
  VertexWeight _cap;
  bool _remote_moves;
  std::vector<VertexWeight> _block_weight;
  int _overweight_blocks = 0;

  std::vector<EdgeIndex> _start;
  std::vector<std::uint32_t> _size;
  std::vector<Entry> _entries;
};

} // namespace

Partition partition_kway(const WeightedGraph &wg, const BlockId blocks, const KWayOptions &options) {
  const Graph &graph = wg.graph();
  const VertexId n = graph.n();
  if (blocks == 0 || blocks > n) {
    throw std::invalid_argument(
        "cannot split " + std::to_string(n) + " vertices into " + std::to_string(blocks) + " blocks"
    );
  }
  if (blocks == 1) {
    return {std::vector<BlockId>(n, 0), 1, options.epsilon};
  }

  std::mt19937_64 rng(options.seed);
  const auto cap = static_cast<VertexWeight>(max_block_size(n, blocks, options.epsilon));
  const VertexId coarsest_target = std::max<VertexId>(30 * blocks, 2000);

  // Cluster weights stay well below the block cap so that the coarsest
  // graph can still be balanced.
  const VertexWeight max_vw = std::max<VertexWeight>(
      1, std::min<VertexWeight>(cap / 4, static_cast<VertexWeight>(std::ceil(1.5 * n / coarsest_target)))
  );

  std::vector<CoarseLevel> hierarchy;
  LevelGraph finest = from_weighted(wg);
  const LevelGraph *current = &finest;
  while (current->n() > coarsest_target) {
    const auto mate = heavy_edge_matching(*current, max_vw, rng);
    CoarseLevel next = contract(*current, mate);
    if (next.graph.n() > 0.95 * current->n()) {
      break;
    }
    hierarchy.push_back(std::move(next));
    current = &hierarchy.back().graph;
  }

  std::vector<BlockId> part;
  double best_cut = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < std::max(1, options.initial_attempts); ++attempt) {
    auto candidate = grow_initial_partition(*current, blocks, rng);
    KWayRefiner refiner(*current, candidate, blocks, cap);
    refiner.refine(options.max_refinement_passes);
    const double cut = level_cut(*current, candidate);
    if (cut < best_cut - kGainTolerance) {
      best_cut = cut;
      part = std::move(candidate);
    }
  }

  for (auto level = hierarchy.rbegin(); level != hierarchy.rend(); ++level) {
    const LevelGraph &fine = std::next(level) == hierarchy.rend() ? finest : std::next(level)->graph;
    std::vector<BlockId> projected(fine.n());
    for (VertexId u = 0; u < fine.n(); ++u) {
      projected[u] = part[level->fine_to_coarse[u]];
    }
    part = std::move(projected);
    KWayRefiner refiner(fine, part, blocks, cap);
    refiner.refine(options.max_refinement_passes);
  }

  Partition result(std::move(part), blocks, options.epsilon);
  const Partition fallback = random_partition(n, blocks, options.seed, options.epsilon);
  if (!result.is_balanced() || edge_cut(wg, fallback) < edge_cut(wg, result)) {
    return fallback;
  }
  return result;
}

} // namespace bfspart
