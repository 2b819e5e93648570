/*******************************************************************************
 * Command line front end: graph statistics, partitioning, single BFS traces
 * and the full paired benchmark.
 *
 * @file:   bfspart.cc
 ******************************************************************************/
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bfspart/bfs.h"
#include "bfspart/degree_stats.h"
#include "bfspart/experiment.h"
#include "bfspart/kway_partitioner.h"
#include "bfspart/partition.h"
#include "bfspart/strategies.h"

using namespace bfspart;

namespace {

struct GraphArgs {
  std::string path;
  std::string generator;
  std::uint64_t seed = 1;
};

void add_graph_options(CLI::App *app, GraphArgs &args) {
  auto *path = app->add_option("--graph", args.path, "Edge list file");
  auto *gen = app->add_option("--gen", args.generator, "Generator: er:N:M or plaw:N:alpha[:kmax]");
  path->excludes(gen);
  app->add_option("--seed", args.seed, "Random seed")->capture_default_str();
}

Graph load_graph(const GraphArgs &args) {
  if (args.path.empty() == args.generator.empty()) {
    throw std::invalid_argument("give exactly one of --graph and --gen");
  }
  if (!args.path.empty()) {
    return load_edge_list_file(args.path).graph;
  }
  return generate(parse_generator(args.generator), args.seed).graph;
}

template <typename F> void write_to(const std::string &path, F &&write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  write(out);
}

// Weighted graph of one strategy; emp uses the peak messages of one random
// root of the largest component.
WeightedGraph strategy_weights(
    const Graph &g, const StrategyKind kind, const Partition &baseline, const VertexId k_cap, const std::size_t runs,
    const std::uint64_t seed
) {
  if (kind == StrategyKind::baseline) {
    return WeightedGraph::unit(g);
  }
  const BurnIn burn = burn_in(g, baseline, kind == StrategyKind::emp ? 1 : runs, derive_seed(seed, 2), k_cap);
  if (kind == StrategyKind::emp) {
    return build_w_emp(g, *burn.traces.front().peak_class_counts);
  }
  if (kind == StrategyKind::smooth) {
    std::vector<ClassMatrix> counts;
    for (const MessageTrace &trace : burn.traces) {
      counts.push_back(*trace.peak_class_counts);
    }
    return build_w_smooth(g, counts);
  }
  return build_w_avg(g, degree_stats(g, k_cap), burn.frontier_sizes, burn.modal_peak);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Degree-aware partitioning for parallel BFS message reduction"};
  app.require_subcommand(1);

  GraphArgs graph_args;
  BlockId partitions = 100;
  VertexId k_cap = kDefaultDegreeCap;
  double epsilon = kDefaultEpsilon;
  std::size_t burn_in_runs = 10;
  std::string out;

  // stats
  auto *stats_cmd = app.add_subcommand("stats", "Degree distribution, joint distribution and assortativity");
  add_graph_options(stats_cmd, graph_args);
  stats_cmd->add_option("--kmax", k_cap, "Degree class cap")->capture_default_str();
  stats_cmd->add_option("--out", out, "Write the full statistics as JSON");

  // partition
  std::string strategy_name = "baseline";
  std::string part_format = "pairs";
  std::string input_partition;
  std::string weights_out;
  auto *part_cmd = app.add_subcommand("partition", "Partition a graph, or evaluate an existing partition");
  add_graph_options(part_cmd, graph_args);
  part_cmd->add_option("--partitions", partitions, "Number of blocks")->capture_default_str();
  part_cmd->add_option("--epsilon", epsilon, "Imbalance tolerance")->capture_default_str();
  part_cmd->add_option("--kmax", k_cap, "Degree class cap")->capture_default_str();
  part_cmd->add_option("--burn-in", burn_in_runs, "BFS runs used to estimate weights")->capture_default_str();
  part_cmd->add_option("--strategy", strategy_name, "Edge weighting")
      ->check(CLI::IsMember({"baseline", "emp", "smooth", "avg"}))
      ->capture_default_str();
  part_cmd->add_option("--format", part_format, "Partition file format")
      ->check(CLI::IsMember({"pairs", "metis"}))
      ->capture_default_str();
  part_cmd->add_option("--input", input_partition, "Evaluate this partition file instead of computing one");
  part_cmd->add_option("--weights", weights_out, "Write the weighted edge list");
  part_cmd->add_option("--out", out, "Partition output file ('-' for stdout)");

  // bfs
  std::int64_t root = -1;
  auto *bfs_cmd = app.add_subcommand("bfs", "Trace one BFS and count crossing messages");
  add_graph_options(bfs_cmd, graph_args);
  bfs_cmd->add_option("--root", root, "Root vertex (default: random vertex of the largest component)");
  bfs_cmd->add_option("--partitions", partitions, "Blocks of the baseline partition")->capture_default_str();
  bfs_cmd->add_option("--epsilon", epsilon, "Imbalance tolerance")->capture_default_str();
  bfs_cmd->add_option("--input", input_partition, "Partition file to use instead of the baseline");
  bfs_cmd->add_option("--format", part_format, "Partition file format")
      ->check(CLI::IsMember({"pairs", "metis"}))
      ->capture_default_str();
  bfs_cmd->add_option("--out", out, "Write the trace as JSON");

  // bench
  ExperimentConfig config;
  std::string strategy_list = "all";
  std::string report_format = "csv";
  std::string avg_scale = "per_edge";
  auto *bench_cmd = app.add_subcommand("bench", "Paired comparison of all strategies over random roots");
  add_graph_options(bench_cmd, graph_args);
  bench_cmd->add_option("--partitions", config.partitions, "Number of blocks")->capture_default_str();
  bench_cmd->add_option("--roots", config.roots, "Random roots")->capture_default_str();
  bench_cmd->add_option("--burn-in", config.burn_in_runs, "Burn-in BFS runs")->capture_default_str();
  bench_cmd->add_option("--kmax", config.k_cap, "Degree class cap")->capture_default_str();
  bench_cmd->add_option("--epsilon", config.epsilon, "Imbalance tolerance")->capture_default_str();
  bench_cmd->add_option("--strategy", strategy_list, "Strategy to compare with the baseline")
      ->check(CLI::IsMember({"baseline", "emp", "smooth", "avg", "all"}))
      ->capture_default_str();
  bench_cmd->add_option("--avg-scale", avg_scale, "Model weight scale")
      ->check(CLI::IsMember({"per_edge", "joint"}))
      ->capture_default_str();
  std::string message_rule = "unexpanded";
  bench_cmd->add_option("--message-rule", message_rule, "Message targets: not yet expanded, or next frontier only")
      ->check(CLI::IsMember({"unexpanded", "next"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", out, "Output directory")->default_str("bench_out");
  bench_cmd->add_option("--format", report_format, "Per-root results format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats_cmd->parsed()) {
      const Graph g = load_graph(graph_args);
      const DegreeStats stats = degree_stats(g, k_cap);
      std::cout << "vertices        " << g.n() << "\n"
                << "edges           " << g.m() << "\n"
                << "non-isolated    " << stats.support_count << "\n"
                << "largest comp.   " << largest_component(g).size() << "\n"
                << "max degree      " << g.max_degree() << "\n"
                << "assortativity   " << stats.assortativity << "\n";
      if (!out.empty()) {
        write_to(out, [&](std::ostream &os) { os << to_json(stats).dump() << '\n'; });
      }
    } else if (part_cmd->parsed()) {
      const Graph g = load_graph(graph_args);
      const auto format = part_format == "metis" ? PartitionFormat::metis : PartitionFormat::pairs;
      Partition part;
      if (!input_partition.empty()) {
        std::ifstream in(input_partition);
        if (!in) {
          throw std::runtime_error("cannot read " + input_partition);
        }
        part = import_partition(in, g.n(), format);
      } else {
        const KWayOptions options{.epsilon = epsilon, .seed = derive_seed(graph_args.seed, 1)};
        const Partition baseline = partition_kway(WeightedGraph::unit(g), partitions, options);
        const StrategyKind kind = parse_strategy(strategy_name);
        const WeightedGraph wg = strategy_weights(g, kind, baseline, k_cap, burn_in_runs, graph_args.seed);
        part = kind == StrategyKind::baseline ? baseline : partition_kway(wg, partitions, options);
        if (!weights_out.empty()) {
          write_to(weights_out, [&](std::ostream &os) { export_weighted(wg, os); });
        }
      }
      std::cerr << "blocks " << part.blocks() << ", edge cut " << edge_cut(WeightedGraph::unit(g), part)
                << ", communication volume " << comm_volume(g, part) << ", largest block " << part.max_block_size()
                << (part.is_balanced() ? " (balanced)" : " (UNBALANCED)") << "\n";
      if (input_partition.empty()) {
        write_to(out, [&](std::ostream &os) {
          if (format == PartitionFormat::metis) {
            for (VertexId u = 0; u < part.n(); ++u) {
              os << part.block(u) << '\n';
            }
          } else {
            export_partition(part, os);
          }
        });
      }
    } else if (bfs_cmd->parsed()) {
      const Graph g = load_graph(graph_args);
      Partition part;
      if (!input_partition.empty()) {
        std::ifstream in(input_partition);
        if (!in) {
          throw std::runtime_error("cannot read " + input_partition);
        }
        part = import_partition(in, g.n(), part_format == "metis" ? PartitionFormat::metis : PartitionFormat::pairs);
      } else {
        part = partition_kway(WeightedGraph::unit(g), partitions, epsilon, derive_seed(graph_args.seed, 1));
      }
      VertexId source = 0;
      if (root >= 0) {
        source = static_cast<VertexId>(root);
      } else {
        const auto component = largest_component(g);
        std::mt19937_64 rng(derive_seed(graph_args.seed, 3));
        source = component[std::uniform_int_distribution<std::size_t>(0, component.size() - 1)(rng)];
      }
      const MessageTrace trace = bfs_trace(g, part, source);
      const PeakStats peak = peak_stats(trace);
      auto json = to_json(trace);
      json["peak_share"] = peak.share;
      write_to(out, [&](std::ostream &os) { os << json.dump() << '\n'; });
    } else if (bench_cmd->parsed()) {
      config.graph_path = graph_args.path;
      config.generator = graph_args.generator;
      config.seed = graph_args.seed;
      config.avg_scale = avg_scale == "joint" ? WeightScale::joint : WeightScale::per_edge;
      config.rule = message_rule == "next" ? MessageRule::next_frontier_only : MessageRule::unexpanded_targets;
      if (strategy_list == "all") {
        config.strategies = all_strategies();
      } else {
        config.strategies = {parse_strategy(strategy_list)};
      }
      const BenchReport report = run_experiment(config);
      const std::string dir = out.empty() ? "bench_out" : out;
      emit_report(report, dir, report_format == "json" ? ReportFormat::json : ReportFormat::csv);

      std::cout << "graph " << report.graph_description << ": n=" << report.n << " m=" << report.m
                << " largest component=" << report.component_size << ", roots=" << report.roots.size() << "\n";
      for (const StrategySummary &s : report.summaries) {
        std::cout << to_string(s.strategy) << ": mean rho_peak " << s.mean_rho_peak << "% [" << s.ci_low << ", "
                  << s.ci_high << "], mean rho_total " << s.mean_rho_total << "%, mean peak share "
                  << s.mean_peak_share << "\n";
      }
      std::cout << "estimator: mean relative error " << report.estimator.mean_relative_error << ", median "
                << report.estimator.median_relative_error << "\n"
                << "results written to " << dir << "\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
