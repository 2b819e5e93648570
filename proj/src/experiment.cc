/*******************************************************************************
 * @file:   experiment.cc
 ******************************************************************************/
#include "bfspart/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <stdexcept>

#include "bfspart/degree_stats.h"
#include "bfspart/kway_partitioner.h"

namespace bfspart {

std::uint64_t derive_seed(const std::uint64_t seed, const std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::vector<std::string_view> split(std::string_view text, const char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) {
      return parts;
    }
    text.remove_prefix(pos + 1);
  }
}

template <typename T> T parse_number(const std::string_view token, const std::string_view spec) {
  T value{};
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || end != token.data() + token.size()) {
    throw std::invalid_argument("bad number '" + std::string(token) + "' in generator '" + std::string(spec) + "'");
  }
  return value;
}

} // namespace

GeneratorSpec parse_generator(const std::string_view spec) {
  const auto parts = split(spec, ':');
  GeneratorSpec result;
  if (parts[0] == "er" && parts.size() == 3) {
    result.kind = GeneratorSpec::Kind::er;
    result.n = parse_number<VertexId>(parts[1], spec);
    result.m = parse_number<EdgeIndex>(parts[2], spec);
  } else if (parts[0] == "plaw" && (parts.size() == 3 || parts.size() == 4)) {
    result.kind = GeneratorSpec::Kind::power_law;
    result.n = parse_number<VertexId>(parts[1], spec);
    // Both "2" and "-2" denote p_k proportional to k^-2.
    result.exponent = std::abs(parse_number<double>(parts[2], spec));
    if (parts.size() == 4) {
      result.max_degree = parse_number<VertexId>(parts[3], spec);
    }
  } else {
    throw std::invalid_argument("generator must be er:N:M or plaw:N:alpha[:kmax], got '" + std::string(spec) + "'");
  }
  if (result.n == 0) {
    throw std::invalid_argument("generator needs at least one vertex");
  }
  return result;
}

GeneratedGraph generate(const GeneratorSpec &spec, const std::uint64_t seed) {
  if (spec.kind == GeneratorSpec::Kind::er) {
    return generate_er(spec.n, spec.m, seed);
  }
  const auto degrees = power_law_degree_sequence(spec.n, spec.exponent, spec.max_degree, derive_seed(seed, 0));
  return generate_config_model(degrees, derive_seed(seed, 1));
}

std::vector<StrategyKind> normalize_strategies(std::span<const StrategyKind> strategies) {
  std::vector<StrategyKind> result{StrategyKind::baseline};
  for (const StrategyKind kind : all_strategies()) {
    if (kind != StrategyKind::baseline && std::find(strategies.begin(), strategies.end(), kind) != strategies.end()) {
      result.push_back(kind);
    }
  }
  return result;
}

BenchReport run_experiment(const ExperimentConfig &config) {
  if (config.graph_path.empty() == config.generator.empty()) {
    throw std::invalid_argument("exactly one of a graph file and a generator must be given");
  }
  if (!config.graph_path.empty()) {
    const LoadedGraph loaded = load_edge_list_file(config.graph_path);
    return run_experiment(loaded.graph, config, config.graph_path);
  }
  const GeneratedGraph generated = generate(parse_generator(config.generator), config.seed);
  return run_experiment(generated.graph, config, config.generator);
}

namespace {

double rho(const std::uint64_t base, const std::uint64_t value) {
  if (base == 0) {
    return 0.0;
  }
  return 100.0 * (static_cast<double>(base) - static_cast<double>(value)) / static_cast<double>(base);
}

} // namespace

BenchReport run_experiment(const Graph &g, const ExperimentConfig &config, std::string description) {
  if (config.partitions == 0 || config.partitions > g.n()) {
    throw std::invalid_argument("block count must be between 1 and the number of vertices");
  }
  BenchReport report;
  report.config = config;
  report.graph_description = std::move(description);
  report.n = g.n();
  report.m = g.m();
  report.strategies = normalize_strategies(config.strategies);

  auto component = largest_component(g);
  if (component.empty()) {
    throw std::invalid_argument("graph has no vertices");
  }
  report.component_size = static_cast<VertexId>(component.size());

  const auto has = [&](const StrategyKind kind) {
    return std::find(report.strategies.begin(), report.strategies.end(), kind) != report.strategies.end();
  };

  const DegreeStats stats = degree_stats(g, config.k_cap);
  const KWayOptions kway{.epsilon = config.epsilon, .seed = derive_seed(config.seed, 1)};
  const Partition baseline = partition_kway(WeightedGraph::unit(g), config.partitions, kway);

  const BurnIn burn = burn_in(g, baseline, std::max<std::size_t>(1, config.burn_in_runs), derive_seed(config.seed, 2), config.k_cap, config.rule);
  report.burn_in_sizes = burn.frontier_sizes;
  report.modal_peak = burn.modal_peak;

  std::map<StrategyKind, Partition> shared;
  shared.emplace(StrategyKind::baseline, baseline);
  if (has(StrategyKind::smooth)) {
    std::vector<ClassMatrix> counts;
    for (const MessageTrace &trace : burn.traces) {
      counts.push_back(*trace.peak_class_counts);
    }
    shared.emplace(StrategyKind::smooth, partition_kway(build_w_smooth(g, counts), config.partitions, kway));
  }
  if (has(StrategyKind::avg)) {
    const WeightedGraph w_avg = build_w_avg(g, stats, burn.frontier_sizes, burn.modal_peak, config.avg_scale);
    shared.emplace(StrategyKind::avg, partition_kway(w_avg, config.partitions, kway));
  }

  std::mt19937_64 rng(derive_seed(config.seed, 3));
  std::shuffle(component.begin(), component.end(), rng);
  component.resize(std::min(config.roots, component.size()));
  report.roots = component;

  const std::size_t roots = report.roots.size();
  const std::size_t strategies = report.strategies.size();
  report.records.resize(roots * strategies);
  std::vector<CutPair> pairs(roots);
  std::vector<char> has_pair(roots, 0);
  std::vector<char> fallback(roots, 0);
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t si = 0; si < static_cast<std::int64_t>(roots); ++si) {
    const auto i = static_cast<std::size_t>(si);
    try {
      const VertexId root = report.roots[i];
      const MessageTrace base = bfs_trace(g, baseline, root, {config.rule, has(StrategyKind::emp), config.k_cap});
      const std::uint64_t base_peak = base.peak_cross();
      const std::uint64_t base_total = base.total_cross();

      for (std::size_t s = 0; s < strategies; ++s) {
        const StrategyKind kind = report.strategies[s];
        MessageTrace trace;
        if (kind == StrategyKind::baseline) {
          trace = base;
        } else if (kind == StrategyKind::emp) {
          if (base.peak_class_counts->max() > 0.0) {
            const Partition part = partition_kway(build_w_emp(g, *base.peak_class_counts), config.partitions, kway);
            trace = bfs_trace(g, part, root, {config.rule});
          } else {
            fallback[i] = 1;
            trace = base;
          }
        } else {
          trace = bfs_trace(g, shared.at(kind), root, {config.rule});
        }
        RootRecord &record = report.records[i * strategies + s];
        record.root = root;
        record.strategy = kind;
        record.peak = trace.peak_iteration;
        record.peak_cross = trace.peak_cross();
        record.total_cross = trace.total_cross();
        record.peak_share = peak_stats(trace).share;
        record.rho_peak = rho(base_peak, record.peak_cross);
        record.rho_total = rho(base_total, record.total_cross);
      }

      // Model estimate from this root's own frontier sizes, on the baseline
      // partition.
      if (base.frontier_sizes.size() >= 2) {
        const FrontierProfile profile = build_frontier_profile(stats, base.frontier_sizes);
        const std::size_t tau = std::min(base.peak_iteration, profile.iterations() - 2);
        const double expected = expected_cut(g, baseline, edge_message_table(profile, stats, tau));
        pairs[i] = CutPair{root, base.peak_iteration, expected, base_peak};
        has_pair[i] = 1;
      }
    } catch (...) {
#pragma omp critical
      error = std::current_exception();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }

  report.emp_fallbacks = static_cast<std::size_t>(std::count(fallback.begin(), fallback.end(), 1));
  for (std::size_t i = 0; i < roots; ++i) {
    if (has_pair[i]) {
      report.expected_vs_actual.push_back(pairs[i]);
    }
  }
  for (std::size_t i = 0; i < roots; ++i) {
    const RootRecord &record = report.records[i * strategies];
    ++report.peak_histogram[record.peak];
    report.peak_shares.push_back(record.peak_share);
  }
  report.summaries = summarize(report.records, report.strategies, config.bootstrap_resamples, config.seed);
  report.estimator = summarize_estimator(report.expected_vs_actual);
  return report;
}

std::pair<double, double> bootstrap_mean_ci(
    std::span<const double> values, const std::size_t resamples, const std::uint64_t seed, const double level
) {
  if (values.empty()) {
    return {0.0, 0.0};
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> means(std::max<std::size_t>(1, resamples));
  for (double &mean : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      sum += values[pick(rng)];
    }
    mean = sum / static_cast<double>(values.size());
  }
  std::sort(means.begin(), means.end());
  const double alpha = (1.0 - level) / 2.0;
  const auto at = [&](const double q) {
    const auto index = static_cast<std::size_t>(std::floor(q * static_cast<double>(means.size() - 1) + 0.5));
    return means[std::min(index, means.size() - 1)];
  };
  return {at(alpha), at(1.0 - alpha)};
}

namespace {

double quantile(std::vector<double> values, const double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double mean_of(std::span<const double> values) {
  return values.empty() ? 0.0 : std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev_of(std::span<const double> values) {
  if (values.size() < 2) {
    return 0.0;
  }
  const double mean = mean_of(values);
  double sq = 0.0;
  for (const double v : values) {
    sq += (v - mean) * (v - mean);
  }
  return std::sqrt(sq / static_cast<double>(values.size() - 1));
}

} // namespace

std::pair<std::size_t, double> kde_modes(std::span<const double> values) {
  if (values.empty()) {
    return {0, 0.0};
  }
  const double sd = stddev_of(values);
  const double iqr = values.size() > 1 ? quantile({values.begin(), values.end()}, 0.75) -
                                             quantile({values.begin(), values.end()}, 0.25)
                                       : 0.0;
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0.0)) {
    return {1, values.front()};
  }
  const double h = 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it - 3.0 * h;
  const double hi = *max_it + 3.0 * h;
  constexpr int kGrid = 512;
  std::vector<double> density(kGrid, 0.0);
  for (int i = 0; i < kGrid; ++i) {
    const double x = lo + (hi - lo) * i / (kGrid - 1);
    for (const double v : values) {
      const double z = (x - v) / h;
      density[i] += std::exp(-0.5 * z * z);
    }
  }
  const double top = *std::max_element(density.begin(), density.end());
  std::size_t modes = 0;
  int best = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double left = i > 0 ? density[i - 1] : 0.0;
    const double right = i + 1 < kGrid ? density[i + 1] : 0.0;
    // Bumps below 1% of the main mode are rounding noise in the tails.
    if (density[i] > left && density[i] >= right && density[i] >= 0.01 * top) {
      ++modes;
    }
    if (density[i] > density[best]) {
      best = i;
    }
  }
  return {modes, lo + (hi - lo) * best / (kGrid - 1)};
}

std::vector<StrategySummary> summarize(
    std::span<const RootRecord> records, std::span<const StrategyKind> strategies, const std::size_t resamples,
    const std::uint64_t seed
) {
  std::vector<StrategySummary> result;
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const StrategyKind kind = strategies[s];
    std::vector<double> rho_peak;
    std::vector<double> rho_total;
    std::vector<double> peak_cross;
    std::vector<double> total_cross;
    std::vector<double> share;
    for (const RootRecord &record : records) {
      if (record.strategy == kind) {
        rho_peak.push_back(record.rho_peak);
        rho_total.push_back(record.rho_total);
        peak_cross.push_back(static_cast<double>(record.peak_cross));
        total_cross.push_back(static_cast<double>(record.total_cross));
        share.push_back(record.peak_share);
      }
    }
    StrategySummary summary;
    summary.strategy = kind;
    summary.roots = rho_peak.size();
    summary.mean_rho_peak = mean_of(rho_peak);
    summary.stderr_rho_peak =
        rho_peak.empty() ? 0.0 : stddev_of(rho_peak) / std::sqrt(static_cast<double>(rho_peak.size()));
    std::tie(summary.ci_low, summary.ci_high) =
        bootstrap_mean_ci(rho_peak, resamples, derive_seed(seed, 100 + static_cast<std::uint64_t>(kind)));
    summary.mean_rho_total = mean_of(rho_total);
    summary.mean_peak_cross = mean_of(peak_cross);
    summary.mean_total_cross = mean_of(total_cross);
    summary.mean_peak_share = mean_of(share);
    std::tie(summary.rho_modes, summary.rho_mode_location) = kde_modes(rho_peak);
    result.push_back(summary);
  }
  return result;
}

EstimatorSummary summarize_estimator(std::span<const CutPair> pairs) {
  std::vector<double> errors;
  for (const CutPair &pair : pairs) {
    if (pair.actual > 0) {
      errors.push_back((pair.expected - static_cast<double>(pair.actual)) / static_cast<double>(pair.actual));
    }
  }
  EstimatorSummary summary;
  summary.pairs = errors.size();
  if (!errors.empty()) {
    summary.mean_relative_error = mean_of(errors);
    summary.median_relative_error = quantile(errors, 0.5);
  }
  return summary;
}

} // namespace bfspart
