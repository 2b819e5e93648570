/*******************************************************************************
 * Paired experiment: every strategy partitions the same graph, BFS runs from
 * the same random roots under every partition, and crossing messages are
 * compared against the unweighted baseline root by root.
 *
 * @file:   experiment.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bfspart/graph.h"
#include "bfspart/strategies.h"

namespace bfspart {

/// splitmix64 step: independent sub-seeds from one base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct GeneratorSpec {
  enum class Kind { er, power_law } kind = Kind::er;
  VertexId n = 0;
  EdgeIndex m = 0;          // er
  double exponent = 2.0;    // power_law, p_k proportional to k^-exponent
  VertexId max_degree = 0;  // power_law, 0 means n - 1
};

/// "er:N:M" or "plaw:N:alpha[:kmax]"; throws std::invalid_argument.
GeneratorSpec parse_generator(std::string_view spec);
GeneratedGraph generate(const GeneratorSpec &spec, std::uint64_t seed);

struct ExperimentConfig {
  // Exactly one of graph_path and generator is set.
  std::string graph_path;
  std::string generator;
  BlockId partitions = 100;
  std::size_t roots = 500;
  std::size_t burn_in_runs = 10;
  VertexId k_cap = kDefaultDegreeCap;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 1;
  // Baseline is always evaluated; duplicates are ignored.
  std::vector<StrategyKind> strategies = all_strategies();
  WeightScale avg_scale = WeightScale::per_edge;
  MessageRule rule = MessageRule::unexpanded_targets;
  std::size_t bootstrap_resamples = 10000;
};

struct RootRecord {
  VertexId root = 0;
  StrategyKind strategy = StrategyKind::baseline;
  std::size_t peak = 0;
  std::uint64_t peak_cross = 0;
  std::uint64_t total_cross = 0;
  double peak_share = 0.0;
  double rho_peak = 0.0;
  double rho_total = 0.0;
};

struct StrategySummary {
  StrategyKind strategy = StrategyKind::baseline;
  std::size_t roots = 0;
  double mean_rho_peak = 0.0;
  double stderr_rho_peak = 0.0;
  // Percentile bootstrap interval of mean_rho_peak.
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_rho_total = 0.0;
  double mean_peak_cross = 0.0;
  double mean_total_cross = 0.0;
  double mean_peak_share = 0.0;
  // Local maxima of a Gaussian kernel density estimate of rho_peak.
  std::size_t rho_modes = 0;
  double rho_mode_location = 0.0;
};

struct CutPair {
  VertexId root = 0;
  std::size_t tau = 0;
  double expected = 0.0;
  std::uint64_t actual = 0;
};

struct EstimatorSummary {
  std::size_t pairs = 0;
  // Relative error (expected - actual) / actual over pairs with actual > 0.
  double mean_relative_error = 0.0;
  double median_relative_error = 0.0;
};

struct BenchReport {
  ExperimentConfig config;
  std::string graph_description;
  VertexId n = 0;
  EdgeIndex m = 0;
  VertexId component_size = 0;
  std::vector<std::uint64_t> burn_in_sizes;
  std::size_t modal_peak = 0;
  std::vector<StrategyKind> strategies;
  std::vector<VertexId> roots;
  // Root-major, strategies in `strategies` order.
  std::vector<RootRecord> records;
  std::vector<StrategySummary> summaries;
  // Baseline peak iteration counts and peak shares.
  std::map<std::size_t, std::size_t> peak_histogram;
  std::vector<double> peak_shares;
  // Model estimate vs. actual crossing messages at each root's peak, both on
  // the baseline partition.
  std::vector<CutPair> expected_vs_actual;
  EstimatorSummary estimator;
  // Roots whose peak iteration sent no message, so W_emp used unit weights.
  std::size_t emp_fallbacks = 0;
};

/// Strategy list with baseline first and duplicates removed.
std::vector<StrategyKind> normalize_strategies(std::span<const StrategyKind> strategies);

BenchReport run_experiment(const ExperimentConfig &config);
/// Same protocol on a graph the caller already holds.
BenchReport run_experiment(const Graph &g, const ExperimentConfig &config, std::string description = "in-memory");

/// Per-strategy aggregates of root records.
std::vector<StrategySummary> summarize(
    std::span<const RootRecord> records, std::span<const StrategyKind> strategies, std::size_t resamples,
    std::uint64_t seed
);
EstimatorSummary summarize_estimator(std::span<const CutPair> pairs);

/// Number of local maxima of a Gaussian KDE (Silverman bandwidth) and the
/// location of the highest one.
std::pair<std::size_t, double> kde_modes(std::span<const double> values);

/// Percentile bootstrap interval of the mean.
std::pair<double, double> bootstrap_mean_ci(
    std::span<const double> values, std::size_t resamples, std::uint64_t seed, double level = 0.95
);

enum class ReportFormat { csv, json };

/// Writes results.csv (or results.json), summary.json, peak_histogram.csv,
/// peak_share.csv, rho_<strategy>.csv and expected_vs_actual.csv.
void emit_report(const BenchReport &report, const std::filesystem::path &dir, ReportFormat format = ReportFormat::csv);

void write_results_csv(const BenchReport &report, std::ostream &out);
std::vector<RootRecord> read_results_csv(std::istream &in);

} // namespace bfspart
