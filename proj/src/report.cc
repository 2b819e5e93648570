/*******************************************************************************
 * Report files of an experiment.
 *
 * @file:   report.cc
 ******************************************************************************/
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "bfspart/experiment.h"

namespace bfspart {

namespace {

std::string fixed(const double value, const int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  // Avoid "-0.000000" so identical runs print identical bytes.
  std::string text(buffer);
  if (text.find_first_not_of("-0.") == std::string::npos && text.front() == '-') {
    text.erase(0, 1);
  }
  return text;
}

std::ofstream open_file(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void close_file(std::ofstream &out, const std::filesystem::path &path) {
  out.close();
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

nlohmann::json summary_json(const BenchReport &report) {
  const ExperimentConfig &c = report.config;
  nlohmann::json strategies = nlohmann::json::array();
  for (const StrategyKind kind : report.strategies) {
    strategies.push_back(to_string(kind));
  }
  nlohmann::json summaries = nlohmann::json::object();
  for (const StrategySummary &s : report.summaries) {
    summaries[std::string(to_string(s.strategy))] = {
        {"roots", s.roots},
        {"mean_rho_peak", s.mean_rho_peak},
        {"stderr_rho_peak", s.stderr_rho_peak},
        {"ci95_rho_peak", {s.ci_low, s.ci_high}},
        {"mean_rho_total", s.mean_rho_total},
        {"mean_peak_cross", s.mean_peak_cross},
        {"mean_total_cross", s.mean_total_cross},
        {"mean_peak_share", s.mean_peak_share},
        {"rho_modes", s.rho_modes},
        {"rho_mode_location", s.rho_mode_location},
    };
  }
  nlohmann::json histogram = nlohmann::json::object();
  for (const auto &[peak, count] : report.peak_histogram) {
    histogram[std::to_string(peak)] = count;
  }
  return {
      {"config",
       {{"graph", report.graph_description},
        {"partitions", c.partitions},
        {"roots", c.roots},
        {"burn_in", c.burn_in_runs},
        {"k_cap", c.k_cap},
        {"epsilon", c.epsilon},
        {"seed", c.seed},
        {"avg_scale", c.avg_scale == WeightScale::per_edge ? "per_edge" : "joint"},
        {"message_rule", c.rule == MessageRule::unexpanded_targets ? "unexpanded" : "next"},
        {"strategies", strategies}}},
      {"graph", {{"n", report.n}, {"m", report.m}, {"largest_component", report.component_size}}},
      {"roots_used", report.roots.size()},
      {"burn_in_frontier_sizes", report.burn_in_sizes},
      {"modal_peak", report.modal_peak},
      {"emp_fallbacks", report.emp_fallbacks},
      {"strategies", summaries},
      {"peak_histogram", histogram},
      {"estimator",
       {{"pairs", report.estimator.pairs},
        {"mean_relative_error", report.estimator.mean_relative_error},
        {"median_relative_error", report.estimator.median_relative_error}}},
  };
}

void write_histogram(std::ostream &out, const std::vector<double> &values, const double lo, const double width, const std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  for (const double v : values) {
    const auto bin = static_cast<std::int64_t>(std::floor((v - lo) / width));
    counts[static_cast<std::size_t>(std::clamp<std::int64_t>(bin, 0, static_cast<std::int64_t>(bins) - 1))]++;
  }
  out << "bin_low,bin_high,count\n";
  for (std::size_t b = 0; b < bins; ++b) {
    out << fixed(lo + width * static_cast<double>(b), 3) << ',' << fixed(lo + width * static_cast<double>(b + 1), 3)
        << ',' << counts[b] << '\n';
  }
}

} // namespace

void write_results_csv(const BenchReport &report, std::ostream &out) {
  out << "root,strategy,peak,peak_cross,total_cross,peak_share,rho_peak,rho_total\n";
  for (const RootRecord &r : report.records) {
    out << r.root << ',' << to_string(r.strategy) << ',' << r.peak << ',' << r.peak_cross << ',' << r.total_cross
        << ',' << fixed(r.peak_share) << ',' << fixed(r.rho_peak) << ',' << fixed(r.rho_total) << '\n';
  }
}

std::vector<RootRecord> read_results_csv(std::istream &in) {
  std::vector<RootRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::vector<std::string> cells;
    for (std::string cell; std::getline(fields, cell, ',');) {
      cells.push_back(cell);
    }
    if (cells.size() != 8) {
      throw std::runtime_error("results line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) + " fields");
    }
    RootRecord r;
    r.root = static_cast<VertexId>(std::stoul(cells[0]));
    r.strategy = parse_strategy(cells[1]);
    r.peak = std::stoull(cells[2]);
    r.peak_cross = std::stoull(cells[3]);
    r.total_cross = std::stoull(cells[4]);
    r.peak_share = std::stod(cells[5]);
    r.rho_peak = std::stod(cells[6]);
    r.rho_total = std::stod(cells[7]);
    records.push_back(r);
  }
  return records;
}

void emit_report(const BenchReport &report, const std::filesystem::path &dir, const ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  }

  if (format == ReportFormat::csv) {
    const auto path = dir / "results.csv";
    auto out = open_file(path);
    write_results_csv(report, out);
    close_file(out, path);
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const RootRecord &r : report.records) {
      rows.push_back({
          {"root", r.root},
          {"strategy", to_string(r.strategy)},
          {"peak", r.peak},
          {"peak_cross", r.peak_cross},
          {"total_cross", r.total_cross},
          {"peak_share", r.peak_share},
          {"rho_peak", r.rho_peak},
          {"rho_total", r.rho_total},
      });
    }
    const auto path = dir / "results.json";
    auto out = open_file(path);
    out << rows.dump(2) << '\n';
    close_file(out, path);
  }

  {
    const auto path = dir / "summary.json";
    auto out = open_file(path);
    out << summary_json(report).dump(2) << '\n';
    close_file(out, path);
  }
  {
    const auto path = dir / "peak_histogram.csv";
    auto out = open_file(path);
    out << "peak,count\n";
    for (const auto &[peak, count] : report.peak_histogram) {
      out << peak << ',' << count << '\n';
    }
    close_file(out, path);
  }
  {
    const auto path = dir / "peak_share.csv";
    auto out = open_file(path);
    write_histogram(out, report.peak_shares, 0.0, 0.05, 20);
    close_file(out, path);
  }
  for (const StrategyKind kind : report.strategies) {
    std::vector<double> values;
    for (const RootRecord &r : report.records) {
      if (r.strategy == kind) {
        values.push_back(r.rho_peak);
      }
    }
    const auto path = dir / ("rho_" + std::string(to_string(kind)) + ".csv");
    auto out = open_file(path);
    double lo = -5.0;
    double hi = 5.0;
    for (const double v : values) {
      lo = std::min(lo, std::floor(v));
      hi = std::max(hi, std::floor(v) + 1.0);
    }
    write_histogram(out, values, lo, 1.0, static_cast<std::size_t>(hi - lo));
    close_file(out, path);
  }
  {
    const auto path = dir / "expected_vs_actual.csv";
    auto out = open_file(path);
    out << "root,tau,expected,actual\n";
    for (const CutPair &pair : report.expected_vs_actual) {
      out << pair.root << ',' << pair.tau << ',' << fixed(pair.expected) << ',' << pair.actual << '\n';
    }
    close_file(out, path);
  }
}

} // namespace bfspart
