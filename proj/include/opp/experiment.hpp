#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opp/purepair.hpp"

namespace opp {

struct ExperimentConfig {
  /// "empty", "complete", "girth" or "random".
  std::string construction = "girth";
  int girth = 3;
  /// Edge probability for "random".
  double p = 0.5;
  std::vector<int> n_list;
  std::vector<std::uint64_t> seeds;
  /// Exponents c for the min_size / n^{1-c} summary lines.
  std::vector<double> c_grid;
  std::size_t exact_cap = 22;
  /// Branch-and-bound node budget per polarity; hosts above exact_cap use it.
  std::uint64_t node_budget = 2'000'000;
  /// Fill the seconds column; off by default so output is byte-stable.
  bool timing = false;
  int threads = 1;
};

struct ExperimentRow {
  std::string construction;
  int n = 0;
  std::uint64_t seed = 0;
  /// Vertices of the measured graph (|X| for the girth construction).
  std::size_t host_size = 0;
  Polarity polarity = Polarity::anticomplete;
  std::size_t z1 = 0;
  std::size_t z2 = 0;
  std::size_t min_size = 0;
  /// Search mode of the reported side, with "+capped" when the budget ran out.
  std::string mode;
  std::optional<double> seconds;
};

/// Least-squares slope of log(min_size) against log(n), with a two-sided 95% t interval.
struct SlopeFit {
  std::string label;
  double slope = 0;
  double lo = 0;
  double hi = 0;
  std::size_t points = 0;
  /// Interval available (needs at least three points).
  bool has_interval = false;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  /// One fit per seed across n_list, then a pooled fit over all rows.
  std::vector<SlopeFit> fits;
  std::string canonical_config;
  std::uint64_t config_hash = 0;
};

std::uint64_t fnv1a64(const std::string& s);

/// Key=value serialisation of every output-affecting field (threads excluded).
std::string canonical_config(const ExperimentConfig& config);

SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& points, std::string label);

/// Best pure pair per (n, seed) cell: exact search up to exact_cap, budgeted
/// branch-and-bound above it. Cells run in parallel; row order is (n, seed).
ExperimentResult scaling_experiment(const ExperimentConfig& config);

/// `# config <hash> <canonical>`, the column header, the rows, then `# fit` and `# ratio` lines.
std::string experiment_csv(const ExperimentResult& result, const ExperimentConfig& config);

}  // namespace opp
