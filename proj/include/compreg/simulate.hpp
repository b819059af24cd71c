#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "compreg/regress.hpp"

namespace compreg {

/// Data-generating processes available to the study harness.
enum class Dgp {
  /// z ~ Bernoulli(covariate_prob); y_j = b0_j + b1_j z + N(0, sigma_j^2).
  ModelNormal,
};

struct SimConfig {
  std::size_t n = 100;
  std::size_t replicates = 1000;
  std::vector<double> true_beta0;
  std::vector<double> true_beta1;
  std::vector<double> true_sigma;
  double covariate_prob = 0.5;
  double ci_level = 0.95;
  std::uint64_t seed = 0;
  Dgp dgp = Dgp::ModelNormal;

  std::size_t g() const noexcept { return true_beta0.size(); }
  /// Throws InvalidConfig or DimensionMismatch.
  void validate() const;
};

/// Attempts per replicate before a degenerate covariate draw is fatal.
inline constexpr int kMaxRegenerations = 100;

/// Dataset for one replicate, a pure function of (config, replicate_index).
/// Draws with fewer than two observations at either covariate level are
/// regenerated from a fresh stream; after kMaxRegenerations attempts throws
/// ImprobableDegeneracy.
RegressionDataset generate_dataset(const SimConfig& config, std::size_t replicate_index);

struct ParameterSummary {
  std::string name;
  ParameterKind kind;
  std::size_t component;
  double truth;
  double mean;
  double bias;
  double mse;
  double variance;  ///< population variance of the estimates (divisor R)
  double cp;        ///< fraction of replicates whose Wald interval covers truth
};

struct SimReport {
  SimConfig config;
  /// Ordered as beta0_1..g, beta1_1..g, sigma_1..g.
  std::vector<ParameterSummary> parameters;
  double duration_seconds = 0.0;
};

/// Generate, fit and summarize `config.replicates` datasets. Replicates run
/// on `threads` workers (0 = hardware concurrency); results are written to
/// per-replicate slots and reduced in index order, so the report (apart from
/// duration_seconds) is identical for any thread count.
SimReport run_study(const SimConfig& config, unsigned threads = 0);

/// run_study over each config; errors are rethrown with the config index.
std::vector<SimReport> study_sweep(const std::vector<SimConfig>& configs, unsigned threads = 0);

}  // namespace compreg
