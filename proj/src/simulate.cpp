#include "compreg/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "compreg/error.hpp"
#include "compreg/random.hpp"

namespace compreg {

void SimConfig::validate() const {
  if (n < 4) throw Error(ErrorCode::InvalidConfig, "n must be at least 4, got " + std::to_string(n));
  if (replicates < 1) throw Error(ErrorCode::InvalidConfig, "replicates must be positive");
  if (true_beta0.empty()) throw Error(ErrorCode::InvalidConfig, "at least one component is required");
  if (true_beta1.size() != g() || true_sigma.size() != g()) {
    throw Error(ErrorCode::DimensionMismatch, "beta0, beta1 and sigma must have the same length");
  }
  for (double s : true_sigma) {
    if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidConfig, "every sigma must be positive");
  }
  for (std::size_t j = 0; j < g(); ++j) {
    if (!std::isfinite(true_beta0[j]) || !std::isfinite(true_beta1[j])) {
      throw Error(ErrorCode::InvalidConfig, "coefficients must be finite");
    }
  }
  if (!(covariate_prob > 0.0 && covariate_prob < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "covariate probability must lie in (0, 1)");
  }
  if (!(ci_level > 0.0 && ci_level < 1.0)) throw Error(ErrorCode::InvalidLevel, "ci_level must lie in (0, 1)");
}

RegressionDataset generate_dataset(const SimConfig& config, std::size_t replicate_index) {
  config.validate();
  const auto n = static_cast<Eigen::Index>(config.n);
  const std::size_t g = config.g();
  // Stream layout per attempt: one covariate stream, then one noise stream per component.
  const auto streams_per_attempt = static_cast<std::uint32_t>(g + 1);

  for (int attempt = 0; attempt < kMaxRegenerations; ++attempt) {
    const auto base = static_cast<std::uint32_t>(attempt) * streams_per_attempt;
    CounterRng z_rng(config.seed, replicate_index, base);
    Eigen::MatrixXd z(n, 1);
    Eigen::Index ones = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      z(i, 0) = z_rng.bernoulli(config.covariate_prob);
      ones += static_cast<Eigen::Index>(z(i, 0));
    }
    if (ones < 2 || n - ones < 2) continue;

    RegressionDataset data;
    data.covariates = std::move(z);
    data.responses.resize(n, static_cast<Eigen::Index>(g));
    for (std::size_t j = 0; j < g; ++j) {
      CounterRng eps(config.seed, replicate_index, base + 1 + static_cast<std::uint32_t>(j));
      for (Eigen::Index i = 0; i < n; ++i) {
        data.responses(i, static_cast<Eigen::Index>(j)) =
            config.true_beta0[j] + config.true_beta1[j] * data.covariates(i, 0) + config.true_sigma[j] * eps.normal();
      }
    }
    return data;
  }
  throw Error(ErrorCode::ImprobableDegeneracy, "replicate " + std::to_string(replicate_index) + ": " +
                                                   std::to_string(kMaxRegenerations) +
                                                   " consecutive draws had fewer than 2 observations at a covariate level");
}

namespace {

struct ReplicateResult {
  std::vector<double> estimates;
  std::vector<unsigned char> covered;
};

ReplicateResult run_replicate(const SimConfig& config, std::size_t r, const std::vector<double>& truth) {
  const ModelFit model = fit(generate_dataset(config, r));
  ReplicateResult out;
  for (const auto& ci : wald_ci(model, config.ci_level)) {
    out.estimates.push_back(ci.estimate);
    const double t = truth[out.covered.size()];
    out.covered.push_back(ci.lower <= t && t <= ci.upper ? 1 : 0);
  }
  return out;
}

}  // namespace

SimReport run_study(const SimConfig& config, unsigned threads) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t g = config.g();

  std::vector<double> truth;
  truth.insert(truth.end(), config.true_beta0.begin(), config.true_beta0.end());
  truth.insert(truth.end(), config.true_beta1.begin(), config.true_beta1.end());
  truth.insert(truth.end(), config.true_sigma.begin(), config.true_sigma.end());

  std::vector<ReplicateResult> slots(config.replicates);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < config.replicates;) {
      try {
        slots[r] = run_replicate(config, r, truth);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.replicates;
      }
    }
  };
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.replicates));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const auto reps = static_cast<double>(config.replicates);
  SimReport report;
  report.config = config;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const auto kind = k < g ? ParameterKind::Intercept : (k < 2 * g ? ParameterKind::Slope : ParameterKind::Scale);
    const std::size_t j = k % g;
    double sum = 0.0, sq_err = 0.0, hits = 0.0;
    for (const auto& s : slots) {
      sum += s.estimates[k];
      sq_err += (s.estimates[k] - truth[k]) * (s.estimates[k] - truth[k]);
      hits += s.covered[k];
    }
    const double mean = sum / reps;
    double var = 0.0;
    for (const auto& s : slots) var += (s.estimates[k] - mean) * (s.estimates[k] - mean);
    report.parameters.push_back({parameter_name(kind, j, 0, 1), kind, j, truth[k], mean, mean - truth[k],
                                 sq_err / reps, var / reps, hits / reps});
  }
  report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SimReport> study_sweep(const std::vector<SimConfig>& configs, unsigned threads) {
  if (configs.empty()) throw Error(ErrorCode::InvalidConfig, "study sweep needs at least one config");
  std::vector<SimReport> out;
  out.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      out.push_back(run_study(configs[i], threads));
    } catch (const Error& e) {
      throw Error(e.code(), "config " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace compreg
