#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "compreg/composition.hpp"
#include "compreg/regress.hpp"

namespace compreg {

enum class IntervalMethod { Delta, Bootstrap };

struct ProportionEstimate {
  Composition alphas;
  Eigen::VectorXd covariate;
  std::vector<std::pair<double, double>> intervals;  ///< one per part, inside (0, 1)
  double level = 0.95;
  IntervalMethod method = IntervalMethod::Delta;
  bool clamped = false;  ///< a delta interval was truncated into (0, 1)
};

/// Linear predictors eta_j = b0_j + z . b1_j for every component.
Eigen::VectorXd linear_predictors(const ModelFit& fit, const Eigen::VectorXd& z);

/// Fitted proportions at covariate z: alpha_j = e^eta_j / (1 + sum_k e^eta_k)
/// for j < G and alpha_G = 1 / (1 + sum_k e^eta_k). Throws DimensionMismatch
/// if z has the wrong length and OverflowGuard if any |eta| > 700.
Composition estimate_proportions(const ModelFit& fit, const Eigen::VectorXd& z);

/// First-order (delta method) intervals. Components are treated as
/// independent, so Var(eta) is diagonal with entries x' Cov_j x, x = (1, z).
ProportionEstimate proportion_ci_delta(const ModelFit& fit, const Eigen::VectorXd& z, double level);

/// Parametric bootstrap: draws each component's coefficients from
/// N(estimate, coef_cov) independently, maps through the inverse transform and
/// takes empirical quantiles. Draw b uses the random stream (seed, b), so the
/// result is bit-identical for any `threads` value. threads == 0 picks the
/// hardware concurrency.
ProportionEstimate proportion_ci_bootstrap(const ModelFit& fit, const Eigen::VectorXd& z, double level,
                                           std::size_t draws, std::uint64_t seed, unsigned threads = 0);

/// Minimum number of bootstrap draws accepted.
inline constexpr std::size_t kMinBootstrapDraws = 100;

}  // namespace compreg
