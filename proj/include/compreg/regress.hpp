#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace compreg {

/**
 * Responses (n x g log-ratios) and covariates (n x p) for the per-component
 * linear model y_ij = b0_j + z_i . b1_j + e_ij.
 *
 * The intercept column is implicit and must not be included in `covariates`.
 */
struct RegressionDataset {
  Eigen::MatrixXd responses;
  Eigen::MatrixXd covariates;
  std::vector<std::string> labels;  ///< optional, one per response column
  std::string ref_label;            ///< optional name of the reference part

  std::size_t n() const noexcept { return static_cast<std::size_t>(responses.rows()); }
  std::size_t g() const noexcept { return static_cast<std::size_t>(responses.cols()); }
  std::size_t p() const noexcept { return static_cast<std::size_t>(covariates.cols()); }

  /// Throws DimensionMismatch, TooFewObservations, NonFinite or
  /// RankDeficientDesign.
  void validate() const;
};

/// Maximum-likelihood (divisor n) or unbiased (divisor n - p - 1) residual scale.
enum class ScaleEstimator { MaximumLikelihood, Unbiased };

struct ComponentFit {
  double beta0 = 0.0;
  Eigen::VectorXd beta1;
  double sigma = 0.0;
  double se_beta0 = 0.0;
  Eigen::VectorXd se_beta1;
  double se_sigma = 0.0;
  double rss = 0.0;
  /// Covariance of (beta0, beta1...) in that order; (p+1) x (p+1).
  Eigen::MatrixXd coef_cov;

  /// b0 + z . b1
  double linear_predictor(const Eigen::VectorXd& z) const { return beta0 + beta1.dot(z); }
  /// Var(b0 + z . b1) under `coef_cov`.
  double predictor_variance(const Eigen::VectorXd& z) const;
};

struct ModelFit {
  std::vector<ComponentFit> components;
  std::size_t n = 0;
  std::vector<std::string> labels;
  std::string ref_label;
  ScaleEstimator scale = ScaleEstimator::MaximumLikelihood;

  std::size_t g() const noexcept { return components.size(); }
  std::size_t p() const noexcept {
    return components.empty() ? 0 : static_cast<std::size_t>(components.front().beta1.size());
  }
};

/// Closed-form ML fit of every component. Components are fitted
/// independently from the shared design [1, Z].
ModelFit fit(const RegressionDataset& data, ScaleEstimator scale = ScaleEstimator::MaximumLikelihood);

enum class ParameterKind { Intercept, Slope, Scale };

struct ParameterInterval {
  std::string name;
  ParameterKind kind;
  std::size_t component;  ///< 0-based response column
  std::size_t covariate;  ///< 0-based covariate index; 0 unless kind == Slope
  double estimate;
  double se;
  double lower;
  double upper;
};

/// Canonical parameter name: beta0_j, beta1_j (beta1_j_k when p > 1), sigma_j; 1-based.
std::string parameter_name(ParameterKind kind, std::size_t component, std::size_t covariate, std::size_t p);

/// Wald intervals estimate +/- q * se with q the upper (1 - level)/2 normal
/// point. Ordered as all intercepts, then all slopes, then all scales.
std::vector<ParameterInterval> wald_ci(const ModelFit& fit, double level);

/// Sum over components and observations of the Gaussian log-density.
/// Throws DegenerateScale if any sigma is 0 and DimensionMismatch if the fit
/// and data disagree in shape.
double log_likelihood(const ModelFit& fit, const RegressionDataset& data);

struct SignificanceFlag {
  ParameterInterval interval;
  /// Set for slopes only: true iff the interval excludes zero.
  std::optional<bool> significant;
};

/// One entry per intercept and slope, in `wald_ci` order.
std::vector<SignificanceFlag> significance_report(const ModelFit& fit, double level);

/// Residuals y - [1, Z] b, n x g.
Eigen::MatrixXd residuals(const ModelFit& fit, const RegressionDataset& data);

}  // namespace compreg
