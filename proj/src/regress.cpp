#include "compreg/regress.hpp"

#include <cmath>

#include "compreg/error.hpp"
#include "compreg/normal.hpp"

namespace compreg {

namespace {

Eigen::MatrixXd design_matrix(const Eigen::MatrixXd& covariates) {
  Eigen::MatrixXd x(covariates.rows(), covariates.cols() + 1);
  x.col(0).setOnes();
  x.rightCols(covariates.cols()) = covariates;
  return x;
}

// Relative pivot threshold below which the design counts as collinear.
constexpr double kRankThreshold = 1e-10;

}  // namespace

void RegressionDataset::validate() const {
  if (responses.rows() != covariates.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "responses have " + std::to_string(responses.rows()) +
                                                  " rows but covariates have " + std::to_string(covariates.rows()));
  }
  if (responses.cols() < 1) throw Error(ErrorCode::DimensionTooSmall, "at least one response column is required");
  if (covariates.cols() < 1) throw Error(ErrorCode::DimensionTooSmall, "at least one covariate is required");
  if (!labels.empty() && labels.size() != g()) {
    throw Error(ErrorCode::DimensionMismatch, "label count does not match response columns");
  }
  if (n() < p() + 2) {
    throw Error(ErrorCode::TooFewObservations,
                "n = " + std::to_string(n()) + " but at least p + 2 = " + std::to_string(p() + 2) + " are required");
  }
  if (!responses.allFinite() || !covariates.allFinite()) {
    throw Error(ErrorCode::NonFinite, "dataset contains non-finite entries");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design_matrix(covariates));
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < static_cast<Eigen::Index>(p() + 1)) {
    throw Error(ErrorCode::RankDeficientDesign, "intercept-augmented design has rank " + std::to_string(qr.rank()) +
                                                    " < " + std::to_string(p() + 1));
  }
}

double ComponentFit::predictor_variance(const Eigen::VectorXd& z) const {
  Eigen::VectorXd x(z.size() + 1);
  x << 1.0, z;
  return x.dot(coef_cov * x);
}

ModelFit fit(const RegressionDataset& data, ScaleEstimator scale) {
  data.validate();
  const auto n = static_cast<double>(data.n());
  const auto p = static_cast<Eigen::Index>(data.p());
  const Eigen::MatrixXd x = design_matrix(data.covariates);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd coef = qr.solve(data.responses);  // (p+1) x g
  const Eigen::MatrixXd resid = data.responses - x * coef;
  const Eigen::MatrixXd xtx_inv = (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(p + 1, p + 1));
  const Eigen::VectorXd unit_se = xtx_inv.diagonal().cwiseSqrt();

  const double divisor = scale == ScaleEstimator::MaximumLikelihood ? n : n - static_cast<double>(p) - 1.0;

  ModelFit out;
  out.n = data.n();
  out.labels = data.labels;
  out.ref_label = data.ref_label;
  out.scale = scale;
  out.components.reserve(data.g());
  for (Eigen::Index j = 0; j < coef.cols(); ++j) {
    ComponentFit c;
    c.beta0 = coef(0, j);
    c.beta1 = coef.col(j).tail(p);
    c.rss = resid.col(j).squaredNorm();
    c.sigma = std::sqrt(c.rss / divisor);
    c.se_beta0 = c.sigma * unit_se(0);
    c.se_beta1 = c.sigma * unit_se.tail(p);
    // Fisher information of a Gaussian scale parameter: 2 m / sigma^2.
    c.se_sigma = c.sigma / std::sqrt(2.0 * divisor);
    c.coef_cov = c.sigma * c.sigma * xtx_inv;
    out.components.push_back(std::move(c));
  }
  return out;
}

std::string parameter_name(ParameterKind kind, std::size_t component, std::size_t covariate, std::size_t p) {
  const std::string j = std::to_string(component + 1);
  switch (kind) {
    case ParameterKind::Intercept: return "beta0_" + j;
    case ParameterKind::Slope: return p > 1 ? "beta1_" + j + "_" + std::to_string(covariate + 1) : "beta1_" + j;
    case ParameterKind::Scale: return "sigma_" + j;
  }
  return {};
}

std::vector<ParameterInterval> wald_ci(const ModelFit& fit, double level) {
  const double q = normal::two_sided_multiplier(level);
  const std::size_t p = fit.p();
  std::vector<ParameterInterval> out;
  out.reserve(fit.g() * (p + 2));
  auto push = [&](ParameterKind kind, std::size_t j, std::size_t k, double est, double se) {
    out.push_back({parameter_name(kind, j, k, p), kind, j, k, est, se, est - q * se, est + q * se});
  };
  for (std::size_t j = 0; j < fit.g(); ++j) {
    push(ParameterKind::Intercept, j, 0, fit.components[j].beta0, fit.components[j].se_beta0);
  }
  for (std::size_t j = 0; j < fit.g(); ++j) {
    const auto& c = fit.components[j];
    for (std::size_t k = 0; k < p; ++k) {
      push(ParameterKind::Slope, j, k, c.beta1(static_cast<Eigen::Index>(k)), c.se_beta1(static_cast<Eigen::Index>(k)));
    }
  }
  for (std::size_t j = 0; j < fit.g(); ++j) {
    push(ParameterKind::Scale, j, 0, fit.components[j].sigma, fit.components[j].se_sigma);
  }
  return out;
}

Eigen::MatrixXd residuals(const ModelFit& fit, const RegressionDataset& data) {
  if (fit.g() != data.g() || fit.p() != data.p()) {
    throw Error(ErrorCode::DimensionMismatch, "fit and dataset shapes differ");
  }
  Eigen::MatrixXd out = data.responses;
  for (std::size_t j = 0; j < fit.g(); ++j) {
    const auto& c = fit.components[j];
    const auto col = static_cast<Eigen::Index>(j);
    out.col(col).array() -= c.beta0;
    out.col(col) -= data.covariates * c.beta1;
  }
  return out;
}

double log_likelihood(const ModelFit& fit, const RegressionDataset& data) {
  const Eigen::MatrixXd resid = residuals(fit, data);
  double total = 0.0;
  for (std::size_t j = 0; j < fit.g(); ++j) {
    const double sigma = fit.components[j].sigma;
    if (!(sigma > 0.0)) {
      throw Error(ErrorCode::DegenerateScale, "sigma_" + std::to_string(j + 1) + " is zero");
    }
    for (Eigen::Index i = 0; i < resid.rows(); ++i) {
      total += normal::log_density(resid(i, static_cast<Eigen::Index>(j)), 0.0, sigma);
    }
  }
  return total;
}

std::vector<SignificanceFlag> significance_report(const ModelFit& fit, double level) {
  std::vector<SignificanceFlag> out;
  for (auto& ci : wald_ci(fit, level)) {
    if (ci.kind == ParameterKind::Scale) continue;
    SignificanceFlag flag{ci, std::nullopt};
    if (ci.kind == ParameterKind::Slope) flag.significant = ci.lower > 0.0 || ci.upper < 0.0;
    out.push_back(std::move(flag));
  }
  return out;
}

}  // namespace compreg
