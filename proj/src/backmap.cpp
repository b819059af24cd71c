#include "compreg/backmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "compreg/error.hpp"
#include "compreg/normal.hpp"
#include "compreg/random.hpp"

namespace compreg {

namespace {

void check_covariate(const ModelFit& fit, const Eigen::VectorXd& z) {
  if (static_cast<std::size_t>(z.size()) != fit.p()) {
    throw Error(ErrorCode::DimensionMismatch,
                "covariate has " + std::to_string(z.size()) + " entries, fit expects " + std::to_string(fit.p()));
  }
  if (!z.allFinite()) throw Error(ErrorCode::NonFinite, "covariate is not finite");
}

std::vector<std::string> part_labels(const ModelFit& fit) {
  if (fit.labels.size() != fit.g()) return {};
  auto labels = fit.labels;
  labels.push_back(fit.ref_label.empty() ? "reference" : fit.ref_label);
  return labels;
}

// Inverse transform written out directly (no shift), an independent route
// from alr_inverse.
std::vector<double> proportions_from_predictors(const Eigen::VectorXd& eta) {
  for (Eigen::Index j = 0; j < eta.size(); ++j) {
    if (std::abs(eta(j)) > kLogRatioLimit) {
      throw Error(ErrorCode::OverflowGuard, "linear predictor " + std::to_string(j + 1) + " exceeds +/-700");
    }
  }
  std::vector<double> alphas(static_cast<std::size_t>(eta.size()) + 1);
  double denom = 1.0;
  for (Eigen::Index j = 0; j < eta.size(); ++j) {
    alphas[static_cast<std::size_t>(j)] = std::exp(eta(j));
    denom += alphas[static_cast<std::size_t>(j)];
  }
  alphas.back() = 1.0;
  for (double& a : alphas) a = std::max(a / denom, std::numeric_limits<double>::min());
  return alphas;
}

// Interpolated empirical quantile (Hyndman-Fan type 7) of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double prob) {
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

// Symmetric square root of a PSD covariance; tolerates singular matrices.
Eigen::MatrixXd covariance_root(const Eigen::MatrixXd& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

Eigen::VectorXd linear_predictors(const ModelFit& fit, const Eigen::VectorXd& z) {
  check_covariate(fit, z);
  Eigen::VectorXd eta(static_cast<Eigen::Index>(fit.g()));
  for (std::size_t j = 0; j < fit.g(); ++j) eta(static_cast<Eigen::Index>(j)) = fit.components[j].linear_predictor(z);
  return eta;
}

Composition estimate_proportions(const ModelFit& fit, const Eigen::VectorXd& z) {
  return Composition::from_parts(proportions_from_predictors(linear_predictors(fit, z)), part_labels(fit));
}

ProportionEstimate proportion_ci_delta(const ModelFit& fit, const Eigen::VectorXd& z, double level) {
  const double q = normal::two_sided_multiplier(level);
  Composition alphas = estimate_proportions(fit, z);
  const std::size_t g = fit.g();

  std::vector<double> eta_var(g);
  for (std::size_t k = 0; k < g; ++k) eta_var[k] = std::max(0.0, fit.components[k].predictor_variance(z));

  ProportionEstimate out{alphas, z, {}, level, IntervalMethod::Delta, false};
  constexpr double kLowest = std::numeric_limits<double>::min();
  const double highest = std::nextafter(1.0, 0.0);
  for (std::size_t j = 0; j <= g; ++j) {
    // d alpha_j / d eta_k = alpha_j (1[j == k] - alpha_k); the reference part never matches k.
    double var = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
      const double grad = alphas[j] * ((j == k ? 1.0 : 0.0) - alphas[k]);
      var += grad * grad * eta_var[k];
    }
    const double half = q * std::sqrt(var);
    double lo = alphas[j] - half;
    double hi = alphas[j] + half;
    if (lo <= 0.0) {
      lo = std::min(kLowest, alphas[j]);
      out.clamped = true;
    }
    if (hi >= 1.0) {
      hi = std::max(highest, alphas[j]);
      out.clamped = true;
    }
    out.intervals.emplace_back(lo, hi);
  }
  return out;
}

ProportionEstimate proportion_ci_bootstrap(const ModelFit& fit, const Eigen::VectorXd& z, double level,
                                           std::size_t draws, std::uint64_t seed, unsigned threads) {
  normal::two_sided_multiplier(level);  // validates level
  if (draws < kMinBootstrapDraws) {
    throw Error(ErrorCode::BTooSmall, "bootstrap needs at least " + std::to_string(kMinBootstrapDraws) +
                                          " draws, got " + std::to_string(draws));
  }
  Composition alphas = estimate_proportions(fit, z);
  const std::size_t g = fit.g();
  const std::size_t parts = g + 1;
  const auto coefs = static_cast<Eigen::Index>(fit.p() + 1);

  Eigen::VectorXd x(coefs);
  x << 1.0, z;
  std::vector<Eigen::MatrixXd> roots;
  std::vector<Eigen::VectorXd> centers;
  for (const auto& c : fit.components) {
    roots.push_back(covariance_root(c.coef_cov));
    Eigen::VectorXd center(coefs);
    center << c.beta0, c.beta1;
    centers.push_back(std::move(center));
  }

  // Row-major slots: draw b occupies [b * parts, (b + 1) * parts).
  std::vector<double> samples(draws * parts);
  auto work = [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd eta(static_cast<Eigen::Index>(g));
    Eigen::VectorXd xi(coefs);
    for (std::size_t b = begin; b < end; ++b) {
      for (std::size_t j = 0; j < g; ++j) {
        CounterRng rng(seed, b, static_cast<std::uint32_t>(j));
        for (Eigen::Index k = 0; k < coefs; ++k) xi(k) = rng.normal();
        eta(static_cast<Eigen::Index>(j)) = x.dot(centers[j] + roots[j] * xi);
      }
      const auto a = proportions_from_predictors(eta);
      std::copy(a.begin(), a.end(), samples.begin() + static_cast<std::ptrdiff_t>(b * parts));
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, draws));
  if (workers <= 1) {
    work(0, draws);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (draws + workers - 1) / workers;
    for (std::size_t begin = 0; begin < draws; begin += chunk) {
      pool.emplace_back(work, begin, std::min(draws, begin + chunk));
    }
  }

  const double lower_prob = 0.5 * (1.0 - level);
  ProportionEstimate out{alphas, z, {}, level, IntervalMethod::Bootstrap, false};
  std::vector<double> column(draws);
  for (std::size_t j = 0; j < parts; ++j) {
    for (std::size_t b = 0; b < draws; ++b) column[b] = samples[b * parts + j];
    std::sort(column.begin(), column.end());
    // Widen to the point estimate if a skewed sample leaves it outside.
    const double lo = std::min(sorted_quantile(column, lower_prob), alphas[j]);
    const double hi = std::max(sorted_quantile(column, 1.0 - lower_prob), alphas[j]);
    out.intervals.emplace_back(lo, hi);
  }
  return out;
}

}  // namespace compreg
