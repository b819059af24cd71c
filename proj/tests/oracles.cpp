#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace oracle {

namespace {

double nm_pass(const std::function<double(const std::vector<double>&)>& f, std::vector<double>& best, double step,
               double tolerance) {
  const std::size_t d = best.size();
  std::vector<std::vector<double>> simplex(d + 1, best);
  for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(d + 1);
  for (std::size_t i = 0; i <= d; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(d + 1);
  for (int iter = 0; iter < 200000; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const auto lo = order.front();
    const auto hi = order.back();
    const auto second = order[d - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= d; ++i) {
      for (std::size_t k = 0; k < d; ++k) diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[lo][k]));
    }
    if (diameter < tolerance) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == hi) continue;
      for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k] / static_cast<double>(d);
    }
    auto along = [&](double t) {
      std::vector<double> p(d);
      for (std::size_t k = 0; k < d; ++k) p[k] = centroid[k] + t * (simplex[hi][k] - centroid[k]);
      return p;
    };
    auto reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < values[lo]) {
      auto expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[hi] = expanded;
        values[hi] = fe;
      } else {
        simplex[hi] = reflected;
        values[hi] = fr;
      }
    } else if (fr < values[second]) {
      simplex[hi] = reflected;
      values[hi] = fr;
    } else {
      auto contracted = fr < values[hi] ? along(-0.5) : along(0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, values[hi])) {
        simplex[hi] = contracted;
        values[hi] = fc;
      } else {
        for (std::size_t i = 0; i <= d; ++i) {
          if (i == lo) continue;
          for (std::size_t k = 0; k < d; ++k) simplex[i][k] = simplex[lo][k] + 0.5 * (simplex[i][k] - simplex[lo][k]);
          values[i] = f(simplex[i]);
        }
      }
    }
  }
  const auto best_index = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  best = simplex[best_index];
  return values[best_index];
}

}  // namespace

std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                                double step, double tolerance, int max_restarts) {
  double previous = nm_pass(f, start, step, tolerance);
  // Restart from the optimum with shrinking steps until the value stops moving.
  for (int r = 0; r < max_restarts; ++r) {
    step = std::max(step * 0.5, 100.0 * tolerance);
    std::vector<double> candidate = start;
    const double value = nm_pass(f, candidate, step, tolerance);
    const bool same = std::abs(value - previous) <= 1e-15 * std::max(1.0, std::abs(value));
    if (value <= previous) {
      start = candidate;
      previous = value;
    }
    if (same && r >= 2) break;
  }
  return start;
}

ComponentEstimate numerical_ml(const Eigen::VectorXd& y, const Eigen::MatrixXd& z) {
  const auto n = y.size();
  const auto p = z.cols();
  auto negative_loglik = [&](const std::vector<double>& theta) {
    const double log_s = theta.back();
    const double s2 = std::exp(2.0 * log_s);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double mean = theta[0];
      for (Eigen::Index k = 0; k < p; ++k) mean += theta[static_cast<std::size_t>(k + 1)] * z(i, k);
      const double r = y(i) - mean;
      sum += 0.5 * std::log(2.0 * std::numbers::pi * s2) + r * r / (2.0 * s2);
    }
    return sum;
  };
  std::vector<double> start(static_cast<std::size_t>(p + 2), 0.0);
  start[0] = y.mean();
  start.back() = std::log(std::max(1e-3, std::sqrt((y.array() - y.mean()).square().mean())));
  const auto best = nelder_mead(negative_loglik, start, 0.5, 1e-11);
  ComponentEstimate out;
  out.beta0 = best[0];
  out.beta1.assign(best.begin() + 1, best.end() - 1);
  out.sigma = std::exp(best.back());
  return out;
}

double brute_force_log_likelihood(const compreg::ModelFit& fit, const compreg::RegressionDataset& data) {
  double total = 0.0;
  for (std::size_t j = 0; j < fit.g(); ++j) {
    const auto& c = fit.components[j];
    for (Eigen::Index i = 0; i < data.responses.rows(); ++i) {
      double mean = c.beta0;
      for (Eigen::Index k = 0; k < data.covariates.cols(); ++k) mean += c.beta1(k) * data.covariates(i, k);
      const double r = data.responses(i, static_cast<Eigen::Index>(j)) - mean;
      const double density =
          std::exp(-r * r / (2.0 * c.sigma * c.sigma)) / std::sqrt(2.0 * std::numbers::pi * c.sigma * c.sigma);
      total += std::log(density);
    }
  }
  return total;
}

double bisection_quantile(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
