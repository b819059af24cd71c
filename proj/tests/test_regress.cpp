#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "compreg/error.hpp"
#include "compreg/ingest.hpp"
#include "compreg/published.hpp"
#include "compreg/regress.hpp"
#include "oracles.hpp"

using namespace compreg;

namespace {

RegressionDataset random_dataset(std::mt19937_64& rng, Eigen::Index n, Eigen::Index g, Eigen::Index p) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> scale(0.1, 1.5);
  RegressionDataset d;
  d.covariates.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < p; ++k) d.covariates(i, k) = gauss(rng);
  }
  d.responses.resize(n, g);
  for (Eigen::Index j = 0; j < g; ++j) {
    const double b0 = coef(rng);
    Eigen::VectorXd b1(p);
    for (Eigen::Index k = 0; k < p; ++k) b1(k) = coef(rng);
    const double s = scale(rng);
    for (Eigen::Index i = 0; i < n; ++i) d.responses(i, j) = b0 + d.covariates.row(i).dot(b1) + s * gauss(rng);
  }
  return d;
}

ModelFit single_component_fit(double beta0, double slope, double se0, double se1, double sigma = 1.0) {
  ModelFit f;
  f.n = 10;
  ComponentFit c;
  c.beta0 = beta0;
  c.beta1 = Eigen::VectorXd::Constant(1, slope);
  c.se_beta0 = se0;
  c.se_beta1 = Eigen::VectorXd::Constant(1, se1);
  c.sigma = sigma;
  c.se_sigma = sigma / std::sqrt(20.0);
  c.coef_cov = Eigen::Matrix2d::Zero();
  f.components.push_back(c);
  return f;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("noiseless data is interpolated exactly") {
  RegressionDataset d;
  d.covariates.resize(6, 1);
  d.covariates << 0, 1, 0, 1, 1, 0;
  d.responses.resize(6, 2);
  for (Eigen::Index i = 0; i < 6; ++i) {
    d.responses(i, 0) = 0.7 - 0.3 * d.covariates(i, 0);
    d.responses(i, 1) = -1.25 + 2.0 * d.covariates(i, 0);
  }
  const auto f = fit(d);
  CHECK(f.components[0].beta0 == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(f.components[0].beta1(0) == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(f.components[1].beta0 == doctest::Approx(-1.25).epsilon(1e-14));
  CHECK(f.components[1].beta1(0) == doctest::Approx(2.0).epsilon(1e-14));
  for (const auto& c : f.components) {
    CHECK(c.rss < 1e-28);
    CHECK(c.sigma < 1e-14);
  }
}

TEST_CASE("closed form matches a numerical maximizer (n = 10, g = 2, p = 1)") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = random_dataset(rng, 10, 2, 1);
    const auto f = fit(d);
    for (Eigen::Index j = 0; j < 2; ++j) {
      const auto ref = oracle::numerical_ml(d.responses.col(j), d.covariates);
      const auto& c = f.components[static_cast<std::size_t>(j)];
      CHECK(std::abs(c.beta0 - ref.beta0) < 1e-6);
      CHECK(std::abs(c.beta1(0) - ref.beta1[0]) < 1e-6);
      CHECK(std::abs(c.sigma - ref.sigma) < 1e-6);
    }
  }
}

TEST_CASE("bundled match table fit") {
  // Frozen from an independent least-squares solve of the normal equations.
  const auto f = fit(to_regression_dataset(bundled_matches()));
  const double b0[] = {0.6220403003762758, -0.9887464940613958, -1.9035683440096947};
  const double b1[] = {-0.04514919928368435, -0.1707921754252854, 0.01387113516218185};
  const double s[] = {0.2604427579575288, 0.4223092289205436, 0.5788495334296855};
  const double se0[] = {0.03230394835894354, 0.0523810131237329, 0.07179744824603819};
  const double se1[] = {0.0460458312377924, 0.07466354464042589, 0.10233960098335564};
  REQUIRE(f.g() == 3);
  CHECK(f.n == 128);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& c = f.components[j];
    CHECK(c.beta0 == doctest::Approx(b0[j]).epsilon(1e-12));
    CHECK(c.beta1(0) == doctest::Approx(b1[j]).epsilon(1e-10));
    CHECK(c.sigma == doctest::Approx(s[j]).epsilon(1e-12));
    CHECK(c.se_beta0 == doctest::Approx(se0[j]).epsilon(1e-12));
    CHECK(c.se_beta1(0) == doctest::Approx(se1[j]).epsilon(1e-12));
    CHECK(c.se_sigma == doctest::Approx(s[j] / std::sqrt(256.0)).epsilon(1e-12));
    CHECK(c.sigma * c.sigma == doctest::Approx(c.rss / 128.0).epsilon(1e-14));
  }
  CHECK(f.labels == std::vector<std::string>{"attack", "block", "serve"});
  CHECK(f.ref_label == "error");
}

TEST_CASE("unbiased scale option") {
  std::mt19937_64 rng(5);
  const auto d = random_dataset(rng, 20, 1, 2);
  const auto ml = fit(d);
  const auto ub = fit(d, ScaleEstimator::Unbiased);
  CHECK(ub.components[0].beta0 == ml.components[0].beta0);
  CHECK(ub.components[0].sigma == doctest::Approx(ml.components[0].sigma * std::sqrt(20.0 / 17.0)).epsilon(1e-14));
  CHECK(ub.scale == ScaleEstimator::Unbiased);
}

TEST_CASE("fit errors") {
  RegressionDataset d;
  d.covariates.resize(5, 2);
  d.covariates << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10;
  d.responses = Eigen::MatrixXd::Random(5, 1);
  CHECK(code_of([&] { fit(d); }) == ErrorCode::RankDeficientDesign);

  d.covariates = Eigen::MatrixXd::Constant(5, 1, 1.0);
  CHECK(code_of([&] { fit(d); }) == ErrorCode::RankDeficientDesign);

  d.covariates.resize(2, 1);
  d.covariates << 0, 1;
  d.responses = Eigen::MatrixXd::Random(2, 1);
  CHECK(code_of([&] { fit(d); }) == ErrorCode::TooFewObservations);

  d.covariates.resize(4, 1);
  d.covariates << 0, 1, 0, 1;
  d.responses = Eigen::MatrixXd::Random(3, 1);
  CHECK(code_of([&] { fit(d); }) == ErrorCode::DimensionMismatch);

  d.responses = Eigen::MatrixXd::Random(4, 1);
  d.responses(2, 0) = NAN;
  CHECK(code_of([&] { fit(d); }) == ErrorCode::NonFinite);
}

TEST_CASE("wald intervals") {
  const auto a = wald_ci(single_component_fit(0.468, 0.141, 0.038, 0.080), 0.95);
  REQUIRE(a.size() == 3);
  CHECK(a[0].name == "beta0_1");
  CHECK(std::abs(a[0].lower - 0.394) < 6e-4);
  CHECK(std::abs(a[0].upper - 0.542) < 6e-4);
  CHECK(a[1].name == "beta1_1");
  CHECK(std::abs(a[1].lower - (-0.016)) < 6e-4);
  CHECK(std::abs(a[1].upper - 0.298) < 6e-4);
  CHECK(a[1].lower < 0.0);
  CHECK(a[2].kind == ParameterKind::Scale);

  const auto degenerate = wald_ci(single_component_fit(1.5, -0.2, 0.0, 0.0), 0.95);
  CHECK(degenerate[0].lower == 1.5);
  CHECK(degenerate[0].upper == 1.5);

  CHECK(code_of([] { wald_ci(single_component_fit(0, 0, 1, 1), 1.0); }) == ErrorCode::InvalidLevel);
  CHECK(code_of([] { wald_ci(single_component_fit(0, 0, 1, 1), 0.0); }) == ErrorCode::InvalidLevel);

  double previous = 0.0;
  for (double level : {0.5, 0.8, 0.9, 0.95, 0.99, 0.999}) {
    const auto ci = wald_ci(single_component_fit(0, 0, 0.3, 0.4), level);
    const double width = ci[1].upper - ci[1].lower;
    CHECK(width > previous);
    previous = width;
  }
}

TEST_CASE("parameter names for p > 1") {
  std::mt19937_64 rng(1);
  const auto ci = wald_ci(fit(random_dataset(rng, 12, 2, 2)), 0.9);
  std::vector<std::string> names;
  for (const auto& c : ci) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"beta0_1", "beta0_2", "beta1_1_1", "beta1_1_2", "beta1_2_1", "beta1_2_2",
                                          "sigma_1", "sigma_2"});
}

TEST_CASE("log likelihood") {
  RegressionDataset d;
  d.covariates.resize(2, 1);
  d.covariates << 0, 1;
  d.responses.resize(2, 1);
  d.responses << 0.5, 0.8;
  auto f = single_component_fit(0.5, 0.3, 0.1, 0.1, 1.0);
  CHECK(log_likelihood(f, d) == doctest::Approx(-std::log(2 * std::numbers::pi)).epsilon(1e-15));

  f.components[0].sigma = 0.0;
  CHECK(code_of([&] { log_likelihood(f, d); }) == ErrorCode::DegenerateScale);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto data = random_dataset(rng, 8 + trial, 1 + trial % 3, 1 + trial % 2);
    const auto fitted = fit(data);
    const double best = log_likelihood(fitted, data);
    CHECK(std::abs(best - oracle::brute_force_log_likelihood(fitted, data)) < 1e-10);
    for (double delta : {-0.1, 0.1}) {
      auto perturbed = fitted;
      perturbed.components[0].beta0 += delta;
      CHECK(log_likelihood(perturbed, data) <= best);
    }
  }
}

TEST_CASE("significance report") {
  const auto flags = significance_report(published::regression_fit(), 0.95);
  REQUIRE(flags.size() == 6);
  for (int j = 0; j < 3; ++j) CHECK_FALSE(flags[static_cast<std::size_t>(j)].significant.has_value());
  CHECK(flags[3].significant == true);
  CHECK(flags[4].significant == false);
  CHECK(flags[5].significant == true);

  const auto zero_se = significance_report(single_component_fit(0.0, 0.01, 0.0, 0.0), 0.95);
  CHECK(zero_se[1].significant == true);

  // Null slopes: false flags at roughly the nominal 5% rate.
  std::mt19937_64 rng(31337);
  std::normal_distribution<double> gauss;
  int clean = 0;
  const int replicates = 400;
  for (int r = 0; r < replicates; ++r) {
    RegressionDataset d;
    d.covariates.resize(60, 1);
    d.responses.resize(60, 1);
    for (Eigen::Index i = 0; i < 60; ++i) {
      d.covariates(i, 0) = static_cast<double>(i % 2);
      d.responses(i, 0) = 0.3 + 0.5 * gauss(rng);
    }
    const auto report = significance_report(fit(d), 0.95);
    if (!report[1].significant.value()) ++clean;
  }
  CHECK(clean >= 0.9 * replicates);
}

TEST_CASE("properties: independence, orthogonality, equivariance") {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index g = 3, p = 1 + trial % 3, n = 10 + trial;
    const auto d = random_dataset(rng, n, g, p);
    const auto f = fit(d);

    // Permuting response columns permutes the component fits.
    RegressionDataset permuted = d;
    permuted.responses.col(0) = d.responses.col(2);
    permuted.responses.col(2) = d.responses.col(0);
    const auto fp = fit(permuted);
    CHECK(fp.components[0].beta0 == doctest::Approx(f.components[2].beta0).epsilon(1e-12));
    CHECK(fp.components[2].sigma == doctest::Approx(f.components[0].sigma).epsilon(1e-12));
    CHECK(fp.components[1].beta0 == f.components[1].beta0);

    const Eigen::MatrixXd r = residuals(f, d);
    for (Eigen::Index j = 0; j < g; ++j) {
      CHECK(std::abs(r.col(j).sum()) < 1e-9);
      for (Eigen::Index k = 0; k < p; ++k) CHECK(std::abs(r.col(j).dot(d.covariates.col(k))) < 1e-9);
    }

    RegressionDataset shifted = d;
    shifted.responses.col(1).array() += 3.25;
    const auto fs = fit(shifted);
    CHECK(std::abs(fs.components[1].beta0 - f.components[1].beta0 - 3.25) < 1e-12);
    CHECK((fs.components[1].beta1 - f.components[1].beta1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(fs.components[1].sigma == doctest::Approx(f.components[1].sigma).epsilon(1e-10));
    CHECK(fs.components[0].beta0 == f.components[0].beta0);
  }
}
