#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "compreg/regress.hpp"
#include "compreg/simulate.hpp"

/// Reference numbers reported for the 2011/2012 Super League study, used by
/// the reproduce command and the acceptance suite.
namespace compreg::published {

struct FitRow {
  std::string_view name;
  double estimate;
  double sd;
  double lower;
  double upper;
};

/// Regression results on the match table (95% intervals), in wald_ci order.
extern const std::array<FitRow, 9> kRegression;

struct ProportionRow {
  std::string_view part;
  double estimate;
  double lower;
  double upper;
};

/// Fitted proportions at z = 0 and z = 1 with 95% intervals.
extern const std::array<ProportionRow, 4> kProportionsZ0;
extern const std::array<ProportionRow, 4> kProportionsZ1;

struct SimulationRow {
  std::size_t n;
  std::string_view name;
  double mean;
  double bias;
  double mse;
  double cp;
};

/// Monte Carlo summary (1000 replicates per sample size).
extern const std::array<SimulationRow, 27> kSimulation;

/// Sample sizes of the simulation study.
inline constexpr std::array<std::size_t, 3> kSimulationSizes{70, 100, 150};

/// The study's true parameters: b0 = (0.5, -0.62, -1.68), b1 = -0.05 for all
/// components, sigma = (0.31, 0.41, 0.75), z ~ Bernoulli(0.5), 95% intervals.
SimConfig simulation_config(std::size_t n, std::uint64_t seed = 0, std::size_t replicates = 1000);

/// ModelFit carrying the reported estimates and standard deviations. The
/// coefficient covariance follows the intercept + binary-dummy design:
/// Var(b0) = sd0^2, Var(b1) = sd1^2, Cov(b0, b1) = -sd0^2, so that the
/// predictor variance at z = 1 equals sd1^2 - sd0^2.
ModelFit regression_fit();

}  // namespace compreg::published
