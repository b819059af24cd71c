#include "compreg/published.hpp"

namespace compreg::published {

const std::array<FitRow, 9> kRegression{{
    {"beta0_1", 0.468, 0.038, 0.394, 0.542},
    {"beta0_2", -1.168, 0.066, -1.296, -1.039},
    {"beta0_3", -2.072, 0.087, -2.244, -1.901},
    {"beta1_1", 0.196, 0.046, 0.105, 0.286},
    {"beta1_2", 0.141, 0.080, -0.016, 0.298},
    {"beta1_3", 0.262, 0.106, 0.053, 0.470},
    {"sigma_1", 0.245, 0.015, 0.215, 0.275},
    {"sigma_2", 0.426, 0.027, 0.374, 0.478},
    {"sigma_3", 0.566, 0.035, 0.496, 0.635},
}};

const std::array<ProportionRow, 4> kProportionsZ0{{
    {"attack", 0.526, 0.518, 0.533},
    {"block", 0.102, 0.096, 0.110},
    {"serve", 0.041, 0.037, 0.046},
    {"error", 0.330, 0.310, 0.349},
}};

const std::array<ProportionRow, 4> kProportionsZ1{{
    {"attack", 0.561, 0.544, 0.571},
    {"block", 0.103, 0.089, 0.119},
    {"serve", 0.047, 0.037, 0.060},
    {"error", 0.289, 0.250, 0.330},
}};

const std::array<SimulationRow, 27> kSimulation{{
    {70, "beta0_1", 0.55937, 0.05937, 0.00484, 0.999},
    {70, "beta0_2", -0.66107, -0.04107, 0.00482, 0.996},
    {70, "beta0_3", -1.71249, -0.03249, 0.01519, 0.845},
    {70, "beta1_1", -0.00381, 0.04619, 0.00482, 0.997},
    {70, "beta1_2", -0.00499, 0.04501, 0.00838, 0.953},
    {70, "beta1_3", -0.00600, 0.04400, 0.02937, 0.697},
    {70, "sigma_1", 0.20948, -0.10052, 0.01166, 0.992},
    {70, "sigma_2", 0.32658, -0.08342, 0.00786, 0.999},
    {70, "sigma_3", 0.70435, -0.04565, 0.00475, 0.987},
    {100, "beta0_1", 0.55960, 0.05960, 0.00439, 0.988},
    {100, "beta0_2", -0.66270, -0.04270, 0.00385, 0.990},
    {100, "beta0_3", -1.70867, -0.02867, 0.01055, 0.847},
    {100, "beta1_1", -0.00211, 0.04789, 0.00422, 0.989},
    {100, "beta1_2", -0.00185, 0.04815, 0.00685, 0.929},
    {100, "beta1_3", -0.00854, 0.04146, 0.02198, 0.660},
    {100, "sigma_1", 0.21027, -0.09973, 0.01191, 0.988},
    {100, "sigma_2", 0.32972, -0.08027, 0.00677, 0.999},
    {100, "sigma_3", 0.70926, -0.04074, 0.00365, 0.992},
    {150, "beta0_1", 0.55753, 0.05753, 0.00392, 0.984},
    {150, "beta0_2", -0.66294, -0.04294, 0.00324, 0.985},
    {150, "beta0_3", -1.71676, -0.03676, 0.00785, 0.828},
    {150, "beta1_1", 0.00118, 0.05118, 0.00394, 0.971},
    {150, "beta1_2", -0.00009, 0.04991, 0.00563, 0.895},
    {150, "beta1_3", 0.00359, 0.05359, 0.01727, 0.624},
    {150, "sigma_1", 0.21458, -0.09542, 0.00924, 0.967},
    {150, "sigma_2", 0.33079, -0.07920, 0.00651, 0.992},
    {150, "sigma_3", 0.71310, -0.03690, 0.00275, 0.973},
}};

SimConfig simulation_config(std::size_t n, std::uint64_t seed, std::size_t replicates) {
  SimConfig c;
  c.n = n;
  c.replicates = replicates;
  c.true_beta0 = {0.5, -0.62, -1.68};
  c.true_beta1 = {-0.05, -0.05, -0.05};
  c.true_sigma = {0.31, 0.41, 0.75};
  c.covariate_prob = 0.5;
  c.ci_level = 0.95;
  c.seed = seed;
  return c;
}

ModelFit regression_fit() {
  ModelFit fit;
  fit.n = 128;
  fit.labels = {"attack", "block", "serve"};
  fit.ref_label = "error";
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& b0 = kRegression[j];
    const auto& b1 = kRegression[3 + j];
    const auto& s = kRegression[6 + j];
    ComponentFit c;
    c.beta0 = b0.estimate;
    c.beta1 = Eigen::VectorXd::Constant(1, b1.estimate);
    c.sigma = s.estimate;
    c.se_beta0 = b0.sd;
    c.se_beta1 = Eigen::VectorXd::Constant(1, b1.sd);
    c.se_sigma = s.sd;
    c.rss = s.estimate * s.estimate * static_cast<double>(fit.n);
    c.coef_cov.resize(2, 2);
    c.coef_cov << b0.sd * b0.sd, -b0.sd * b0.sd, -b0.sd * b0.sd, b1.sd * b1.sd;
    fit.components.push_back(std::move(c));
  }
  return fit;
}

}  // namespace compreg::published
