#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "cnbe/grid.hpp"
#include "cnbe/kernels.hpp"
#include "cnbe/margins.hpp"
#include "cnbe/rng.hpp"

namespace cnbe {

enum class ProcessFamily : int {
    gp = 0,
    msp_brown_resnick = 1,
    imsp_brown_resnick = 2,
    r_pareto_max = 3,
    hw_mixture = 4,
};

const char* family_name(ProcessFamily family);
ProcessFamily family_from_name(const std::string& name);

// One spatial dependence model pinned to a grid. lambda/kappa parameterize
// the Matern correlation (gp, hw) or the power variogram (the three
// Brown-Resnick-driven families); delta is the hw mixture weight.
struct ProcessSpec {
    ProcessFamily family = ProcessFamily::gp;
    double lambda = 4.0;
    double kappa = 1.0;
    double delta = 0.5;  // hw_mixture only
    std::optional<AnisotropyParams> aniso;
    Grid grid;

    void validate() const;
    [[nodiscard]] CovarianceModel dependence_model() const;
    [[nodiscard]] MarginTag native_margin() const;
    [[nodiscard]] int param_count() const;  // 2 (+1 hw) (+2 aniso)
    [[nodiscard]] Eigen::VectorXd param_vector() const;
    void set_params(const Eigen::VectorXd& theta);
};

// m independent gridded fields from one process at one parameter vector,
// on the margins declared by margin_tag.
struct ReplicateSet {
    ProcessSpec spec;
    int m = 0;
    MarginTag margin_tag = MarginTag::uniform;
    Eigen::MatrixXd data;  // m x d, row t = replicate t (sites in grid order)
};

// Simulators. Each consumes only the provided rng and is deterministic
// given (spec, m, seed).
ReplicateSet simulate_gp_uniform(const ProcessSpec& spec, int m, Rng& rng);
ReplicateSet simulate_gp_pareto(const ProcessSpec& spec, int m, Rng& rng);
ReplicateSet simulate_brown_resnick(const ProcessSpec& spec, int m, Rng& rng);
ReplicateSet simulate_inverted_msp(const ProcessSpec& spec, int m, Rng& rng);
ReplicateSet simulate_r_pareto_max(const ProcessSpec& spec, int m, Rng& rng);
ReplicateSet simulate_hw(const ProcessSpec& spec, int m, Rng& rng);

// Dispatch on spec.family.
ReplicateSet simulate(const ProcessSpec& spec, int m, Rng& rng);

// Exact CDF of R^delta W^(1-delta) for independent unit Pareto R, W.
// Support [1, inf); returns 0 below 1 by convention.
double hw_marginal_cdf(double z, double delta);
double hw_marginal_survival(double z, double delta);

// Sitewise probability-integral transform to the target margin.
ReplicateSet marginal_transform(const ReplicateSet& set, MarginTag target);

// Brown-Resnick tail-correlation chi(h) = 2 - V(1,1) for the pair exponent
// with variogram gamma(h). Applies to the msp and r-Pareto families.
double chi_analytic(const ProcessSpec& spec, double h);

// Empirical chi at level q from ranks; returns nullopt when there are no
// conditioning exceedances.
std::optional<double> empirical_chi(const ReplicateSet& set, int site_i, int site_j, double q);

}  // namespace cnbe
