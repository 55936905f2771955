#include "cnbe/process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "cnbe/common.hpp"
#include "cnbe/hr.hpp"
#include "cnbe/spd.hpp"

namespace cnbe {

const char* family_name(ProcessFamily family) {
    switch (family) {
        case ProcessFamily::gp: return "gp";
        case ProcessFamily::msp_brown_resnick: return "msp";
        case ProcessFamily::imsp_brown_resnick: return "imsp";
        case ProcessFamily::r_pareto_max: return "rpareto";
        case ProcessFamily::hw_mixture: return "hw";
    }
    return "?";
}

ProcessFamily family_from_name(const std::string& name) {
    if (name == "gp") return ProcessFamily::gp;
    if (name == "msp" || name == "msp_brown_resnick") return ProcessFamily::msp_brown_resnick;
    if (name == "imsp" || name == "imsp_brown_resnick") return ProcessFamily::imsp_brown_resnick;
    if (name == "rpareto" || name == "r_pareto_max") return ProcessFamily::r_pareto_max;
    if (name == "hw" || name == "hw_mixture") return ProcessFamily::hw_mixture;
    throw std::invalid_argument("unknown process family: " + name);
}

void ProcessSpec::validate() const {
    dependence_model().validate();
    if (family == ProcessFamily::hw_mixture && !(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("ProcessSpec: delta must lie in [0, 1]");
    if (grid.g < 1 || grid.sites.rows() != grid.d())
        throw std::invalid_argument("ProcessSpec: grid not built");
    if (aniso && !(aniso->stretch > 0.0))
        throw std::invalid_argument("ProcessSpec: anisotropy stretch must be > 0");
}

CovarianceModel ProcessSpec::dependence_model() const {
    const bool gauss = family == ProcessFamily::gp || family == ProcessFamily::hw_mixture;
    return CovarianceModel{gauss ? KernelKind::matern_correlation : KernelKind::power_variogram,
                           lambda, kappa};
}

MarginTag ProcessSpec::native_margin() const {
    switch (family) {
        case ProcessFamily::gp: return MarginTag::uniform;
        case ProcessFamily::msp_brown_resnick: return MarginTag::unit_frechet;
        case ProcessFamily::imsp_brown_resnick: return MarginTag::exponential;
        case ProcessFamily::r_pareto_max: return MarginTag::unit_pareto;
        case ProcessFamily::hw_mixture: return MarginTag::unit_pareto;
    }
    return MarginTag::uniform;
}

int ProcessSpec::param_count() const {
    int p = 2;
    if (family == ProcessFamily::hw_mixture) ++p;
    if (aniso) p += 2;
    return p;
}

Eigen::VectorXd ProcessSpec::param_vector() const {
    Eigen::VectorXd theta(param_count());
    int k = 0;
    theta(k++) = lambda;
    theta(k++) = kappa;
    if (family == ProcessFamily::hw_mixture) theta(k++) = delta;
    if (aniso) {
        theta(k++) = aniso->stretch;
        theta(k++) = aniso->rotation;
    }
    return theta;
}

void ProcessSpec::set_params(const Eigen::VectorXd& theta) {
    if (theta.size() != param_count())
        throw std::invalid_argument("ProcessSpec::set_params: wrong parameter count");
    int k = 0;
    lambda = theta(k++);
    kappa = theta(k++);
    if (family == ProcessFamily::hw_mixture) delta = theta(k++);
    if (aniso) {
        aniso->stretch = theta(k++);
        aniso->rotation = theta(k++);
    }
}

namespace {

SpdFactor matern_factor(const ProcessSpec& spec) {
    const Eigen::MatrixXd dist = pairwise_distances(spec.grid, spec.aniso);
    const CovarianceModel model = spec.dependence_model();
    const int d = spec.grid.d();
    Eigen::MatrixXd cov(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const double v = kernel_eval(model, dist(i, j));
            cov(i, j) = v;
            cov(j, i) = v;
        }
    return cholesky_spd(cov);
}

// One exact Brown-Resnick field (unit Frechet margins) via the
// extremal-functions sweep: per site, a decreasing Poisson cascade of
// candidate spectral functions anchored there, kept only when they do not
// contradict values already fixed at earlier sites.
Eigen::VectorXd brown_resnick_field(const IncrementSampler& sampler, const Eigen::MatrixXd& gamma,
                                    Rng& rng) {
    const int d = sampler.dim();
    Eigen::VectorXd field = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd candidate(d);
    for (int n = 0; n < d; ++n) {
        double arrivals = rng.exponential();
        double zeta = 1.0 / arrivals;
        while (zeta > field(n)) {
            const Eigen::VectorXd eta = sampler.draw_anchored(n, rng);
            for (int i = 0; i < d; ++i) candidate(i) = zeta * std::exp(eta(i) - gamma(i, n));
            bool valid = true;
            for (int k = 0; k < n; ++k) {
                if (candidate(k) >= field(k)) {
                    valid = false;
                    break;
                }
            }
            if (valid) field = field.cwiseMax(candidate);
            arrivals += rng.exponential();
            zeta = 1.0 / arrivals;
        }
    }
    return field;
}

struct BrContext {
    IncrementSampler sampler;
    Eigen::MatrixXd gamma;  // d x d variogram matrix

    BrContext(const ProcessSpec& spec)
        : sampler(spec.dependence_model(), pairwise_distances(spec.grid, spec.aniso)),
          gamma([&] {
              const Eigen::MatrixXd dist = pairwise_distances(spec.grid, spec.aniso);
              const CovarianceModel model = spec.dependence_model();
              Eigen::MatrixXd g(dist.rows(), dist.cols());
              for (Eigen::Index i = 0; i < dist.rows(); ++i)
                  for (Eigen::Index j = 0; j < dist.cols(); ++j)
                      g(i, j) = kernel_eval(model, dist(i, j));
              return g;
          }()) {}
};

}  // namespace

ReplicateSet simulate_gp_uniform(const ProcessSpec& spec, int m, Rng& rng) {
    if (spec.family != ProcessFamily::gp)
        throw std::invalid_argument("simulate_gp_uniform: family must be gp");
    spec.validate();
    if (m < 1) throw std::invalid_argument("simulate_gp_uniform: m must be >= 1");
    const SpdFactor factor = matern_factor(spec);
    const int d = spec.grid.d();
    ReplicateSet set{spec, m, MarginTag::uniform, Eigen::MatrixXd(m, d)};
    for (int t = 0; t < m; ++t) {
        const Eigen::VectorXd z = gp_sample(factor, rng);
        for (int j = 0; j < d; ++j) set.data(t, j) = std_normal_cdf(z(j));
    }
    return set;
}

ReplicateSet simulate_gp_pareto(const ProcessSpec& spec, int m, Rng& rng) {
    ProcessSpec gp_spec = spec;
    gp_spec.family = ProcessFamily::gp;
    gp_spec.validate();
    if (m < 1) throw std::invalid_argument("simulate_gp_pareto: m must be >= 1");
    const SpdFactor factor = matern_factor(gp_spec);
    const int d = spec.grid.d();
    ReplicateSet set{gp_spec, m, MarginTag::unit_pareto, Eigen::MatrixXd(m, d)};
    for (int t = 0; t < m; ++t) {
        const Eigen::VectorXd z = gp_sample(factor, rng);
        // 1 / survival keeps relative precision deep in the upper tail.
        for (int j = 0; j < d; ++j) set.data(t, j) = 1.0 / std_normal_survival(z(j));
    }
    return set;
}

ReplicateSet simulate_brown_resnick(const ProcessSpec& spec, int m, Rng& rng) {
    if (spec.family != ProcessFamily::msp_brown_resnick)
        throw std::invalid_argument("simulate_brown_resnick: family must be msp");
    spec.validate();
    if (m < 1) throw std::invalid_argument("simulate_brown_resnick: m must be >= 1");
    const BrContext ctx(spec);
    const int d = spec.grid.d();
    ReplicateSet set{spec, m, MarginTag::unit_frechet, Eigen::MatrixXd(m, d)};
    for (int t = 0; t < m; ++t)
        set.data.row(t) = brown_resnick_field(ctx.sampler, ctx.gamma, rng).transpose();
    return set;
}

ReplicateSet simulate_inverted_msp(const ProcessSpec& spec, int m, Rng& rng) {
    if (spec.family != ProcessFamily::imsp_brown_resnick)
        throw std::invalid_argument("simulate_inverted_msp: family must be imsp");
    ProcessSpec msp_spec = spec;
    msp_spec.family = ProcessFamily::msp_brown_resnick;
    ReplicateSet set = simulate_brown_resnick(msp_spec, m, rng);
    set.spec = spec;
    set.margin_tag = MarginTag::exponential;
    set.data = set.data.cwiseInverse();  // 1/Frechet(1) is exactly Exp(1)
    return set;
}

ReplicateSet simulate_r_pareto_max(const ProcessSpec& spec, int m, Rng& rng) {
    if (spec.family != ProcessFamily::r_pareto_max)
        throw std::invalid_argument("simulate_r_pareto_max: family must be rpareto");
    spec.validate();
    if (m < 1) throw std::invalid_argument("simulate_r_pareto_max: m must be >= 1");
    const BrContext ctx(spec);
    const int d = spec.grid.d();
    ReplicateSet set{spec, m, MarginTag::unit_pareto, Eigen::MatrixXd(m, d)};
    Eigen::VectorXd profile(d);
    const long max_proposals = 10000L * static_cast<long>(m) * d;  // 1e-4 acceptance floor
    long proposals = 0;
    for (int t = 0; t < m; ++t) {
        for (;;) {
            if (++proposals > max_proposals)
                throw numerical_error(
                    "simulate_r_pareto_max: acceptance rate below 1e-4; "
                    "check variogram parameters for pathologies");
            // Sum-risk Pareto proposal: uniformly anchored extremal function,
            // normalized to unit total mass.
            const int anchor = static_cast<int>(rng.uniform_index(d));
            const Eigen::VectorXd eta = ctx.sampler.draw_anchored(anchor, rng);
            for (int i = 0; i < d; ++i) profile(i) = std::exp(eta(i) - ctx.gamma(i, anchor));
            const double total = profile.sum();
            const double peak = profile.maxCoeff();
            // Change of risk functional to the max: accept w.p. max/sum <= 1.
            if (rng.uniform() < peak / total) {
                const double radius = rng.pareto();
                set.data.row(t) = (radius / peak) * profile.transpose();
                break;
            }
        }
    }
    return set;
}

double hw_marginal_cdf(double z, double delta) {
    return 1.0 - hw_marginal_survival(z, delta);
}

double hw_marginal_survival(double z, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("hw_marginal_survival: delta must lie in [0, 1]");
    if (z < 1.0) return 1.0;
    if (delta == 0.0 || delta == 1.0) return 1.0 / z;
    const double diff = 2.0 * delta - 1.0;
    if (std::abs(diff) < 1e-7) {
        // log Z is Gamma(2, rate 2) at delta = 1/2; use the analytic limit
        // where the generic expression would cancel.
        const double lz = std::log(z);
        return (1.0 + 2.0 * lz) * std::exp(-2.0 * lz);
    }
    return (delta * std::pow(z, -1.0 / delta) -
            (1.0 - delta) * std::pow(z, -1.0 / (1.0 - delta))) /
           diff;
}

ReplicateSet simulate_hw(const ProcessSpec& spec, int m, Rng& rng) {
    if (spec.family != ProcessFamily::hw_mixture)
        throw std::invalid_argument("simulate_hw: family must be hw");
    spec.validate();
    if (m < 1) throw std::invalid_argument("simulate_hw: m must be >= 1");
    Rng rng_w = rng.split(0);
    Rng rng_r = rng.split(1);
    ReplicateSet set = simulate_gp_pareto(spec, m, rng_w);
    set.spec = spec;
    const int d = spec.grid.d();
    const double delta = spec.delta;
    for (int t = 0; t < m; ++t) {
        const double radius = rng_r.pareto();
        if (delta == 0.0) continue;  // Z = W exactly
        if (delta == 1.0) {
            set.data.row(t).setConstant(radius);  // Z = R at every site
            continue;
        }
        const double r_part = delta * std::log(radius);
        for (int j = 0; j < d; ++j) {
            const double z0 = std::exp(r_part + (1.0 - delta) * std::log(set.data(t, j)));
            set.data(t, j) = 1.0 / hw_marginal_survival(z0, delta);
        }
    }
    return set;
}

ReplicateSet simulate(const ProcessSpec& spec, int m, Rng& rng) {
    switch (spec.family) {
        case ProcessFamily::gp: return simulate_gp_uniform(spec, m, rng);
        case ProcessFamily::msp_brown_resnick: return simulate_brown_resnick(spec, m, rng);
        case ProcessFamily::imsp_brown_resnick: return simulate_inverted_msp(spec, m, rng);
        case ProcessFamily::r_pareto_max: return simulate_r_pareto_max(spec, m, rng);
        case ProcessFamily::hw_mixture: return simulate_hw(spec, m, rng);
    }
    throw std::invalid_argument("simulate: unknown family");
}

ReplicateSet marginal_transform(const ReplicateSet& set, MarginTag target) {
    ReplicateSet out = set;
    if (target == set.margin_tag) return out;
    for (Eigen::Index t = 0; t < set.data.rows(); ++t) {
        for (Eigen::Index j = 0; j < set.data.cols(); ++j) {
            const double z = set.data(t, j);
            if (!margin_in_support(set.margin_tag, z))
                throw invalid_data_error("marginal_transform: value outside source support");
            out.data(t, j) = margin_convert(set.margin_tag, target, z);
        }
    }
    out.margin_tag = target;
    return out;
}

double chi_analytic(const ProcessSpec& spec, double h) {
    if (spec.family != ProcessFamily::msp_brown_resnick &&
        spec.family != ProcessFamily::r_pareto_max)
        throw std::invalid_argument("chi_analytic: not applicable to this family");
    if (h < 0.0) throw std::invalid_argument("chi_analytic: negative distance");
    if (h == 0.0) return 1.0;
    const double gamma_h = kernel_eval(spec.dependence_model(), h);
    return 2.0 - hr_exponent_V(1.0, 1.0, gamma_h).value;
}

std::optional<double> empirical_chi(const ReplicateSet& set, int site_i, int site_j, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("empirical_chi: q must be in (0, 1)");
    const int m = set.m;
    if (site_i < 0 || site_j < 0 || site_i >= set.data.cols() || site_j >= set.data.cols())
        throw std::invalid_argument("empirical_chi: site index out of range");
    if (m * (1.0 - q) * (1.0 - q) < 20.0)
        std::fprintf(stderr,
                     "empirical_chi: fewer than 20 joint exceedances expected at q=%g, m=%d\n", q,
                     m);
    auto ranks = [m](const Eigen::VectorXd& col) {
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return col(a) < col(b); });
        Eigen::VectorXd r(m);
        for (int k = 0; k < m; ++k) r(order[k]) = (k + 1.0) / (m + 1.0);
        return r;
    };
    const Eigen::VectorXd ri = ranks(set.data.col(site_i));
    const Eigen::VectorXd rj = ranks(set.data.col(site_j));
    long joint = 0, cond = 0;
    for (int t = 0; t < m; ++t) {
        if (rj(t) > q) {
            ++cond;
            if (ri(t) > q) ++joint;
        }
    }
    if (cond == 0) return std::nullopt;
    return static_cast<double>(joint) / static_cast<double>(cond);
}

}  // namespace cnbe
