#pragma once

#include <cmath>
#include <stdexcept>

namespace cnbe {

enum class KernelKind { matern_correlation, power_variogram };

// Dependence kernel shared by every simulator. matern_correlation is the
// unit-variance Matern rho(h) = 2^{1-nu}/Gamma(nu) (h/lambda)^nu K_nu(h/lambda)
// with smoothness nu = kappa; power_variogram is the semivariogram
// gamma(h) = (h/lambda)^kappa with kappa in (0, 2].
struct CovarianceModel {
    KernelKind kind = KernelKind::matern_correlation;
    double lambda = 1.0;  // range > 0
    double kappa = 1.0;   // smoothness

    void validate() const {
        if (!(lambda > 0.0)) throw std::invalid_argument("CovarianceModel: lambda must be > 0");
        if (!(kappa > 0.0)) throw std::invalid_argument("CovarianceModel: kappa must be > 0");
        if (kind == KernelKind::power_variogram && kappa > 2.0)
            throw std::invalid_argument("CovarianceModel: variogram exponent must be in (0, 2]");
    }
};

inline double kernel_eval(const CovarianceModel& model, double h) {
    if (h < 0.0) throw std::invalid_argument("kernel_eval: negative distance");
    model.validate();
    const double x = h / model.lambda;
    if (model.kind == KernelKind::power_variogram) {
        return std::pow(x, model.kappa);
    }
    if (x == 0.0) return 1.0;
    const double nu = model.kappa;
    // cyl_bessel_k underflows for large x; the correlation is 0 there anyway.
    if (x > 600.0) return 0.0;
    const double rho =
        std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(x, nu) * std::cyl_bessel_k(nu, x);
    return rho < 1.0 ? rho : 1.0;
}

}  // namespace cnbe
