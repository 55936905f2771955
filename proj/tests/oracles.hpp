#pragma once

// Test-only oracles: quadrature, empirical-distribution statistics and
// finite differences. Deliberately independent of the library's numeric
// paths (no use of cnbe::bvn_cdf, hr_exponent_V, etc.).

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// Kolmogorov-Smirnov distance between a sample and a reference CDF.
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs((i + 1.0) / n - f));
        d = std::max(d, std::abs(i / n - f));
    }
    return d;
}

// Adaptive Simpson on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-11, int depth = 24) {
    struct Impl {
        const std::function<double(double)>& f;
        double run(double a, double m, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return run(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   run(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Impl{f}.run(a, m, b, fa, fm, fb, whole, tol, depth);
}

// Husler-Reiss pair exponent by quadrature: V(z1, z2) = E max(W1/z1, W2/z2)
// for W_i = exp(e_i - g/2), e_i iid N(0, g). Splitting at the kink
// e1 - e2 = log(z1/z2) and rotating reduces each half to products of 1-D
// normal integrals, evaluated here by adaptive Simpson (no normal-CDF use).
inline double hr_exponent_quadrature(double z1, double z2, double gamma_h) {
    const double g = gamma_h;
    const double sd_u = std::sqrt(2.0 * g);   // u = e1 - e2
    const double sd_w = std::sqrt(0.5 * g);   // w = (e1 + e2)/2 - u/2 residual
    auto normal_pdf = [](double x, double sd) {
        return std::exp(-0.5 * x * x / (sd * sd)) / (sd * std::sqrt(2.0 * M_PI));
    };
    // E[exp(w)] over w ~ N(0, sd_w^2), numerically.
    const double wspan = 12.0 * sd_w + 2.0 * sd_w * sd_w;
    const double mgf_w = adaptive_simpson(
        [&](double w) { return std::exp(w) * normal_pdf(w, sd_w); }, -wspan, wspan);
    const double c = std::log(z1 / z2);
    // Term1 = (1/z1) e^{-g/2} E[e^{u/2} 1{u > c}] E[e^w].
    const double uspan = 12.0 * sd_u + sd_u * sd_u;
    const double t1 = adaptive_simpson(
        [&](double u) { return std::exp(0.5 * u) * normal_pdf(u, sd_u); },
        std::max(c, -uspan), uspan);
    const double t2 = adaptive_simpson(
        [&](double u) { return std::exp(-0.5 * u) * normal_pdf(u, sd_u); }, -uspan,
        std::min(c, uspan));
    return std::exp(-0.5 * g) * mgf_w * (t1 / z1 + t2 / z2);
}

// Bivariate normal CDF by genuinely 2-D nested adaptive Simpson of the
// density (no closed-form CDF anywhere on the path).
inline double bvn_cdf_quadrature(double z1, double z2, double rho) {
    const double lo = -8.5;
    if (z1 <= lo || z2 <= lo) return 0.0;
    const double det = 1.0 - rho * rho;
    const double norm = 1.0 / (2.0 * M_PI * std::sqrt(det));
    auto inner = [&](double x) {
        return adaptive_simpson(
            [&](double y) {
                return norm *
                       std::exp(-(x * x - 2.0 * rho * x * y + y * y) / (2.0 * det));
            },
            lo, z2, 1e-12);
    };
    return adaptive_simpson(inner, lo, z1, 1e-10);
}

// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double mixed_diff(const std::function<double(double, double)>& f, double x, double y,
                         double hx, double hy) {
    return (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) + f(x - hx, y - hy)) /
           (4.0 * hx * hy);
}

inline double sample_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
    const double mu = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace oracles
