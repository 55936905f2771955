#include "cnbe/bvn.hpp"

#include <algorithm>
#include <cmath>

#include "cnbe/margins.hpp"

namespace cnbe {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Gauss-Legendre abscissae/weights, 6-, 12- and 20-point rules (half).
constexpr double kW1[3] = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
constexpr double kX1[3] = {-0.9324695142031522, -0.6612093864662647, -0.2386191860831970};
constexpr double kW2[6] = {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                           0.2031674267230659,  0.2334925365383547, 0.2491470458134029};
constexpr double kX2[6] = {-0.9815606342467191, -0.9041172563704750, -0.7699026741943050,
                           -0.5873179542866171, -0.3678314989981802, -0.1252334085114692};
constexpr double kW3[10] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
                            0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                            0.1316886384491766,  0.1420961093183820,  0.1491729864726037,
                            0.1527533871307258};
constexpr double kX3[10] = {-0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
                            -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
                            -0.5108670019508271, -0.3737060887154195, -0.2277858511416451,
                            -0.07652652113349734};

// P(X > dh, Y > dk); Genz's BVND.
double bvn_upper(double dh, double dk, double r) {
    const double* w;
    const double* x;
    int lg;
    const double ar = std::abs(r);
    if (ar < 0.3) {
        w = kW1;
        x = kX1;
        lg = 3;
    } else if (ar < 0.75) {
        w = kW2;
        x = kX2;
        lg = 6;
    } else {
        w = kW3;
        x = kX3;
        lg = 10;
    }
    double h = dh;
    double k = dk;
    double hk = h * k;
    double bvn = 0.0;
    if (ar < 0.925) {
        if (ar > 0.0) {
            const double hs = (h * h + k * k) / 2.0;
            const double asr = std::asin(r);
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    const double sn = std::sin(asr * (is * x[i] + 1.0) / 2.0);
                    bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn = bvn * asr / (2.0 * kTwoPi);
        }
        bvn += std_normal_cdf(-h) * std_normal_cdf(-k);
    } else {
        if (r < 0.0) {
            k = -k;
            hk = -hk;
        }
        if (ar < 1.0) {
            const double as = (1.0 - r) * (1.0 + r);
            double a = std::sqrt(as);
            const double bs = (h - k) * (h - k);
            const double c = (4.0 - hk) / 8.0;
            const double d = (12.0 - hk) / 16.0;
            double asr = -(bs / as + hk) / 2.0;
            if (asr > -100.0)
                bvn = a * std::exp(asr) *
                      (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
            if (-hk < 100.0) {
                const double b = std::sqrt(bs);
                const double sp = std::sqrt(kTwoPi) * std_normal_cdf(-b / a);
                bvn -= std::exp(-hk / 2.0) * sp * b * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
            }
            a /= 2.0;
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    const double xs = a * (is * x[i] + 1.0) * a * (is * x[i] + 1.0);
                    const double rs = std::sqrt(1.0 - xs);
                    asr = -(bs / xs + hk) / 2.0;
                    if (asr > -100.0) {
                        const double sp = 1.0 + c * xs * (1.0 + d * xs);
                        const double ep = std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs;
                        bvn += a * w[i] * std::exp(asr) * (ep - sp);
                    }
                }
            }
            bvn = -bvn / kTwoPi;
        }
        if (r > 0.0) {
            bvn += std_normal_cdf(-std::max(h, k));
        } else {
            bvn = -bvn;
            if (k > h) bvn += std_normal_cdf(k) - std_normal_cdf(h);
        }
    }
    return std::clamp(bvn, 0.0, 1.0);
}

}  // namespace

double bvn_cdf(double z1, double z2, double rho) {
    if (std::isnan(z1) || std::isnan(z2) || std::isnan(rho)) return std::nan("");
    if (rho >= 1.0) return std_normal_cdf(std::min(z1, z2));
    if (rho <= -1.0) return std::max(0.0, std_normal_cdf(z1) + std_normal_cdf(z2) - 1.0);
    return bvn_upper(-z1, -z2, rho);
}

}  // namespace cnbe
