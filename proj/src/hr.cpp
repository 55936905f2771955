#include "cnbe/hr.hpp"

#include <cmath>
#include <stdexcept>

#include "cnbe/margins.hpp"

namespace cnbe {

HrExponent hr_exponent_V(double z1, double z2, double gamma_h) {
    if (!(z1 > 0.0 && z2 > 0.0)) throw std::invalid_argument("hr_exponent_V: z must be > 0");
    if (gamma_h < 0.0) throw std::invalid_argument("hr_exponent_V: negative variogram");
    if (gamma_h == 0.0) {
        // Comonotone limit: V = 1/min(z1, z2).
        const double zmin = z1 < z2 ? z1 : z2;
        HrExponent out{1.0 / zmin, 0.0, 0.0, 0.0};
        if (z1 < z2)
            out.d1 = -1.0 / (z1 * z1);
        else
            out.d2 = -1.0 / (z2 * z2);
        return out;
    }
    const double a = std::sqrt(2.0 * gamma_h);
    const double log_ratio = std::log(z2 / z1);
    const double q1 = 0.5 * a + log_ratio / a;
    const double q2 = a - q1;  // = a/2 - log_ratio/a
    const double p1 = std_normal_cdf(q1);
    const double p2 = std_normal_cdf(q2);
    HrExponent out;
    out.value = p1 / z1 + p2 / z2;
    out.d1 = -p1 / (z1 * z1);
    out.d2 = -p2 / (z2 * z2);
    out.d12 = -std_normal_pdf(q1) / (a * z1 * z1 * z2);
    return out;
}

}  // namespace cnbe
