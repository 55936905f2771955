#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace cnbe {

// Standard margins used as NBE input scales F_*. All transforms compose
// through the survival function so the upper tail keeps full relative
// precision (the values that matter for exceedance work).
enum class MarginTag : int { uniform = 0, exponential = 1, unit_pareto = 2, unit_frechet = 3 };

inline const char* margin_name(MarginTag tag) {
    switch (tag) {
        case MarginTag::uniform: return "uniform";
        case MarginTag::exponential: return "exponential";
        case MarginTag::unit_pareto: return "unit_pareto";
        case MarginTag::unit_frechet: return "unit_frechet";
    }
    return "?";
}

MarginTag margin_from_name(const std::string& name);

inline double margin_support_lower(MarginTag tag) {
    switch (tag) {
        case MarginTag::uniform: return 0.0;
        case MarginTag::exponential: return 0.0;
        case MarginTag::unit_pareto: return 1.0;
        case MarginTag::unit_frechet: return 0.0;
    }
    return 0.0;
}

inline bool margin_in_support(MarginTag tag, double z) {
    switch (tag) {
        case MarginTag::uniform: return z >= 0.0 && z <= 1.0;
        case MarginTag::exponential: return z >= 0.0;
        case MarginTag::unit_pareto: return z >= 1.0;
        case MarginTag::unit_frechet: return z > 0.0;
    }
    return false;
}

inline double margin_cdf(MarginTag tag, double z) {
    switch (tag) {
        case MarginTag::uniform: return z < 0.0 ? 0.0 : (z > 1.0 ? 1.0 : z);
        case MarginTag::exponential: return z <= 0.0 ? 0.0 : -std::expm1(-z);
        case MarginTag::unit_pareto: return z <= 1.0 ? 0.0 : 1.0 - 1.0 / z;
        case MarginTag::unit_frechet: return z <= 0.0 ? 0.0 : std::exp(-1.0 / z);
    }
    return 0.0;
}

inline double margin_survival(MarginTag tag, double z) {
    switch (tag) {
        case MarginTag::uniform: return z < 0.0 ? 1.0 : (z > 1.0 ? 0.0 : 1.0 - z);
        case MarginTag::exponential: return z <= 0.0 ? 1.0 : std::exp(-z);
        case MarginTag::unit_pareto: return z <= 1.0 ? 1.0 : 1.0 / z;
        case MarginTag::unit_frechet: return z <= 0.0 ? 1.0 : -std::expm1(-1.0 / z);
    }
    return 1.0;
}

// Quantile as a function of the survival probability s = 1 - p.
inline double margin_quantile_from_survival(MarginTag tag, double s) {
    switch (tag) {
        case MarginTag::uniform: return 1.0 - s;
        case MarginTag::exponential: return -std::log(s);
        case MarginTag::unit_pareto: return 1.0 / s;
        case MarginTag::unit_frechet: return -1.0 / std::log1p(-s);
    }
    return 0.0;
}

inline double margin_quantile(MarginTag tag, double p) {
    if (!(p >= 0.0) || !(p < 1.0))
        throw std::invalid_argument("margin_quantile: probability must be in [0, 1)");
    if (p == 0.0) return margin_support_lower(tag);
    return margin_quantile_from_survival(tag, 1.0 - p);
}

inline double margin_density(MarginTag tag, double z) {
    switch (tag) {
        case MarginTag::uniform: return (z >= 0.0 && z <= 1.0) ? 1.0 : 0.0;
        case MarginTag::exponential: return z < 0.0 ? 0.0 : std::exp(-z);
        case MarginTag::unit_pareto: return z < 1.0 ? 0.0 : 1.0 / (z * z);
        case MarginTag::unit_frechet: return z <= 0.0 ? 0.0 : std::exp(-1.0 / z) / (z * z);
    }
    return 0.0;
}

// Probability-integral transform routed through the survival scale.
inline double margin_convert(MarginTag from, MarginTag to, double z) {
    if (from == to) return z;
    return margin_quantile_from_survival(to, margin_survival(from, z));
}

// Standard normal helpers (used for GP margins and likelihood work).
inline double std_normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }
inline double std_normal_survival(double z) { return 0.5 * std::erfc(z * M_SQRT1_2); }
inline double std_normal_pdf(double z) {
    return 0.3989422804014326779399460599344 * std::exp(-0.5 * z * z);
}
// Acklam-style inverse normal CDF, refined by one Halley step (|err| < 1e-15).
double std_normal_quantile(double p);

}  // namespace cnbe
