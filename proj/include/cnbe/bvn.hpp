#pragma once

namespace cnbe {

// Standard bivariate normal CDF P(X <= z1, Y <= z2) with correlation rho,
// Genz's rearrangement of the Drezner-Wesolowsky quadrature (absolute error
// well under 1e-7 across the correlation range). |rho| >= 1 falls back to
// the comonotone/countermonotone limits.
double bvn_cdf(double z1, double z2, double rho);

}  // namespace cnbe
