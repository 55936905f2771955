#pragma once

namespace cnbe {

// Husler-Reiss pair exponent for the Brown-Resnick process with pair
// variogram gamma_h, together with the partial derivatives the censored
// pair contributions need. With a = sqrt(2 gamma_h),
//   V(z1, z2) = Phi(q1)/z1 + Phi(q2)/z2,
//   q1 = a/2 + log(z2/z1)/a,  q2 = a/2 + log(z1/z2)/a,
// and the cross terms collapse to
//   V1 = -Phi(q1)/z1^2,  V2 = -Phi(q2)/z2^2,  V12 = -phi(q1)/(a z1^2 z2).
struct HrExponent {
    double value;
    double d1;   // dV/dz1
    double d2;   // dV/dz2
    double d12;  // d2V/dz1 dz2
};

HrExponent hr_exponent_V(double z1, double z2, double gamma_h);

}  // namespace cnbe
