#pragma once

#include <cmath>
#include <complex>

#include "cavityq/errors.hpp"

namespace cavityq::oracle {

// Closed form of the normalized complex-plane Gaussian integral
//
//   (1/pi) * integral d^2z  exp(-a|z|^2 + b z + c z* + A z^2 + B z*^2)
//     = (a^2 - 4AB)^(-1/2) * exp[(a b c + A c^2 + B b^2) / (a^2 - 4AB)].
//
// This identity underlies every characteristic-function inversion in the
// library, so it gets its own quadrature-validated implementation.  The
// integral converges only for a > 0, a^2 > 4AB and |A + B| < a; any other
// input is rejected as Divergent.
inline std::complex<double> gaussian_integral_identity(double a, std::complex<double> b,
                                                       std::complex<double> c, double A,
                                                       double B) {
    if (!(std::isfinite(a) && std::isfinite(A) && std::isfinite(B)) || !std::isfinite(std::abs(b))
        || !std::isfinite(std::abs(c)))
        throw Divergent("coefficients must be finite");
    if (!(a > 0.0))
        throw Divergent("requires a > 0");
    const double disc = a * a - 4.0 * A * B;
    if (!(disc > 0.0))
        throw Divergent("requires a^2 > 4AB");
    // The quadratic form in (Re z, Im z) must be negative definite; the
    // closed form alone does not see this failure mode.
    if (!(std::abs(A + B) < a))
        throw Divergent("requires |A + B| < a");
    return std::exp((a * b * c + A * c * c + B * b * b) / disc) / std::sqrt(disc);
}

}  // namespace cavityq::oracle
