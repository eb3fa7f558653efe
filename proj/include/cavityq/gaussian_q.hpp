#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "cavityq/errors.hpp"

namespace cavityq {

// Two-mode Husimi function of the symmetric Gaussian family
//
//   Q(alpha, beta) = prefactor * exp[ -quad*(|alpha|^2 + |beta|^2)
//                                     - cross*(alpha*beta + conj(alpha*beta))
//                                     + lin*(alpha + conj(alpha) + beta + conj(beta))
//                                     + offset ].
//
// Integrability over both complex planes requires quad > |cross|, and
// normalization to unity fixes
//
//   prefactor = (quad^2 - cross^2) / pi^2,
//   offset    = -2*lin^2 / (quad + cross).
//
// Every state handled here (coherent, parametric, and their superposition)
// lands in this family, so the struct doubles as the interchange type
// between the closed-form modules.
struct GaussianQ {
    double prefactor;
    double quad;    // coefficient of |alpha|^2 and |beta|^2
    double cross;   // coefficient of 2*Re(alpha*beta)
    double lin;     // coefficient of 2*Re(alpha + beta)
    double offset;  // additive exponent constant

    double operator()(std::complex<double> alpha, std::complex<double> beta) const {
        const double expo = -quad * (std::norm(alpha) + std::norm(beta))
                            - 2.0 * cross * std::real(alpha * beta)
                            + 2.0 * lin * (std::real(alpha) + std::real(beta))
                            + offset;
        return prefactor * std::exp(expo);
    }

    // True for the zero-displacement members (vacuum and parametric states).
    bool is_centered() const { return lin == 0.0 && offset == 0.0; }
};

namespace detail {

inline bool close_rel(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace detail

// Builds the normalized member of the family for given exponent
// coefficients; prefactor and offset follow from the normalization
// constraint.
inline GaussianQ make_gaussian_q(double quad, double cross, double lin) {
    if (!(std::isfinite(quad) && std::isfinite(cross) && std::isfinite(lin)))
        throw MalformedInput("Gaussian Q coefficients must be finite");
    if (!(quad > std::abs(cross)))
        throw MalformedInput("Gaussian Q requires quad > |cross| for integrability");
    constexpr double pi = std::numbers::pi;
    GaussianQ g;
    g.quad = quad;
    g.cross = cross;
    g.lin = lin;
    g.prefactor = (quad * quad - cross * cross) / (pi * pi);
    g.offset = -2.0 * lin * lin / (quad + cross);
    return g;
}

// Validating constructor for externally supplied components.  Rejects any
// combination that is not a normalized member of the family.
inline GaussianQ make_gaussian_q_checked(double prefactor, double quad, double cross,
                                         double lin, double offset) {
    const GaussianQ g = make_gaussian_q(quad, cross, lin);
    if (!detail::close_rel(prefactor, g.prefactor, 1e-9))
        throw MalformedInput("prefactor inconsistent with (quad^2 - cross^2)/pi^2");
    if (!detail::close_rel(offset, g.offset, 1e-9))
        throw MalformedInput("offset inconsistent with -2*lin^2/(quad + cross)");
    return g;
}

// Single-mode reduction of a GaussianQ, itself a normalized Gaussian
//
//   Q(alpha) = (width/pi) * exp[ -width * |alpha - shift|^2 ]
//
// with a real displacement.
struct MarginalGaussianQ {
    double width;
    double shift;

    double operator()(std::complex<double> alpha) const {
        return width / std::numbers::pi * std::exp(-width * std::norm(alpha - shift));
    }
};

}  // namespace cavityq
