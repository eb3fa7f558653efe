#pragma once

#include <cmath>
#include <utility>

#include "cavityq/gaussian_q.hpp"
#include "cavityq/params.hpp"

namespace cavityq {

// Steady-state moments of the two modes generated by nondegenerate
// parametric down-conversion below threshold.  The state is a zero-mean
// Gaussian: the only nonvanishing first and second moments are the equal
// mode occupations and the anomalous pair correlation.
struct SubharmonicMoments {
    double n_a;    // <a^dag a> = <b^dag b> = 2*gamma^2 / (kappa^2 - 4*gamma^2)
    double m_ab;   // <a b> = <a^dag b^dag> = -kappa*gamma / (kappa^2 - 4*gamma^2)
    double cross;  // <a^dag b>, identically zero
    double sq_a;   // <a^2> = <b^2>, identically zero
};

// Exponent coefficients of the parametric two-mode Gaussian, in the two
// equivalent parameterizations used by the characteristic function
// (a_coef, b_coef) and by the Husimi function (u, v).  They satisfy
// u = a_coef / (a_coef^2 - b_coef^2), v = b_coef / (a_coef^2 - b_coef^2),
// hence u^2 - v^2 = 1 / (a_coef^2 - b_coef^2) and u > v >= 0 below
// threshold.
struct QCoefficients {
    double a_coef;
    double b_coef;
    double u;
    double v;
};

inline SubharmonicMoments steady_moments(const SystemParams& p) {
    require_subthreshold(p);
    const double d = p.kappa * p.kappa - 4.0 * p.gamma * p.gamma;
    return {2.0 * p.gamma * p.gamma / d, -p.kappa * p.gamma / d, 0.0, 0.0};
}

inline QCoefficients char_coefficients(const SystemParams& p) {
    require_subthreshold(p);
    const double d = p.kappa * p.kappa - 4.0 * p.gamma * p.gamma;
    QCoefficients qc;
    qc.a_coef = (p.kappa * p.kappa - 2.0 * p.gamma * p.gamma) / d;
    qc.b_coef = p.kappa * p.gamma / d;
    const double det = qc.a_coef * qc.a_coef - qc.b_coef * qc.b_coef;
    qc.u = qc.a_coef / det;
    qc.v = qc.b_coef / det;
    return qc;
}

// Centered Husimi function of the parametric steady state.
inline GaussianQ subharmonic_qfunction(const SystemParams& p) {
    const QCoefficients qc = char_coefficients(p);
    return make_gaussian_q(qc.u, qc.v, 0.0);
}

// Transient weights (E_plus, E_minus) mixing the initial amplitudes of the
// two modes into <a(t)>:
//
//   <a(t)> = E_plus(t) <a(0)> - E_minus(t) <b^dag(0)>,
//
// built from the quadrature decay rates lambda_pm.  They obey
// E_plus^2 - E_minus^2 = exp(-kappa*t) at every time.
inline std::pair<double, double> mixing_factors(const SystemParams& p, double t) {
    const auto [lp, lm] = lambda_pm(p);
    if (!std::isfinite(t))
        throw NonFinite("time must be finite");
    if (t < 0.0)
        throw NegativeTime("time must be non-negative");
    const double ep = std::exp(-0.5 * lp * t);
    const double em = std::exp(-0.5 * lm * t);
    return {0.5 * (ep + em), 0.5 * (ep - em)};
}

}  // namespace cavityq
