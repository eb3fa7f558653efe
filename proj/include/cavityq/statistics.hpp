#pragma once

#include <cmath>
#include <limits>

#include "cavityq/coherent.hpp"
#include "cavityq/params.hpp"
#include "cavityq/subharmonic.hpp"

namespace cavityq {

// Photon statistics and correlation measures of the composite mode
// c = a1 + b1 + a2 + b2 that superposes the coherently driven pair with the
// parametric pair.  The commutator of c with its adjoint is 4, which is
// where the additive constants in the quadrature variances come from.

struct PhotonStatistics {
    double mean;
    double variance;
};

struct QuadratureReport {
    double plus_var;       // variance of c + c^dag
    double minus_var;      // variance of -i(c - c^dag); +inf at threshold
    double squeezing;      // 1 - plus_var/4 = gamma/(kappa + 2*gamma)
    bool minus_divergent;  // true when minus_var is reported as infinite
};

struct EntanglementReport {
    double g2_a;        // intensity autocorrelation of mode a (= mode b)
    double g2_b;
    double g2_ab;       // intensity cross-correlation
    double cs_lhs;      // g2_a * g2_b
    double cs_rhs;      // g2_ab^2
    bool cs_satisfied;  // classical Cauchy-Schwarz bound cs_lhs >= cs_rhs holds
    double epr_sum;     // total variance of the EPR quadrature pair
    bool entangled;     // epr_sum < 4
    double degree;      // epr_sum / 4, < 1 signals inseparability
};

// Mean photon number of the composite mode.  The parametric contribution is
// evaluated in steady state; the driven contribution follows the coherent
// transient, so a finite TimePoint moves only the drive term.
inline double mean_photon(const SystemParams& p, TimePoint tp) {
    require_subthreshold(p);
    const double d = p.kappa * p.kappa - 4.0 * p.gamma * p.gamma;
    const double q = displacement(p, tp);
    return 4.0 * p.gamma * p.gamma / d + 4.0 * q * q;
}

// Photon-number variance of the composite mode, evaluated term by term from
// the closed form.
inline double photon_variance(const SystemParams& p, TimePoint tp) {
    require_subthreshold(p);
    const double g2 = p.gamma * p.gamma;
    const double k2 = p.kappa * p.kappa;
    const double d = k2 - 4.0 * g2;
    // (1 - exp(-kappa t/2))^2, the rise profile shared by all drive terms
    const double rise = tp.is_steady() ? 1.0 : -std::expm1(-0.5 * p.kappa * tp.time());
    const double drive = p.epsilon * p.epsilon * rise * rise;
    return 16.0 * g2 * g2 / (d * d) + 4.0 * k2 * g2 / (d * d) + 16.0 * g2 / d
           + 128.0 * drive * g2 / (k2 * d) - 64.0 * drive * p.gamma / (p.kappa * d)
           + 64.0 * drive / k2;
}

// Same variance assembled from the constituent moments: the anomalous
// correlation m, the mode occupation n, the displacement q, and the mean
// photon number.  Used as an internal cross-check; the two routes agree to
// rounding.
inline double photon_variance_assembled(const SystemParams& p, TimePoint tp) {
    const SubharmonicMoments sm = steady_moments(p);
    const double q = displacement(p, tp);
    const double q2 = q * q;
    const double nbar = mean_photon(p, tp);
    const double c4 = 4.0 * sm.m_ab * sm.m_ab + 8.0 * sm.n_a * sm.n_a
                      + 16.0 * q2 * sm.m_ab + 32.0 * q2 * sm.n_a + 16.0 * q2 * q2;
    return c4 + 4.0 * nbar - nbar * nbar;
}

inline PhotonStatistics photon_statistics(const SystemParams& p, TimePoint tp) {
    return {mean_photon(p, tp), photon_variance(p, tp)};
}

// Steady-state variances of the composite quadratures.  The plus quadrature
// is squeezed below the vacuum level 4 by gamma/(kappa + 2*gamma), reaching
// the 25% limit at threshold; the minus quadrature diverges there and is
// reported as infinite rather than failing.
inline QuadratureReport quadrature_report(const SystemParams& p) {
    const ThresholdClass c = require_not_above_threshold(p);
    QuadratureReport r;
    r.squeezing = p.gamma / (p.kappa + 2.0 * p.gamma);
    r.plus_var = 4.0 - 4.0 * r.squeezing;
    if (c.regime == ThresholdRegime::AtThreshold) {
        r.minus_var = std::numeric_limits<double>::infinity();
        r.minus_divergent = true;
    } else {
        r.minus_var = 4.0 + 4.0 * p.gamma / (p.kappa - 2.0 * p.gamma);
        r.minus_divergent = false;
    }
    return r;
}

// Steady-state intensity autocorrelation g2 of either constituent mode of
// the superposed field.  Finite at threshold (limit 2); undefined when both
// the drive and the coupling vanish.
inline double g2_single(const SystemParams& p) {
    const ThresholdClass c = require_not_above_threshold(p);
    if (p.gamma == 0.0 && p.epsilon == 0.0)
        throw UndefinedCorrelation("g2 of the vacuum is undefined");
    if (c.regime == ThresholdRegime::AtThreshold)
        return 2.0;
    const SubharmonicMoments sm = steady_moments(p);
    const double q = displacement(p, TimePoint::steady());
    const double q2 = q * q;
    const double denom = (q2 + sm.n_a) * (q2 + sm.n_a);
    return 1.0 + (sm.n_a * sm.n_a + 2.0 * q2 * sm.n_a) / denom;
}

// Steady-state intensity cross-correlation between the two constituent
// modes; exceeds g2_single below threshold, violating the classical
// Cauchy-Schwarz bound.
inline double g2_cross(const SystemParams& p) {
    const ThresholdClass c = require_not_above_threshold(p);
    if (p.gamma == 0.0 && p.epsilon == 0.0)
        throw UndefinedCorrelation("g2 of the vacuum is undefined");
    if (c.regime == ThresholdRegime::AtThreshold)
        return 2.0;
    const SubharmonicMoments sm = steady_moments(p);
    const double q = displacement(p, TimePoint::steady());
    const double q2 = q * q;
    const double denom = (q2 + sm.n_a) * (q2 + sm.n_a);
    return 1.0 + (2.0 * q2 * sm.m_ab + sm.m_ab * sm.m_ab) / denom;
}

// Entanglement summary: photon correlations, the Cauchy-Schwarz comparison,
// and the EPR total-variance criterion.  The EPR sum equals the plus
// quadrature variance, so any nonzero coupling certifies inseparability.
inline EntanglementReport epr_report(const SystemParams& p) {
    const QuadratureReport qr = quadrature_report(p);
    EntanglementReport r;
    r.g2_a = g2_single(p);
    r.g2_b = r.g2_a;
    r.g2_ab = g2_cross(p);
    r.cs_lhs = r.g2_a * r.g2_b;
    r.cs_rhs = r.g2_ab * r.g2_ab;
    r.cs_satisfied = r.cs_lhs >= r.cs_rhs;
    r.epr_sum = qr.plus_var;
    r.entangled = r.epr_sum < 4.0;
    r.degree = r.epr_sum / 4.0;
    return r;
}

}  // namespace cavityq
