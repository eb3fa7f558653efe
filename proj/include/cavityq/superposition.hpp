#pragma once

#include <cmath>
#include <utility>

#include "cavityq/gaussian_q.hpp"
#include "cavityq/subharmonic.hpp"

namespace cavityq {

// Combination rules for a field prepared as a superposition of the
// coherently driven pair of modes and the parametric pair.  At the level of
// Husimi functions the combination is exact: displacing the centered
// parametric Gaussian by the coherent amplitude q gives another member of
// the same family with
//
//   lin    = q * (quad + cross),
//   offset = -2 * lin^2 / (quad + cross),
//
// so the result stays normalized by construction.

namespace detail {

inline bool is_coherent_family(const GaussianQ& g) {
    return std::abs(g.quad - 1.0) <= 1e-12 && std::abs(g.cross) <= 1e-12;
}

inline bool is_centered_family(const GaussianQ& g) {
    return std::abs(g.lin) <= 1e-12 && std::abs(g.offset) <= 1e-12;
}

}  // namespace detail

// Superposes a displaced-vacuum Q (quad = 1, cross = 0) with a centered
// parametric Q.  Identity in both degenerate directions: a zero
// displacement returns the centered factor unchanged, and a vacuum
// parametric factor returns the coherent one.
inline GaussianQ superpose(const GaussianQ& coherent_part, const GaussianQ& centered_part) {
    if (!detail::is_coherent_family(coherent_part))
        throw MalformedInput("first factor must be a displaced-vacuum Q (quad = 1, cross = 0)");
    if (!detail::is_centered_family(centered_part))
        throw MalformedInput("second factor must be a centered Q (lin = 0, offset = 0)");
    const double q = coherent_part.lin;
    return make_gaussian_q(centered_part.quad, centered_part.cross,
                           q * (centered_part.quad + centered_part.cross));
}

// Integrates out the second mode.  For the normalized family the marginal
// is a single-mode Gaussian of width (quad^2 - cross^2)/quad displaced by
// lin/(quad + cross) along the real axis.
inline MarginalGaussianQ marginal(const GaussianQ& g) {
    if (!(g.quad > std::abs(g.cross)))
        throw MalformedInput("marginal requires quad > |cross|");
    MarginalGaussianQ m;
    m.width = (g.quad * g.quad - g.cross * g.cross) / g.quad;
    m.shift = g.lin / (g.quad + g.cross);
    return m;
}

// Mean photon number of one mode, obtained from the marginal by the
// antinormal-ordering rule <a^dag a> = integral of Q*|alpha|^2 minus one:
// 1/width + shift^2 - 1.
inline double q_mean_photon_single(const GaussianQ& g) {
    const MarginalGaussianQ m = marginal(g);
    return 1.0 / m.width + m.shift * m.shift - 1.0;
}

// Second-order cross moments of the two modes extracted from the full Q:
// returns (<a^dag b>, <a b> - <a><b>).  For this family <a^dag b> = shift^2
// and the anomalous fluctuation is -cross/(quad^2 - cross^2).
inline std::pair<double, double> q_cross_moments(const GaussianQ& g) {
    if (!(g.quad > std::abs(g.cross)))
        throw MalformedInput("cross moments require quad > |cross|");
    const double det = g.quad * g.quad - g.cross * g.cross;
    const double shift = g.lin / (g.quad + g.cross);
    return {shift * shift, -g.cross / det};
}

// Fluctuation moments of the composite mode c = a1 + b1 + a2 + b2 built
// from one driven pair and one parametric pair.  The driven pair carries no
// fluctuations, so only the parametric occupations and pair correlation
// survive: <dc^dag dc> = 2*n_a and <dc^2> = <dc^dag^2> = 2*m_ab.
struct CompositeFluctuations {
    double number;
    double anomalous;
    double anomalous_conj;
};

inline CompositeFluctuations composite_fluctuation_moments(const SystemParams& p) {
    const SubharmonicMoments sm = steady_moments(p);
    return {2.0 * sm.n_a, 2.0 * sm.m_ab, 2.0 * sm.m_ab};
}

}  // namespace cavityq
