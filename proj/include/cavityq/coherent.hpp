#pragma once

#include <cmath>

#include "cavityq/gaussian_q.hpp"
#include "cavityq/params.hpp"

namespace cavityq {

// Closed-form solution for the two cavity modes driven by a resonant
// coherent field through a single mirror.  From vacuum, each mode is a
// coherent state at all times; its real amplitude q(t) relaxes toward
// 2*epsilon/kappa at rate kappa/2.
struct CoherentSolution {
    double p;  // exp(-kappa*t/2), the field decay factor
    double q;  // (2*epsilon/kappa) * (1 - exp(-kappa*t/2)), the displacement
};

// Normally ordered moments of a two-mode field up to second order, plus the
// fourth-order number moment entering intensity correlations.  All entries
// are real here: the drive amplitude is real and the field starts in vacuum.
struct ModeMoments {
    double mean_a, mean_b;      // <a>, <b>
    double number_a, number_b;  // <a^dag a>, <b^dag b>
    double ab;                  // <a b>
    double a_dag_b;             // <a^dag b>
    double aa, bb;              // <a^2>, <b^2>
    double a2_dag_a2;           // <a^dag^2 a^2>
};

inline double decay_factor(const SystemParams& p, double t) {
    validate(p);
    if (!std::isfinite(t))
        throw NonFinite("time must be finite");
    if (t < 0.0)
        throw NegativeTime("time must be non-negative");
    return std::exp(-0.5 * p.kappa * t);
}

// Coherent displacement of either mode; both modes carry the same amplitude.
inline double displacement(const SystemParams& p, TimePoint tp) {
    validate(p);
    const double q_steady = 2.0 * p.epsilon / p.kappa;
    if (tp.is_steady())
        return q_steady;
    // 1 - exp(-x) evaluated without cancellation for small x
    return q_steady * (-std::expm1(-0.5 * p.kappa * tp.time()));
}

inline CoherentSolution coherent_solution(const SystemParams& p, double t) {
    return {decay_factor(p, t), displacement(p, TimePoint::at(t))};
}

inline ModeMoments coherent_moments(const SystemParams& p, TimePoint tp) {
    const double q = displacement(p, tp);
    ModeMoments m;
    m.mean_a = m.mean_b = q;
    m.number_a = m.number_b = q * q;
    m.ab = m.a_dag_b = m.aa = m.bb = q * q;
    m.a2_dag_a2 = q * q * q * q;
    return m;
}

// Husimi function of the driven modes: a displaced vacuum Gaussian with
// quad = 1, cross = 0, lin = q(t).
inline GaussianQ coherent_qfunction(const SystemParams& p, TimePoint tp) {
    return make_gaussian_q(1.0, 0.0, displacement(p, tp));
}

}  // namespace cavityq
