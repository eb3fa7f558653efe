#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "cavityq/params.hpp"

namespace cavityq::oracle {

// Brute-force moment-equation integrators.  These never use the closed
// forms of the main library: they integrate the coupled first- and
// second-moment equations of motion from vacuum with a fixed-step RK4
// scheme, providing an independent check on the analytic solutions.

// Expectation values tracked by the integrators.  Kept complex even though
// every value stays real for real drive amplitudes; the imaginary parts
// double as a sanity check.
struct MomentVector {
    std::complex<double> mean_a, mean_b;      // <a>, <b>
    std::complex<double> number_a, number_b;  // <a^dag a>, <b^dag b>
    std::complex<double> ab, a_dag_b;         // <a b>, <a^dag b>
    std::complex<double> aa, bb;              // <a^2>, <b^2>
    std::complex<double> ab_dag_dag;          // <a^dag b^dag>
    double time = 0.0;
};

// Shared configuration for the brute-force integrators.  Zero-valued fields
// select the defaults noted next to them.
struct IntegrationConfig {
    double dt = 0.0;               // default min(1e-2/kappa, 1e-2/lambda_plus)
    double t_end = 0.0;            // default: 10/kappa for time series; for
                                   // steady detection a cap of 240/kappa,
                                   // stretched to 40/lambda_minus near threshold
    int truncation = 15;           // Fock cutoff per mode (density-matrix oracle)
    double convergence_tol = 0.0;  // default 1e-11 moment drift per check interval
};

namespace detail {

using State = std::array<std::complex<double>, 9>;

// state layout: mean_a, mean_b, number_a, number_b, ab, a_dag_b, aa, bb, ab_dag_dag
enum StateIndex { kMeanA, kMeanB, kNumA, kNumB, kAB, kADagB, kAA, kBB, kABDagDag };

inline double resolve_dt(const SystemParams& p, const IntegrationConfig& c) {
    const auto [lp, lm] = lambda_pm(p);
    (void)lm;
    const double dt = c.dt > 0.0 ? c.dt : std::min(1e-2 / p.kappa, 1e-2 / lp);
    if (dt * p.kappa > 0.1)
        throw StepSizeTooLarge("dt*kappa exceeds the 0.1 stability guard");
    return dt;
}

inline double resolve_t_end(const SystemParams& p, const IntegrationConfig& c) {
    if (c.t_end > 0.0)
        return c.t_end;
    // the slow pair mode relaxes at lambda_minus = kappa - 2*gamma, so the
    // settling window must stretch as threshold approaches; the hard cap
    // keeps runs finite when lambda_minus is effectively zero, where steady
    // detection is meant to fail with NoConvergence
    const auto [lp, lm] = lambda_pm(p);
    (void)lp;
    double cap = 240.0 / p.kappa;
    if (lm > threshold_tol * p.kappa)
        cap = std::max(cap, std::min(40.0 / lm, 2e4 / p.kappa));
    return cap;
}

inline double resolve_tol(const IntegrationConfig& c) {
    return c.convergence_tol > 0.0 ? c.convergence_tol : 1e-11;
}

// d<.>/dt for the coherently driven damped modes.
inline State coherent_rhs(const SystemParams& p, const State& s) {
    const double k = p.kappa, e = p.epsilon;
    State d;
    d[kMeanA] = -0.5 * k * s[kMeanA] + e;
    d[kMeanB] = -0.5 * k * s[kMeanB] + e;
    d[kNumA] = -k * s[kNumA] + e * (s[kMeanA] + std::conj(s[kMeanA]));
    d[kNumB] = -k * s[kNumB] + e * (s[kMeanB] + std::conj(s[kMeanB]));
    d[kAB] = -k * s[kAB] + e * (s[kMeanA] + s[kMeanB]);
    d[kADagB] = -k * s[kADagB] + e * (std::conj(s[kMeanA]) + s[kMeanB]);
    d[kAA] = -k * s[kAA] + 2.0 * e * s[kMeanA];
    d[kBB] = -k * s[kBB] + 2.0 * e * s[kMeanB];
    d[kABDagDag] = -k * s[kABDagDag] + e * (std::conj(s[kMeanA]) + std::conj(s[kMeanB]));
    return d;
}

// d<.>/dt for the parametric pair.  The pair-creation term feeds <a b> with
// the constant -gamma and couples it to the occupations; first moments and
// the remaining second moments relax freely from vacuum.
inline State subharmonic_rhs(const SystemParams& p, const State& s) {
    const double k = p.kappa, g = p.gamma;
    State d;
    d[kMeanA] = -0.5 * k * s[kMeanA] - g * std::conj(s[kMeanB]);
    d[kMeanB] = -0.5 * k * s[kMeanB] - g * std::conj(s[kMeanA]);
    d[kNumA] = -k * s[kNumA] - g * (s[kAB] + std::conj(s[kAB]));
    d[kNumB] = -k * s[kNumB] - g * (s[kAB] + std::conj(s[kAB]));
    d[kAB] = -k * s[kAB] - g * (s[kNumA] + s[kNumB]) - g;
    d[kADagB] = -k * s[kADagB] - g * (std::conj(s[kAA]) + std::conj(s[kBB]));
    d[kAA] = -k * s[kAA] - 2.0 * g * std::conj(s[kADagB]);
    d[kBB] = -k * s[kBB] - 2.0 * g * s[kADagB];
    d[kABDagDag] = -k * s[kABDagDag] - g * (std::conj(s[kNumA]) + std::conj(s[kNumB])) - g;
    return d;
}

template <class Rhs>
inline void rk4_step(const Rhs& rhs, State& s, double dt) {
    const State k1 = rhs(s);
    State tmp;
    for (int i = 0; i < 9; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
    const State k2 = rhs(tmp);
    for (int i = 0; i < 9; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
    const State k3 = rhs(tmp);
    for (int i = 0; i < 9; ++i) tmp[i] = s[i] + dt * k3[i];
    const State k4 = rhs(tmp);
    for (int i = 0; i < 9; ++i)
        s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

inline MomentVector to_moments(const State& s, double t) {
    MomentVector m;
    m.mean_a = s[kMeanA];
    m.mean_b = s[kMeanB];
    m.number_a = s[kNumA];
    m.number_b = s[kNumB];
    m.ab = s[kAB];
    m.a_dag_b = s[kADagB];
    m.aa = s[kAA];
    m.bb = s[kBB];
    m.ab_dag_dag = s[kABDagDag];
    m.time = t;
    return m;
}

template <class Rhs>
inline std::vector<MomentVector> integrate_series(const SystemParams& p, const Rhs& rhs,
                                                  const IntegrationConfig& c) {
    validate(p);
    const double dt = resolve_dt(p, c);
    const double t_end = c.t_end > 0.0 ? c.t_end : 10.0 / p.kappa;
    State s{};  // vacuum
    std::vector<MomentVector> out;
    out.reserve(static_cast<std::size_t>(t_end / dt) + 2);
    double t = 0.0;
    out.push_back(to_moments(s, t));
    while (t < t_end - 1e-12 * t_end) {
        const double step = std::min(dt, t_end - t);
        rk4_step(rhs, s, step);
        t += step;
        out.push_back(to_moments(s, t));
    }
    return out;
}

template <class Rhs>
inline MomentVector integrate_to_steady(const SystemParams& p, const Rhs& rhs,
                                        const IntegrationConfig& c) {
    validate(p);
    const double dt = resolve_dt(p, c);
    const double t_end = resolve_t_end(p, c);
    const double tol = resolve_tol(c);
    const int check_every = std::max(1, static_cast<int>(std::lround(1.0 / (p.kappa * dt))));
    State s{};
    State last = s;
    double t = 0.0;
    int step = 0;
    while (t < t_end) {
        rk4_step(rhs, s, dt);
        t += dt;
        if (++step % check_every == 0) {
            double drift = 0.0;
            for (int i = 0; i < 9; ++i)
                drift = std::max(drift, std::abs(s[i] - last[i]));
            if (drift < tol)
                return to_moments(s, t);
            last = s;
        }
    }
    throw NoConvergence("moment drift did not settle before t_end");
}

}  // namespace detail

inline std::vector<MomentVector> integrate_coherent_odes(const SystemParams& p,
                                                         const IntegrationConfig& c = {}) {
    return detail::integrate_series(
        p, [&p](const detail::State& s) { return detail::coherent_rhs(p, s); }, c);
}

inline std::vector<MomentVector> integrate_subharmonic_odes(const SystemParams& p,
                                                            const IntegrationConfig& c = {}) {
    return detail::integrate_series(
        p, [&p](const detail::State& s) { return detail::subharmonic_rhs(p, s); }, c);
}

inline MomentVector coherent_ode_steady(const SystemParams& p, const IntegrationConfig& c = {}) {
    return detail::integrate_to_steady(
        p, [&p](const detail::State& s) { return detail::coherent_rhs(p, s); }, c);
}

inline MomentVector subharmonic_ode_steady(const SystemParams& p,
                                           const IntegrationConfig& c = {}) {
    return detail::integrate_to_steady(
        p, [&p](const detail::State& s) { return detail::subharmonic_rhs(p, s); }, c);
}

}  // namespace cavityq::oracle
