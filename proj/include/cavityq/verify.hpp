#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "cavityq/coherent.hpp"
#include "cavityq/oracle/composite.hpp"
#include "cavityq/oracle/fock.hpp"
#include "cavityq/oracle/gaussian_integral.hpp"
#include "cavityq/oracle/moment_ode.hpp"
#include "cavityq/params.hpp"
#include "cavityq/quadrature.hpp"
#include "cavityq/statistics.hpp"
#include "cavityq/subharmonic.hpp"
#include "cavityq/superposition.hpp"

namespace cavityq {

// Self-verification battery: every closed form in the library is compared
// against an independent brute-force computation (moment-equation
// integration, truncated-Fock master equation, composite-moment expansion,
// numeric quadrature), and the internal algebraic identities are checked at
// rounding accuracy.  `measured` is the deviation actually observed, so a
// report line stays meaningful when a check fails.

struct CheckResult {
    std::string name;
    double measured;
    double tolerance;
    bool pass;
};

struct VerifyOptions {
    int fock_dim = 15;           // Fock truncation of the parametric run
    int fock_dim_coherent = 8;   // Fock truncation of the driven run
    double tol = 1e-4;           // oracle-vs-closed-form comparisons
    bool with_fock = true;       // include the master-equation checks
};

namespace verify_detail {

inline void add(std::vector<CheckResult>& out, std::string name, double measured,
                double tolerance) {
    const bool pass = measured <= tolerance;  // NaN fails
    out.push_back({std::move(name), measured, tolerance, pass});
}

inline double rel_dev(double value, double reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

// Quadrature cross-check of the closed-form Gaussian integral on a handful
// of coefficient sets, including complex linear terms.
inline double gaussian_integral_max_dev() {
    struct Set {
        double a;
        std::complex<double> b, c;
        double A, B;
    };
    const Set sets[] = {
        {1.0, 0.0, 0.0, 0.0, 0.0},
        {1.0, 0.5, 0.3, 0.0, 0.0},
        {2.0, 0.0, 0.0, 0.3, 0.3},
        {1.5, {0.3, 0.2}, {0.1, -0.4}, -0.25, 0.3},
        {1.0, {0.0, 0.2}, {0.0, 0.2}, 0.45, 0.45},
    };
    const GaussLegendre rule(120);
    double worst = 0.0;
    for (const Set& s : sets) {
        const std::complex<double> closed =
            oracle::gaussian_integral_identity(s.a, s.b, s.c, s.A, s.B);
        // per-axis damping of the real part of the exponent; the axes can
        // have very different widths when A + B approaches a
        const double qx = s.a - std::real(s.A + s.B);
        const double qy = s.a + std::real(s.A + s.B);
        const double lx = std::abs(s.b + s.c);
        const double ly = std::abs(s.b - s.c);
        const auto radius = [](double quad, double lin) {
            return (lin + std::sqrt(lin * lin + 4.0 * quad * 45.0)) / (2.0 * quad);
        };
        const double rx = radius(qx, lx);
        const double ry = radius(qy, ly);
        const auto integrand = [&](double x, double y) {
            const std::complex<double> z(x, y);
            const std::complex<double> zc = std::conj(z);
            return std::exp(-s.a * std::norm(z) + s.b * z + s.c * zc + s.A * z * z
                            + s.B * zc * zc);
        };
        const double re = rule.integrate_2d(
            [&](double x, double y) { return integrand(x, y).real(); }, -rx, rx, -ry, ry);
        const double im = rule.integrate_2d(
            [&](double x, double y) { return integrand(x, y).imag(); }, -rx, rx, -ry, ry);
        const std::complex<double> numeric(re / std::numbers::pi, im / std::numbers::pi);
        worst = std::max(worst, std::abs(numeric - closed));
    }
    return worst;
}

inline double max_field_dev(const GaussianQ& x, const GaussianQ& y) {
    double d = std::abs(x.prefactor - y.prefactor);
    d = std::max(d, std::abs(x.quad - y.quad));
    d = std::max(d, std::abs(x.cross - y.cross));
    d = std::max(d, std::abs(x.lin - y.lin));
    d = std::max(d, std::abs(x.offset - y.offset));
    return d;
}

// Deviation of an integrated coherent-system moment vector from the exact
// coherent-state values at the same time.
inline double coherent_moment_dev(const oracle::MomentVector& m, double q) {
    const double q2 = q * q;
    double d = std::abs(m.mean_a - q);
    d = std::max(d, std::abs(m.mean_b - q));
    d = std::max(d, std::abs(m.number_a - q2));
    d = std::max(d, std::abs(m.number_b - q2));
    d = std::max(d, std::abs(m.ab - q2));
    d = std::max(d, std::abs(m.a_dag_b - q2));
    d = std::max(d, std::abs(m.aa - q2));
    d = std::max(d, std::abs(m.bb - q2));
    d = std::max(d, std::abs(m.ab_dag_dag - q2));
    return d;
}

// Fourth-order number moment <a^dag^2 a^2> of one superposed mode obtained
// from its marginal Q by antinormal-ordering: the |alpha|^2 and |alpha|^4
// averages of the Gaussian less the commutator corrections.
inline double q_route_fourth_moment(const MarginalGaussianQ& m) {
    const double iw = 1.0 / m.width;
    const double d2 = m.shift * m.shift;
    const double m2 = iw + d2;                                   // avg |alpha|^2
    const double m4 = 2.0 * iw * iw + 4.0 * d2 * iw + d2 * d2;   // avg |alpha|^4
    return m4 - 4.0 * (m2 - 1.0) - 2.0;
}

}  // namespace verify_detail

inline std::vector<CheckResult> run_verification(const SystemParams& p,
                                                 const VerifyOptions& opt = {}) {
    using verify_detail::add;
    using verify_detail::rel_dev;

    const ThresholdClass tc = validate(p);
    const bool sub = tc.regime == ThresholdRegime::Subthreshold;
    const bool vacuum = p.gamma == 0.0 && p.epsilon == 0.0;

    std::vector<CheckResult> out;

    // --- algebraic identities -------------------------------------------
    {
        const auto [lp, lm] = lambda_pm(p);
        const double dev = std::max(std::abs(lp + lm - 2.0 * p.kappa),
                                    std::abs(lp - lm - 4.0 * p.gamma))
                           / p.kappa;
        add(out, "threshold_rate_identities", dev, 1e-12);
    }
    {
        double dev = 0.0;
        for (double t : {0.0, 0.3 / p.kappa, 1.0 / p.kappa, 3.0 / p.kappa}) {
            const auto [ep, em] = mixing_factors(p, t);
            dev = std::max(dev, std::abs(ep * ep - em * em - std::exp(-p.kappa * t)));
        }
        add(out, "mixing_factor_decay", dev, 1e-12);
    }
    {
        const double q = displacement(p, TimePoint::steady());
        const GaussianQ coh = coherent_qfunction(p, TimePoint::steady());
        const auto [cross, fluct] = q_cross_moments(coh);
        double dev = std::abs(q_mean_photon_single(coh) - q * q);
        dev = std::max(dev, std::abs(cross - q * q));
        dev = std::max(dev, std::abs(fluct));
        add(out, "coherent_antinormal_moments", dev, 1e-10);
    }
    {
        const GaussianQ coh = coherent_qfunction(p, TimePoint::steady());
        const GaussianQ vac = make_gaussian_q(1.0, 0.0, 0.0);
        add(out, "superpose_identity_coherent",
            verify_detail::max_field_dev(superpose(coh, vac), coh), 0.0);
    }
    add(out, "gaussian_integral_quadrature", verify_detail::gaussian_integral_max_dev(), 1e-8);

    // --- coherent-system oracle -----------------------------------------
    {
        oracle::IntegrationConfig cfg;
        cfg.t_end = 1.0 / p.kappa;
        const auto series = oracle::integrate_coherent_odes(p, cfg);
        const double q_t = displacement(p, TimePoint::at(series.back().time));
        add(out, "coherent_ode_transient",
            verify_detail::coherent_moment_dev(series.back(), q_t), 1e-8);

        const auto steady = oracle::coherent_ode_steady(p);
        const double q_ss = displacement(p, TimePoint::steady());
        add(out, "coherent_ode_steady", verify_detail::coherent_moment_dev(steady, q_ss), 1e-8);
    }

    if (sub) {
        const SubharmonicMoments sm = steady_moments(p);
        const QCoefficients qc = char_coefficients(p);
        {
            double dev = std::max(0.0, qc.v - qc.u);  // u > v
            dev = std::max(dev, std::max(0.0, -qc.v));
            const double det_char = qc.a_coef * qc.a_coef - qc.b_coef * qc.b_coef;
            dev = std::max(dev, std::abs(qc.u * qc.u - qc.v * qc.v - 1.0 / det_char));
            dev = std::max(dev, std::abs((qc.a_coef - 1.0) - sm.n_a));
            add(out, "parametric_coefficient_identities", dev, 1e-12);
        }

        const GaussianQ coh = coherent_qfunction(p, TimePoint::steady());
        const GaussianQ subq = subharmonic_qfunction(p);
        const GaussianQ sup = superpose(coh, subq);
        add(out, "superpose_identity_centered",
            verify_detail::max_field_dev(superpose(make_gaussian_q(1.0, 0.0, 0.0), subq), subq),
            0.0);
        {
            const double dev = std::abs(q_mean_photon_single(sup) - q_mean_photon_single(coh)
                                        - q_mean_photon_single(subq));
            add(out, "mean_photon_additivity", dev, 1e-12);
        }
        {
            const auto [cross, fluct] = q_cross_moments(sup);
            const double q = displacement(p, TimePoint::steady());
            const double dev =
                std::max(std::abs(cross - q * q), std::abs(fluct - sm.m_ab));
            add(out, "superposed_cross_moments", dev, 1e-12);
        }
        {
            const MarginalGaussianQ mg = marginal(sup);
            const GaussLegendre rule(80);
            const double sigma = 1.0 / std::sqrt(2.0 * mg.width);
            const double radius = std::abs(mg.shift) + 6.0 * sigma;
            const double norm = rule.integrate_2d(
                [&](double x, double y) { return mg({x, y}); }, -radius, radius, -radius, radius);
            add(out, "superposed_marginal_normalization", std::abs(norm - 1.0), 1e-6);

            const int count = 201;
            const double extent = std::max(6.0, std::abs(mg.shift) + 6.0 * sigma);
            const double extracted = grid_sum_2d(
                                         [&](double x, double y) {
                                             return mg({x, y}) * (x * x + y * y);
                                         },
                                         -extent, extent, count)
                                     - 1.0;
            add(out, "superposed_marginal_mean_photon",
                std::abs(extracted - q_mean_photon_single(sup)), 1e-3);
        }
        {
            const double direct = photon_variance(p, TimePoint::steady());
            const double assembled = photon_variance_assembled(p, TimePoint::steady());
            double dev = rel_dev(direct, assembled);
            const double t = 1.0 / p.kappa;
            dev = std::max(dev, rel_dev(photon_variance(p, TimePoint::at(t)),
                                        photon_variance_assembled(p, TimePoint::at(t))));
            add(out, "photon_variance_routes", dev, 1e-12);
        }
        {
            const QuadratureReport qr = quadrature_report(p);
            if (!vacuum) {  // the vacuum has no g2, so no report to compare
                const EntanglementReport er = epr_report(p);
                add(out, "epr_sum_equals_plus_variance", std::abs(er.epr_sum - qr.plus_var), 0.0);
            }
            const double closed = 16.0 * (p.kappa * p.kappa - p.gamma * p.gamma)
                                  / (p.kappa * p.kappa - 4.0 * p.gamma * p.gamma);
            add(out, "uncertainty_product", rel_dev(qr.plus_var * qr.minus_var, closed), 1e-12);
        }
        {
            const double q = displacement(p, TimePoint::steady());
            const double closed =
                q * q * q * q + 4.0 * q * q * sm.n_a + 2.0 * sm.n_a * sm.n_a;
            const double via_q = verify_detail::q_route_fourth_moment(marginal(sup));
            add(out, "q_route_fourth_moment", rel_dev(via_q, closed), 1e-12);
        }
        {
            oracle::MomentVector ode = oracle::subharmonic_ode_steady(p);
            double dev = rel_dev(std::real(ode.number_a), sm.n_a);
            dev = std::max(dev, rel_dev(std::real(ode.number_b), sm.n_a));
            dev = std::max(dev, rel_dev(std::real(ode.ab), sm.m_ab));
            dev = std::max(dev, std::abs(ode.a_dag_b));
            dev = std::max(dev, std::abs(ode.aa));
            dev = std::max(dev, std::abs(std::imag(ode.number_a)));
            dev = std::max(dev, std::abs(std::imag(ode.ab)));
            add(out, "parametric_ode_steady", dev, 1e-8);
        }
    }

    // --- master-equation oracle -----------------------------------------
    if (opt.with_fock && sub) {
        const SubharmonicMoments sm = steady_moments(p);
        const double q = displacement(p, TimePoint::steady());
        const double q2 = q * q;

        oracle::IntegrationConfig cfg;
        cfg.truncation = opt.fock_dim;
        oracle::FockRunInfo info;
        const auto rho = oracle::fock_steady_state(p, oracle::CavitySystem::Subharmonic, cfg, &info);

        add(out, "fock_trace_preservation", info.trace_defect, 1e-9);
        add(out, "fock_hermiticity", info.hermiticity_defect, 1e-12);
        add(out, "fock_positivity", std::max(0.0, -rho.min_eigenvalue()), 1e-8);

        const oracle::MomentTable sub_table = oracle::density_moments(rho, 4);
        {
            double dev = std::abs(sub_table.get(1, 1, 0, 0) - sm.n_a);
            dev = std::max(dev, std::abs(sub_table.get(0, 0, 1, 1) - sm.n_a));
            dev = std::max(dev, std::abs(sub_table.get(0, 1, 0, 1) - sm.m_ab));
            dev = std::max(dev, std::abs(sub_table.get(1, 0, 0, 1)));
            dev = std::max(dev, std::abs(sub_table.get(0, 2, 0, 0)));
            add(out, "parametric_fock_moments", dev, 1e-6);
        }
        {
            const oracle::MomentVector ode = oracle::subharmonic_ode_steady(p);
            double dev = std::abs(sub_table.get(1, 1, 0, 0) - ode.number_a);
            dev = std::max(dev, std::abs(sub_table.get(0, 1, 0, 1) - ode.ab));
            dev = std::max(dev, std::abs(sub_table.get(1, 0, 0, 1) - ode.a_dag_b));
            dev = std::max(dev, std::abs(sub_table.get(0, 2, 0, 0) - ode.aa));
            add(out, "fock_vs_ode_moments", dev, 1e-6);
        }
        if (p.gamma <= 0.3 * p.kappa * (1.0 + threshold_tol)) {
            // restart on a larger basis from the embedded steady state; the
            // attractor is unique, so only the truncation delta remains.  The
            // number moments weight the top-band population by the level
            // index, so the gap sits just above the 1e-8 population gate.
            oracle::IntegrationConfig big = cfg;
            big.truncation = opt.fock_dim + 3;
            const auto rho_big =
                oracle::fock_steady_state(p, oracle::CavitySystem::Subharmonic, big, nullptr, &rho);
            const oracle::MomentTable big_table = oracle::density_moments(rho_big, 2);
            double dev = 0.0;
            dev = std::max(dev, std::abs(big_table.get(1, 1, 0, 0) - sub_table.get(1, 1, 0, 0)));
            dev = std::max(dev, std::abs(big_table.get(0, 0, 1, 1) - sub_table.get(0, 0, 1, 1)));
            dev = std::max(dev, std::abs(big_table.get(0, 1, 0, 1) - sub_table.get(0, 1, 0, 1)));
            dev = std::max(dev, std::abs(big_table.get(2, 0, 0, 0) - sub_table.get(2, 0, 0, 0)));
            add(out, "fock_truncation_convergence", dev, 2e-8);
        }

        oracle::IntegrationConfig coh_cfg;
        coh_cfg.truncation = opt.fock_dim_coherent;
        oracle::FockRunInfo coh_info;
        const auto rho_coh =
            oracle::fock_steady_state(p, oracle::CavitySystem::Coherent, coh_cfg, &coh_info);
        const oracle::MomentTable coh_table = oracle::density_moments(rho_coh, 4);
        {
            double dev = std::abs(coh_table.get(1, 1, 0, 0) - q2);
            dev = std::max(dev, std::abs(coh_table.get(0, 1, 0, 0) - q));
            dev = std::max(dev, std::abs(coh_table.get(2, 2, 0, 0) - q2 * q2));
            dev = std::max(dev, std::abs(coh_table.get(0, 1, 0, 1) - q2));
            add(out, "driven_fock_moments", dev, 1e-6);
        }
        add(out, "driven_fock_purity", std::abs(rho_coh.purity() - 1.0), 1e-6);

        // composite-moment expansion against every closed-form observable
        const oracle::CompositeObservables obs =
            vacuum ? oracle::CompositeObservables{}
                   : oracle::composite_observables(coh_table, sub_table);
        if (!vacuum) {
            add(out, "composite_mean_photon",
                std::abs(obs.mean_photon - mean_photon(p, TimePoint::steady())), opt.tol);
            add(out, "composite_photon_variance",
                std::abs(obs.photon_variance - photon_variance(p, TimePoint::steady())), opt.tol);
            const double g2s = g2_single(p);
            add(out, "composite_g2_single",
                std::max(std::abs(obs.g2_a - g2s), std::abs(obs.g2_b - g2s)), opt.tol);
            add(out, "composite_g2_cross", std::abs(obs.g2_ab - g2_cross(p)), opt.tol);
            const QuadratureReport qr = quadrature_report(p);
            add(out, "composite_quadrature_variances",
                std::max(std::abs(obs.plus_var - qr.plus_var),
                         std::abs(obs.minus_var - qr.minus_var)),
                opt.tol);
            {
                const GaussianQ sup = superpose(coherent_qfunction(p, TimePoint::steady()),
                                                subharmonic_qfunction(p));
                const double a4 = std::real(oracle::composite_moment(
                    {oracle::CompositeOp::ADag, oracle::CompositeOp::ADag,
                     oracle::CompositeOp::A, oracle::CompositeOp::A},
                    coh_table, sub_table));
                add(out, "q_route_fourth_moment_vs_fock",
                    std::abs(verify_detail::q_route_fourth_moment(marginal(sup)) - a4), opt.tol);
            }
        }
        {
            const oracle::FactorizationCheck f =
                oracle::gaussian_factorization_check(coh_table, sub_table);
            add(out, "gaussian_factorization_fourth_moment", std::abs(f.lhs - f.rhs), 1e-6);
        }

        {
            // analytic Husimi function against <alpha,beta|rho|alpha,beta>/pi^2
            // on a grid with complex legs; the states are padded so the probe
            // expansion keeps enough weight inside the basis
            const double pts[] = {-1.2, 0.0, 1.2};
            const double max_abs2 = 2.0 * pts[0] * pts[0];
            const auto rho_pad =
                rho.embedded(oracle::required_probe_truncation(max_abs2, opt.fock_dim));
            const auto coh_pad =
                rho_coh.embedded(oracle::required_probe_truncation(max_abs2, opt.fock_dim_coherent));
            const GaussianQ subq = subharmonic_qfunction(p);
            const GaussianQ cohq = coherent_qfunction(p, TimePoint::steady());
            double dev = 0.0;
            for (double xr : pts)
                for (double xi : pts)
                    for (double yr : pts)
                        for (double yi : pts) {
                            const std::complex<double> alpha(xr, xi), beta(yr, yi);
                            dev = std::max(dev, std::abs(subq(alpha, beta)
                                                         - oracle::numeric_qfunction(rho_pad, alpha,
                                                                                     beta)));
                            dev = std::max(dev, std::abs(cohq(alpha, beta)
                                                         - oracle::numeric_qfunction(coh_pad, alpha,
                                                                                     beta)));
                        }
            add(out, "fock_qfunction_pointwise", dev, 1e-6);
        }
        {
            // 2D quadrature of the numeric marginal Husimi function over a
            // grid reaching six standard deviations of the analytic marginal
            const oracle::SingleModeDensityMatrix rho_a = oracle::partial_trace_mode_b(rho);
            const MarginalGaussianQ mg = marginal(subharmonic_qfunction(p));
            const double radius = std::abs(mg.shift) + 6.0 / std::sqrt(2.0 * mg.width);
            const auto rho_a_pad = rho_a.embedded(
                oracle::required_probe_truncation(2.0 * radius * radius, rho_a.dim() - 1) + 1);
            const GaussLegendre rule(60);
            const double norm = rule.integrate_2d(
                [&](double x, double y) {
                    return oracle::numeric_qfunction_single(rho_a_pad, {x, y});
                },
                -radius, radius, -radius, radius);
            add(out, "fock_marginal_normalization", std::abs(norm - 1.0), 1e-4);
        }
    }

    return out;
}

}  // namespace cavityq
