#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "cavityq/oracle/moment_ode.hpp"

using namespace cavityq;
using oracle::IntegrationConfig;
using oracle::MomentVector;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("undriven coherent equations stay at vacuum") {
    const SystemParams p{1.0, 0.0, 0.0};
    const auto series = oracle::integrate_coherent_odes(p);
    for (const MomentVector& m : series) {
        CHECK(std::abs(m.mean_a) == 0.0);
        CHECK(std::abs(m.number_a) == 0.0);
        CHECK(std::abs(m.ab) == 0.0);
    }
}

TEST_CASE("driven mean follows the exponential ramp") {
    const SystemParams p{1.0, 0.0, 0.1};
    IntegrationConfig cfg;
    cfg.t_end = 1.0;
    const auto series = oracle::integrate_coherent_odes(p, cfg);
    const MomentVector& last = series.back();
    CHECK_THAT(last.time, WithinAbs(1.0, 1e-12));
    // q(t) = (2 eps / kappa) (1 - e^{-kappa t / 2})
    const double expected = -0.2 * std::expm1(-0.5);
    CHECK_THAT(last.mean_a.real(), WithinAbs(expected, 1e-10));
    CHECK_THAT(last.mean_a.real(), WithinAbs(0.0786938680574733, 1e-8));
    CHECK_THAT(last.mean_b.real(), WithinAbs(expected, 1e-10));
    // the driven state is coherent, so every second moment is a product of means
    CHECK_THAT(last.number_a.real(), WithinAbs(expected * expected, 1e-10));
    CHECK_THAT(last.aa.real(), WithinAbs(expected * expected, 1e-10));
    CHECK_THAT(last.ab.real(), WithinAbs(expected * expected, 1e-10));
}

TEST_CASE("coherent steady state settles onto the drive amplitude") {
    const SystemParams p{1.0, 0.0, 0.1};
    const MomentVector m = oracle::coherent_ode_steady(p);
    CHECK_THAT(m.mean_a.real(), WithinAbs(0.2, 1e-9));
    CHECK_THAT(m.number_a.real(), WithinAbs(0.04, 1e-8));
    CHECK_THAT(m.number_b.real(), WithinAbs(0.04, 1e-8));
    CHECK_THAT(m.ab.real(), WithinAbs(0.04, 1e-8));
    CHECK_THAT(m.a_dag_b.real(), WithinAbs(0.04, 1e-8));
}

TEST_CASE("unpumped subharmonic equations stay at vacuum") {
    const SystemParams p{1.0, 0.0, 0.0};
    const auto series = oracle::integrate_subharmonic_odes(p);
    for (const MomentVector& m : series) {
        CHECK(std::abs(m.number_a) == 0.0);
        CHECK(std::abs(m.ab) == 0.0);
        CHECK(std::abs(m.ab_dag_dag) == 0.0);
    }
}

TEST_CASE("subharmonic steady moments match the closed-form fixed point") {
    const SystemParams p{1.0, 0.3, 0.0};
    const MomentVector m = oracle::subharmonic_ode_steady(p);
    // n = 2 gamma^2 / (kappa^2 - 4 gamma^2), <ab> = -kappa gamma / (same)
    CHECK_THAT(m.number_a.real(), WithinAbs(0.28125, 1e-8));
    CHECK_THAT(m.number_b.real(), WithinAbs(0.28125, 1e-8));
    CHECK_THAT(m.ab.real(), WithinAbs(-0.46875, 1e-8));
    CHECK_THAT(std::abs(m.mean_a), WithinAbs(0.0, 1e-12));
    CHECK_THAT(std::abs(m.a_dag_b), WithinAbs(0.0, 1e-9));
    CHECK_THAT(std::abs(m.aa), WithinAbs(0.0, 1e-9));
}

TEST_CASE("steady detection reports failure at and above threshold") {
    // at threshold the slow pair mode has zero decay rate, so the moments
    // never settle inside the capped window
    CHECK_THROWS_AS(oracle::subharmonic_ode_steady(SystemParams{0.8, 0.4, 0.0}),
                    NoConvergence);
    // above threshold they grow without bound instead
    CHECK_THROWS_AS(oracle::subharmonic_ode_steady(SystemParams{1.0, 0.55, 0.0}),
                    NoConvergence);
}

TEST_CASE("oversized steps are rejected before integrating") {
    const SystemParams p{1.0, 0.3, 0.0};
    IntegrationConfig cfg;
    cfg.dt = 0.2;  // dt * kappa = 0.2 exceeds the stability guard
    CHECK_THROWS_AS(oracle::integrate_subharmonic_odes(p, cfg), StepSizeTooLarge);
    CHECK_THROWS_AS(oracle::subharmonic_ode_steady(p, cfg), StepSizeTooLarge);
    CHECK_THROWS_AS(oracle::integrate_coherent_odes(p, cfg), StepSizeTooLarge);
}

TEST_CASE("real drives keep every tracked moment real") {
    const SystemParams p{1.0, 0.3, 0.0};
    for (const MomentVector& m : oracle::integrate_subharmonic_odes(p)) {
        CHECK(std::abs(m.number_a.imag()) <= 1e-12);
        CHECK(std::abs(m.ab.imag()) <= 1e-12);
        CHECK(std::abs(m.a_dag_b.imag()) <= 1e-12);
        CHECK(std::abs(m.aa.imag()) <= 1e-12);
        CHECK(std::abs(m.ab_dag_dag.imag()) <= 1e-12);
    }
    const SystemParams pc{1.0, 0.0, 0.1};
    for (const MomentVector& m : oracle::integrate_coherent_odes(pc)) {
        CHECK(std::abs(m.mean_a.imag()) <= 1e-12);
        CHECK(std::abs(m.number_a.imag()) <= 1e-12);
        CHECK(std::abs(m.ab.imag()) <= 1e-12);
    }
}

TEST_CASE("coherent trajectories scale linearly with the drive") {
    std::mt19937 rng(48104);
    std::uniform_real_distribution<double> eps(0.02, 0.3);
    std::uniform_real_distribution<double> scale(1.5, 3.0);
    IntegrationConfig cfg;
    cfg.t_end = 2.0;
    for (int i = 0; i < 5; ++i) {
        const double e = eps(rng), s = scale(rng);
        const auto base = oracle::integrate_coherent_odes(SystemParams{1.0, 0.0, e}, cfg);
        const auto scaled =
            oracle::integrate_coherent_odes(SystemParams{1.0, 0.0, s * e}, cfg);
        REQUIRE(base.size() == scaled.size());
        for (std::size_t k = 0; k < base.size(); k += 50) {
            CHECK_THAT(scaled[k].mean_a.real(), WithinAbs(s * base[k].mean_a.real(), 1e-12));
            CHECK_THAT(scaled[k].number_a.real(),
                       WithinAbs(s * s * base[k].number_a.real(), 1e-12));
        }
    }
}
