#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "cavityq/subharmonic.hpp"

using namespace cavityq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const SystemParams kRef{1.0, 0.3, 0.1};
}

TEST_CASE("steady pair moments at the reference point") {
    const SubharmonicMoments m = steady_moments(kRef);
    // 2*gamma^2/(kappa^2 - 4 gamma^2) = 0.18/0.64 and -kappa*gamma/... = -0.3/0.64
    CHECK_THAT(m.n_a, WithinRel(0.28125, 1e-14));
    CHECK_THAT(m.m_ab, WithinRel(-0.46875, 1e-14));
    CHECK_THAT(m.cross, WithinAbs(0.0, 1e-15));
    CHECK_THAT(m.sq_a, WithinAbs(0.0, 1e-15));
}

TEST_CASE("pair moments diverge toward threshold and vanish without coupling") {
    CHECK(steady_moments({1.0, 0.0, 0.0}).n_a == 0.0);
    CHECK(steady_moments({1.0, 0.0, 0.0}).m_ab == 0.0);
    CHECK_THROWS_AS(steady_moments({0.8, 0.4, 0.0}), ThresholdDivergence);
    CHECK_THROWS_AS(steady_moments({1.0, 0.6, 0.0}), ThresholdDivergence);

    // occupation grows monotonically with the coupling
    double prev = -1.0;
    for (double g : {0.0, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49}) {
        const double n = steady_moments({1.0, g, 0.0}).n_a;
        CHECK(n > prev);
        prev = n;
    }
}

TEST_CASE("anomalous strength always dominates the occupation") {
    // |m| > n guarantees nonclassicality of the pair correlations
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> g_dist(0.01, 0.49);
    for (int i = 0; i < 200; ++i) {
        const SubharmonicMoments m = steady_moments({1.0, g_dist(rng), 0.0});
        CHECK(std::abs(m.m_ab) > m.n_a);
        CHECK(m.m_ab < 0.0);
        // physical Gaussian pair state: |m|^2 <= n(n+1)
        CHECK(m.m_ab * m.m_ab <= m.n_a * (m.n_a + 1.0) * (1.0 + 1e-14));
    }
}

TEST_CASE("Q exponent coefficients at the reference point") {
    const QCoefficients c = char_coefficients(kRef);
    CHECK_THAT(c.a_coef, WithinRel(1.28125, 1e-14));       // (k^2-2g^2)/(k^2-4g^2)
    CHECK_THAT(c.b_coef, WithinRel(0.46875, 1e-14));       // k*g/(k^2-4g^2)
    CHECK_THAT(c.u, WithinRel(82.0 / 91.0, 1e-13));        // a/(a^2-b^2)
    CHECK_THAT(c.v, WithinRel(30.0 / 91.0, 1e-13));        // b/(a^2-b^2)
    CHECK_THAT(c.u * c.u - c.v * c.v, WithinRel(64.0 / 91.0, 1e-13));
    // a - 1 equals the occupation
    CHECK_THAT(c.a_coef - 1.0, WithinRel(steady_moments(kRef).n_a, 1e-13));
}

TEST_CASE("subharmonic Q function is centered, normalized, and positive") {
    const GaussianQ g = subharmonic_qfunction(kRef);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(g.is_centered());
    CHECK_THAT(g.prefactor, WithinRel((64.0 / 91.0) / pi2, 1e-13));
    CHECK_THAT(g({0.0, 0.0}, {0.0, 0.0}), WithinRel(0.70329670329670 / pi2, 1e-10));

    // the analytic value at alpha = beta = 1 used by the pointwise oracle
    const double expected =
        std::exp(-2.0 * (82.0 + 30.0) / 91.0) * (64.0 / 91.0) / pi2;
    CHECK_THAT(g({1.0, 0.0}, {1.0, 0.0}), WithinRel(expected, 1e-12));

    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> x(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double val = g({x(rng), x(rng)}, {x(rng), x(rng)});
        CHECK(val >= 0.0);
        CHECK(val <= g({0.0, 0.0}, {0.0, 0.0}) * (1.0 + 1e-12));
    }
}

TEST_CASE("mixing factors decay with the split rates") {
    const auto [ep0, em0] = mixing_factors(kRef, 0.0);
    CHECK(ep0 == 1.0);
    CHECK(em0 == 0.0);

    const auto [ep, em] = mixing_factors(kRef, 1.0);
    // 0.5*(e^{-0.8} + e^{-0.2}) and 0.5*(e^{-0.8} - e^{-0.2})
    CHECK_THAT(ep, WithinAbs(0.634029858597602, 1e-14));
    CHECK_THAT(em, WithinAbs(-0.184700894480380, 1e-14));

    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> t_dist(0.0, 6.0);
    std::uniform_real_distribution<double> g_dist(0.0, 0.49);
    for (int i = 0; i < 200; ++i) {
        const SystemParams p{1.0, g_dist(rng), 0.0};
        const double t = t_dist(rng);
        const auto [p_t, m_t] = mixing_factors(p, t);
        // the squares differ by the bare cavity decay at all times
        CHECK_THAT(p_t * p_t - m_t * m_t, WithinRel(std::exp(-p.kappa * t), 1e-12));
        CHECK(m_t <= 0.0);
    }
}
