#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "cavityq/coherent.hpp"
#include "cavityq/oracle/fock.hpp"
#include "cavityq/subharmonic.hpp"
#include "cavityq/superposition.hpp"

using namespace cavityq;
using oracle::CavitySystem;
using oracle::TwoModeDensityMatrix;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const SystemParams kSub{1.0, 0.3, 0.0};
const SystemParams kCoh{1.0, 0.0, 0.1};

// The master-equation runs dominate this binary's runtime, so each steady
// state is computed once and shared across test cases.
struct CachedRun {
    TwoModeDensityMatrix rho;
    oracle::FockRunInfo info;
};

const CachedRun& subharmonic_run() {
    static const CachedRun run = [] {
        oracle::IntegrationConfig cfg;  // default truncation 15
        oracle::FockRunInfo info;
        TwoModeDensityMatrix rho =
            oracle::fock_steady_state(kSub, CavitySystem::Subharmonic, cfg, &info);
        return CachedRun{std::move(rho), info};
    }();
    return run;
}

const CachedRun& coherent_run() {
    static const CachedRun run = [] {
        oracle::IntegrationConfig cfg;
        cfg.truncation = 8;
        oracle::FockRunInfo info;
        TwoModeDensityMatrix rho =
            oracle::fock_steady_state(kCoh, CavitySystem::Coherent, cfg, &info);
        return CachedRun{std::move(rho), info};
    }();
    return run;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("density matrix container basics") {
    CHECK_THROWS_AS(TwoModeDensityMatrix(0), MalformedInput);
    const TwoModeDensityMatrix vac(3);
    CHECK(vac.dim() == 4);
    CHECK(vac.truncation() == 3);
    CHECK(vac(0, 0, 0, 0) == std::complex<double>(1.0));
    CHECK_THAT(vac.trace(), WithinRel(1.0, 1e-15));
    CHECK_THAT(vac.purity(), WithinRel(1.0, 1e-15));
    CHECK(vac.top_band_population() == 0.0);

    const TwoModeDensityMatrix big = vac.embedded(6);
    CHECK(big.dim() == 7);
    CHECK(big(0, 0, 0, 0) == std::complex<double>(1.0));
    CHECK_THAT(big.trace(), WithinRel(1.0, 1e-15));
    CHECK_THROWS_AS(vac.embedded(2), MalformedInput);
}

TEST_CASE("subharmonic steady density matrix is physical") {
    const CachedRun& run = subharmonic_run();
    CHECK(run.info.trace_defect <= 1e-9);
    CHECK(run.info.hermiticity_defect <= 1e-10);
    CHECK(run.info.top_band_population <= 1e-8);
    CHECK(run.rho.min_eigenvalue() >= -1e-9);
    // mixed state: the pair state has thermal marginals
    CHECK(run.rho.purity() < 0.9);
}

TEST_CASE("subharmonic steady moments match the closed forms") {
    const auto t = oracle::density_moments(subharmonic_run().rho, 4);
    const SubharmonicMoments mm = steady_moments(kSub);
    CHECK_THAT(t.get(1, 1, 0, 0).real(), WithinAbs(mm.n_a, 1e-6));
    CHECK_THAT(t.get(1, 1, 0, 0).real(), WithinAbs(0.28125, 1e-6));
    CHECK_THAT(t.get(0, 0, 1, 1).real(), WithinAbs(0.28125, 1e-6));
    CHECK_THAT(t.get(0, 1, 0, 1).real(), WithinAbs(-0.46875, 1e-6));
    CHECK_THAT(t.get(1, 0, 1, 0).real(), WithinAbs(-0.46875, 1e-6));
    CHECK_THAT(std::abs(t.get(0, 1, 0, 0)), WithinAbs(0.0, 1e-8));
    CHECK_THAT(std::abs(t.get(1, 0, 0, 1)), WithinAbs(0.0, 1e-8));
    CHECK_THAT(std::abs(t.get(0, 2, 0, 0)), WithinAbs(0.0, 1e-8));
    // Gaussian fourth moments via Wick pairing
    const double n = 0.28125, m = -0.46875;
    CHECK_THAT(t.get(1, 1, 1, 1).real(), WithinAbs(n * n + m * m, 2e-5));
    CHECK_THAT(t.get(2, 2, 0, 0).real(), WithinAbs(2.0 * n * n, 2e-5));
}

TEST_CASE("fock and moment-ode oracles agree") {
    const auto t = oracle::density_moments(subharmonic_run().rho, 2);
    const oracle::MomentVector ode = oracle::subharmonic_ode_steady(kSub);
    CHECK_THAT(t.get(1, 1, 0, 0).real(), WithinAbs(ode.number_a.real(), 1e-6));
    CHECK_THAT(t.get(0, 1, 0, 1).real(), WithinAbs(ode.ab.real(), 1e-6));
    CHECK_THAT(std::abs(t.get(1, 0, 0, 1) - ode.a_dag_b), WithinAbs(0.0, 1e-6));
}

TEST_CASE("driven steady state is the displaced coherent state") {
    const CachedRun& run = coherent_run();
    CHECK(run.info.trace_defect <= 1e-9);
    CHECK_THAT(run.rho.purity(), WithinAbs(1.0, 1e-6));
    const auto t = oracle::density_moments(run.rho, 4);
    CHECK_THAT(t.get(0, 1, 0, 0).real(), WithinAbs(0.2, 1e-6));
    CHECK_THAT(t.get(1, 1, 0, 0).real(), WithinAbs(0.04, 1e-6));
    CHECK_THAT(t.get(1, 0, 0, 1).real(), WithinAbs(0.04, 1e-6));
    // coherent states factorize: normalized fourth moments are powers of q
    CHECK_THAT(t.get(2, 2, 0, 0).real(), WithinAbs(0.0016, 1e-7));
    CHECK_THAT(t.get(1, 1, 1, 1).real(), WithinAbs(0.0016, 1e-7));
}

TEST_CASE("unpumped systems relax to the vacuum projector") {
    oracle::IntegrationConfig cfg;
    cfg.truncation = 4;
    const TwoModeDensityMatrix rho =
        oracle::fock_steady_state(SystemParams{1.0, 0.0, 0.0}, CavitySystem::Subharmonic, cfg);
    CHECK_THAT(rho(0, 0, 0, 0).real(), WithinAbs(1.0, 1e-10));
    CHECK(rho.top_band_population() <= 1e-12);
    CHECK_THAT(oracle::numeric_qfunction(rho, 0.0, 0.0), WithinAbs(1.0 / (kPi * kPi), 1e-10));
}

TEST_CASE("threshold and basis-overflow failures") {
    CHECK_THROWS_AS(
        oracle::fock_steady_state(SystemParams{0.8, 0.4, 0.0}, CavitySystem::Subharmonic),
        ThresholdDivergence);
    CHECK_THROWS_AS(
        oracle::fock_steady_state(SystemParams{1.0, 0.6, 0.0}, CavitySystem::Subharmonic),
        ThresholdDivergence);
    // subthreshold but with a steady photon number far beyond the basis
    oracle::IntegrationConfig cfg;
    cfg.truncation = 8;
    CHECK_THROWS_AS(
        oracle::fock_steady_state(SystemParams{1.0, 0.49, 0.0}, CavitySystem::Subharmonic, cfg),
        TruncationTooSmall);
}

TEST_CASE("restarting from the steady state settles immediately") {
    const CachedRun& run = subharmonic_run();
    oracle::IntegrationConfig cfg;  // truncation 15 matches the cached state
    oracle::FockRunInfo info;
    const TwoModeDensityMatrix again =
        oracle::fock_steady_state(kSub, CavitySystem::Subharmonic, cfg, &info, &run.rho);
    CHECK(info.steps <= 2 * run.info.steps / 10 + 200);
    const auto t = oracle::density_moments(again, 2);
    CHECK_THAT(t.get(1, 1, 0, 0).real(), WithinAbs(0.28125, 1e-6));
}

TEST_CASE("numeric Husimi values match the closed forms") {
    const TwoModeDensityMatrix& rho = subharmonic_run().rho;
    const GaussianQ closed = subharmonic_qfunction(kSub);
    // origin: prefactor (u^2 - v^2)/pi^2 with u = 82/91, v = 30/91
    CHECK_THAT(oracle::numeric_qfunction(rho, 0.0, 0.0),
               WithinAbs((64.0 / 91.0) / (kPi * kPi), 1e-6));
    const std::complex<double> pts[] = {{0.0, 0.0}, {1.0, 0.0}, {-0.5, 0.8}, {0.3, -1.1}};
    for (const auto& a : pts)
        for (const auto& b : pts)
            CHECK_THAT(oracle::numeric_qfunction(rho, a, b), WithinAbs(closed(a, b), 1e-6));
    // frozen value on the correlated diagonal
    CHECK_THAT(oracle::numeric_qfunction(rho, 1.0, 1.0),
               WithinAbs(std::exp(-224.0 / 91.0) * (64.0 / 91.0) / (kPi * kPi), 1e-6));

    const TwoModeDensityMatrix& coh = coherent_run().rho;
    const GaussianQ closed_coh = coherent_qfunction(kCoh, TimePoint::steady());
    CHECK_THAT(oracle::numeric_qfunction(coh, 0.2, 0.2),
               WithinAbs(1.0 / (kPi * kPi), 1e-6));
    CHECK_THAT(oracle::numeric_qfunction(coh, 0.0, 0.0),
               WithinAbs(std::exp(-0.08) / (kPi * kPi), 1e-6));
    // the probe grid outruns the small driven-state basis, so pad it first
    double max_abs2 = 0.0;
    for (const auto& a : pts)
        max_abs2 = std::max(max_abs2, std::norm(a));
    const TwoModeDensityMatrix coh_pad =
        coh.embedded(oracle::required_probe_truncation(max_abs2, coh.truncation()));
    for (const auto& a : pts)
        for (const auto& b : pts)
            CHECK_THAT(oracle::numeric_qfunction(coh_pad, a, b),
                       WithinAbs(closed_coh(a, b), 1e-6));
}

TEST_CASE("oversized probes are rejected unless the state is embedded") {
    const TwoModeDensityMatrix& rho = subharmonic_run().rho;
    const std::complex<double> probe(2.5, 0.0);
    CHECK_THROWS_AS(oracle::numeric_qfunction(rho, probe, 0.0), TruncationTooSmall);

    const int pad = oracle::required_probe_truncation(std::norm(probe), rho.truncation());
    REQUIRE(pad > rho.truncation());
    const TwoModeDensityMatrix padded = rho.embedded(pad);
    const GaussianQ closed = subharmonic_qfunction(kSub);
    CHECK_THAT(oracle::numeric_qfunction(padded, probe, 0.0),
               WithinAbs(closed(probe, 0.0), 1e-6));
    CHECK_THAT(oracle::numeric_qfunction(padded, probe, -probe),
               WithinAbs(closed(probe, -probe), 1e-6));
    // padding is invisible at probes the original basis already handled
    CHECK_THAT(oracle::numeric_qfunction(padded, 1.0, 1.0),
               WithinAbs(oracle::numeric_qfunction(rho, 1.0, 1.0), 1e-12));
}

TEST_CASE("a state leaking into the top levels is rejected outright") {
    TwoModeDensityMatrix rho(3);
    rho(0, 0, 0, 0) = 0.9;
    rho(3, 0, 3, 0) = 0.1;
    CHECK_THROWS_AS(oracle::numeric_qfunction(rho, 0.0, 0.0), TruncationTooSmall);
}

TEST_CASE("partial trace reproduces the single-mode marginal") {
    const TwoModeDensityMatrix& rho = subharmonic_run().rho;
    const oracle::SingleModeDensityMatrix rho_a = oracle::partial_trace_mode_b(rho);
    REQUIRE(rho_a.dim() == rho.dim());

    double trace = 0.0, number = 0.0;
    for (int i = 0; i < rho_a.dim(); ++i) {
        trace += rho_a(i, i).real();
        number += i * rho_a(i, i).real();
    }
    CHECK_THAT(trace, WithinAbs(1.0, 1e-9));
    CHECK_THAT(number, WithinAbs(0.28125, 1e-6));

    const MarginalGaussianQ closed = marginal(subharmonic_qfunction(kSub));
    CHECK_THAT(closed.width, WithinRel(32.0 / 41.0, 1e-14));
    CHECK(closed.shift == 0.0);
    CHECK_THAT(oracle::numeric_qfunction_single(rho_a, 0.0),
               WithinAbs((32.0 / 41.0) / kPi, 1e-6));
    CHECK_THAT(oracle::numeric_qfunction_single(rho_a, {0.7, 0.2}),
               WithinAbs(closed({0.7, 0.2}), 1e-6));

    // single-mode probe gate and zero-pad escape hatch
    const std::complex<double> probe(3.0, 0.0);
    CHECK_THROWS_AS(oracle::numeric_qfunction_single(rho_a, probe), TruncationTooSmall);
    const int pad = oracle::required_probe_truncation(std::norm(probe), rho_a.dim() - 1);
    const oracle::SingleModeDensityMatrix padded = rho_a.embedded(pad + 1);
    CHECK_THAT(oracle::numeric_qfunction_single(padded, probe),
               WithinAbs(closed(probe), 1e-6));
    CHECK_THROWS_AS(padded.embedded(2), MalformedInput);
}

TEST_CASE("moment extraction order limits") {
    const TwoModeDensityMatrix vac(2);
    CHECK_THROWS_AS(oracle::density_moments(vac, 5), OrderTooHigh);
    CHECK_THROWS_AS(oracle::density_moments(vac, -1), MalformedInput);
    const auto t = oracle::density_moments(vac, 2);
    CHECK_THAT(t.get(0, 0, 0, 0).real(), WithinRel(1.0, 1e-15));
    CHECK(std::abs(t.get(1, 1, 0, 0)) == 0.0);
}
