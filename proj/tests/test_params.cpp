#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "cavityq/params.hpp"

using namespace cavityq;

TEST_CASE("validate accepts physical parameters and classifies the regime") {
    const ThresholdClass sub = validate({1.0, 0.3, 0.1});
    CHECK(sub.regime == ThresholdRegime::Subthreshold);
    CHECK_THAT(sub.margin, Catch::Matchers::WithinAbs(0.4, 1e-15));

    const ThresholdClass at = validate({0.8, 0.4, 0.1});
    CHECK(at.regime == ThresholdRegime::AtThreshold);
    CHECK_THAT(at.margin, Catch::Matchers::WithinAbs(0.0, 1e-15));

    const ThresholdClass above = validate({1.0, 0.51, 0.0});
    CHECK(above.regime == ThresholdRegime::AboveThreshold);
    CHECK(above.margin < 0.0);
}

TEST_CASE("the threshold band is relative to kappa") {
    // inside the classification tolerance on either side
    CHECK(validate({1.0, 0.5 * (1.0 + 1e-13), 0.0}).regime == ThresholdRegime::AtThreshold);
    CHECK(validate({1.0, 0.5 * (1.0 - 1e-13), 0.0}).regime == ThresholdRegime::AtThreshold);
    // clearly outside it
    CHECK(validate({1.0, 0.5 * (1.0 + 1e-9), 0.0}).regime == ThresholdRegime::AboveThreshold);
    CHECK(validate({1.0, 0.5 * (1.0 - 1e-9), 0.0}).regime == ThresholdRegime::Subthreshold);
}

TEST_CASE("validate rejects unphysical parameters") {
    CHECK_THROWS_AS(validate({0.0, 0.1, 0.0}), NonPositiveKappa);
    CHECK_THROWS_AS(validate({-1.0, 0.1, 0.0}), NonPositiveKappa);
    CHECK_THROWS_AS(validate({1.0, -0.1, 0.0}), NegativeRate);
    CHECK_THROWS_AS(validate({1.0, 0.1, -0.2}), NegativeRate);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate({nan, 0.0, 0.0}), NonFinite);
    CHECK_THROWS_AS(validate({1.0, inf, 0.0}), NonFinite);
    CHECK_THROWS_AS(validate({1.0, 0.0, nan}), NonFinite);
}

TEST_CASE("decay rates split symmetrically around kappa") {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> kappa_dist(0.1, 5.0);
    std::uniform_real_distribution<double> ratio_dist(0.0, 0.499);
    for (int i = 0; i < 200; ++i) {
        const double kappa = kappa_dist(rng);
        const double gamma = kappa * ratio_dist(rng);
        const SystemParams p{kappa, gamma, 0.0};
        const auto [lp, lm] = lambda_pm(p);
        CHECK_THAT(lp + lm, Catch::Matchers::WithinRel(2.0 * kappa, 1e-14));
        CHECK_THAT(lp - lm, Catch::Matchers::WithinAbs(4.0 * gamma, 1e-14 * kappa));
        CHECK(lm > 0.0);
        CHECK(is_subthreshold(p));
    }
}

TEST_CASE("threshold guards") {
    const SystemParams at{0.8, 0.4, 0.0};
    const SystemParams above{1.0, 0.7, 0.0};
    const SystemParams below{1.0, 0.2, 0.0};

    CHECK_THROWS_AS(require_subthreshold(at), ThresholdDivergence);
    CHECK_THROWS_AS(require_subthreshold(above), ThresholdDivergence);
    CHECK_NOTHROW(require_subthreshold(below));

    CHECK_NOTHROW(require_not_above_threshold(at));
    CHECK_THROWS_AS(require_not_above_threshold(above), ThresholdDivergence);
    CHECK(!is_subthreshold(at));
    CHECK(!is_subthreshold(above));
}

TEST_CASE("time points") {
    const TimePoint t = TimePoint::at(1.5);
    CHECK(!t.is_steady());
    CHECK(t.time() == 1.5);
    CHECK(TimePoint::steady().is_steady());
    CHECK(TimePoint::at(0.0).time() == 0.0);

    CHECK_THROWS_AS(TimePoint::at(-0.1), NegativeTime);
    CHECK_THROWS_AS(TimePoint::at(std::numeric_limits<double>::quiet_NaN()), NonFinite);
    CHECK_THROWS_AS(TimePoint::at(std::numeric_limits<double>::infinity()), NonFinite);
}

TEST_CASE("error types derive from the shared base") {
    try {
        require_subthreshold({1.0, 0.7, 0.0});
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("threshold") != std::string::npos);
    }
}
