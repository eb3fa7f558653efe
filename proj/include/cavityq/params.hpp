#pragma once

#include <cmath>
#include <utility>

#include "cavityq/errors.hpp"

namespace cavityq {

// Rates of the damped two-mode cavity, all in the same inverse-time unit.
// kappa is the mirror decay rate of each mode, gamma the effective
// parametric (two-photon) coupling with the pump amplitude folded in, and
// epsilon the amplitude of the resonant coherent drive.
struct SystemParams {
    double kappa = 1.0;
    double gamma = 0.0;
    double epsilon = 0.0;
};

enum class ThresholdRegime { Subthreshold, AtThreshold, AboveThreshold };

struct ThresholdClass {
    ThresholdRegime regime;
    double margin;  // (kappa - 2*gamma) / kappa, positive below threshold
};

// Relative half-width of the band around kappa = 2*gamma that is treated as
// exactly at threshold.
inline constexpr double threshold_tol = 1e-12;

inline ThresholdClass validate(const SystemParams& p) {
    if (!(std::isfinite(p.kappa) && std::isfinite(p.gamma) && std::isfinite(p.epsilon)))
        throw NonFinite("system parameters must be finite");
    if (p.kappa <= 0.0)
        throw NonPositiveKappa("decay rate kappa must be positive");
    if (p.gamma < 0.0)
        throw NegativeRate("coupling gamma must be non-negative");
    if (p.epsilon < 0.0)
        throw NegativeRate("drive amplitude epsilon must be non-negative");

    const double margin = (p.kappa - 2.0 * p.gamma) / p.kappa;
    ThresholdRegime regime = ThresholdRegime::Subthreshold;
    if (std::abs(p.kappa - 2.0 * p.gamma) <= threshold_tol * p.kappa)
        regime = ThresholdRegime::AtThreshold;
    else if (2.0 * p.gamma > p.kappa)
        regime = ThresholdRegime::AboveThreshold;
    return {regime, margin};
}

// Decay rates of the two quadrature eigenmodes of the parametric system,
// lambda_plus = kappa + 2*gamma and lambda_minus = kappa - 2*gamma.  The
// minus rate reaches zero at threshold, where the slow quadrature stops
// relaxing.
inline std::pair<double, double> lambda_pm(const SystemParams& p) {
    validate(p);
    return {p.kappa + 2.0 * p.gamma, p.kappa - 2.0 * p.gamma};
}

inline bool is_subthreshold(const SystemParams& p) {
    return validate(p).regime == ThresholdRegime::Subthreshold;
}

// Guard for quantities that only exist strictly below threshold.
inline ThresholdClass require_subthreshold(const SystemParams& p) {
    const ThresholdClass c = validate(p);
    if (c.regime != ThresholdRegime::Subthreshold)
        throw ThresholdDivergence("steady state diverges at or above threshold (kappa <= 2*gamma)");
    return c;
}

// Guard for quantities that stay finite at threshold but not above it.
inline ThresholdClass require_not_above_threshold(const SystemParams& p) {
    const ThresholdClass c = validate(p);
    if (c.regime == ThresholdRegime::AboveThreshold)
        throw ThresholdDivergence("no steady state above threshold (kappa < 2*gamma)");
    return c;
}

// A time argument that is either a finite instant or the steady-state limit.
class TimePoint {
public:
    static TimePoint at(double t) {
        if (!std::isfinite(t))
            throw NonFinite("time must be finite");
        if (t < 0.0)
            throw NegativeTime("time must be non-negative");
        TimePoint tp;
        tp.steady_ = false;
        tp.time_ = t;
        return tp;
    }

    static TimePoint steady() { return TimePoint{}; }

    bool is_steady() const { return steady_; }

    // Only meaningful when !is_steady().
    double time() const { return time_; }

private:
    bool steady_ = true;
    double time_ = 0.0;
};

}  // namespace cavityq
