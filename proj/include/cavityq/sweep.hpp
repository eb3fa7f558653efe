#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "cavityq/format.hpp"
#include "cavityq/params.hpp"
#include "cavityq/statistics.hpp"

namespace cavityq {

// Steady-state observables available as sweep columns.
enum class Observable {
    PlusVar,
    MinusVar,
    Squeezing,
    EprSum,
    MeanPhoton,
    PhotonVariance,
    G2A,
    G2AB,
};

inline const char* observable_name(Observable o) {
    switch (o) {
        case Observable::PlusVar: return "plus_var";
        case Observable::MinusVar: return "minus_var";
        case Observable::Squeezing: return "squeezing";
        case Observable::EprSum: return "epr_sum";
        case Observable::MeanPhoton: return "mean_photon";
        case Observable::PhotonVariance: return "photon_variance";
        case Observable::G2A: return "g2_a";
        case Observable::G2AB: return "g2_ab";
    }
    return "";
}

inline Observable parse_observable(const std::string& name) {
    for (Observable o : {Observable::PlusVar, Observable::MinusVar, Observable::Squeezing,
                         Observable::EprSum, Observable::MeanPhoton, Observable::PhotonVariance,
                         Observable::G2A, Observable::G2AB})
        if (name == observable_name(o))
            return o;
    throw MalformedInput("unknown observable: " + name);
}

inline std::vector<Observable> all_observables() {
    return {Observable::PlusVar,    Observable::MinusVar,       Observable::Squeezing,
            Observable::EprSum,     Observable::MeanPhoton,     Observable::PhotonVariance,
            Observable::G2A,        Observable::G2AB};
}

// A coupling sweep at fixed kappa and epsilon.  gamma runs over `steps`
// evenly spaced points from gamma_min to gamma_max inclusive; the endpoint
// may sit exactly at threshold, where the divergent observables are
// reported as inf and the finite-limit ones take their limit values.
struct SweepSpec {
    double kappa = 1.0;
    double epsilon = 0.0;
    double gamma_min = 0.0;
    double gamma_max = 0.0;
    int steps = 2;
    std::vector<Observable> observables = all_observables();
};

struct SweepRow {
    double gamma;
    std::vector<double> values;
};

namespace detail {

inline double sweep_value(const SystemParams& p, ThresholdRegime regime, Observable o) {
    const bool at = regime == ThresholdRegime::AtThreshold;
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (o) {
        case Observable::PlusVar:
            return quadrature_report(p).plus_var;
        case Observable::MinusVar:
            return quadrature_report(p).minus_var;
        case Observable::Squeezing:
            return quadrature_report(p).squeezing;
        case Observable::EprSum:
            return quadrature_report(p).plus_var;
        case Observable::MeanPhoton:
            return at ? inf : mean_photon(p, TimePoint::steady());
        case Observable::PhotonVariance:
            return at ? inf : photon_variance(p, TimePoint::steady());
        case Observable::G2A:
            return g2_single(p);
        case Observable::G2AB:
            return g2_cross(p);
    }
    return 0.0;
}

}  // namespace detail

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    validate({spec.kappa, spec.gamma_max, spec.epsilon});
    if (spec.steps < 2)
        throw MalformedInput("sweep needs at least 2 points");
    if (!(spec.gamma_min >= 0.0) || !(spec.gamma_min < spec.gamma_max))
        throw MalformedInput("sweep requires 0 <= gamma_min < gamma_max");
    if (spec.gamma_max > 0.5 * spec.kappa * (1.0 + threshold_tol))
        throw MalformedInput("sweep range must stay at or below threshold gamma = kappa/2");
    if (spec.observables.empty())
        throw MalformedInput("sweep needs at least one observable");

    std::vector<SweepRow> rows;
    rows.reserve(spec.steps);
    const double step = (spec.gamma_max - spec.gamma_min) / (spec.steps - 1);
    for (int i = 0; i < spec.steps; ++i) {
        const double gamma =
            (i == spec.steps - 1) ? spec.gamma_max : spec.gamma_min + i * step;
        const SystemParams p{spec.kappa, gamma, spec.epsilon};
        const ThresholdRegime regime = validate(p).regime;
        SweepRow row;
        row.gamma = gamma;
        row.values.reserve(spec.observables.size());
        for (Observable o : spec.observables) {
            double v;
            try {
                v = detail::sweep_value(p, regime, o);
            } catch (const UndefinedCorrelation&) {
                v = std::numeric_limits<double>::quiet_NaN();
            }
            row.values.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                            const std::vector<SweepRow>& rows) {
    os << "gamma";
    for (Observable o : spec.observables)
        os << ',' << observable_name(o);
    os << '\n';
    for (const SweepRow& row : rows) {
        os << format_double(row.gamma);
        for (double v : row.values)
            os << ',' << format_double(v);
        os << '\n';
    }
}

}  // namespace cavityq
