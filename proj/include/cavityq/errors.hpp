#pragma once

#include <stdexcept>
#include <string>

namespace cavityq {

// Base class for every domain error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

struct NonPositiveKappa : Error { using Error::Error; };
struct NegativeRate : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct NegativeTime : Error { using Error::Error; };

// Requested a steady-state quantity that diverges at or above the
// parametric-oscillation threshold.
struct ThresholdDivergence : Error { using Error::Error; };

struct MalformedInput : Error { using Error::Error; };

// Second-order correlation of the vacuum: the normalizing intensity is zero.
struct UndefinedCorrelation : Error { using Error::Error; };

struct StepSizeTooLarge : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };
struct OrderTooHigh : Error { using Error::Error; };
struct MissingMoment : Error { using Error::Error; };
struct Divergent : Error { using Error::Error; };

}  // namespace cavityq
