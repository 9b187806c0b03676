#pragma once

#include "betaexp/errors.hpp"

namespace betaexp {

/// Lower end of the base interval on which the pair-counting estimates hold.
/// Only the first three digits are known; the value is used as a default.
inline constexpr double kTransversalityEndpoint = 1.497;

/// Default maximum level for sum enumeration (2^24 doubles per buffer).
inline constexpr int kDefaultLevelCap = 24;

struct ToleranceConfig {
    double dedup_tol = 1e-12;   // absolute; level sums closer than this are one point
    double root_margin = 1e-6;  // band around the unit circle treated as undecidable
    double measure_tol = 1e-9;  // slack for interval endpoints and measure comparisons

    void validate() const
    {
        if (!(dedup_tol > 0.0) || !(root_margin > 0.0) || !(measure_tol > 0.0)) {
            throw DomainError("tolerances must be strictly positive");
        }
    }
};

} // namespace betaexp
