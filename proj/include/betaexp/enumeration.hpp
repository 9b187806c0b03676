#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "betaexp/base.hpp"
#include "betaexp/tolerance.hpp"

namespace betaexp {

struct EnumerationOptions {
    bool normalized = true;            // scale sums by (β-1) into [0,1]
    bool deduplicate = true;           // collapse values within dedup_tol
    bool with_multiplicity = false;    // count words per retained value
    int level_cap = kDefaultLevelCap;  // memory guard on n
};

/// Sorted level-n sums Σ_{i<=n} ε_i β^{-i}, optionally (β-1)-normalised.
struct LevelSums {
    BaseValue beta;
    int n = 0;
    bool normalized = true;
    bool deduplicated = true;
    std::vector<double> values;
    std::optional<std::vector<std::uint64_t>> multiplicities;
    double dedup_tol = 0.0;

    std::size_t size() const noexcept { return values.size(); }
};

LevelSums enumerate_sums(const BaseValue& beta, int n, const ToleranceConfig& tol = {},
                         const EnumerationOptions& options = {});

/// Convenience overload matching the normalised / raw switch.
inline LevelSums enumerate_sums(const BaseValue& beta, int n, bool normalized,
                                const ToleranceConfig& tol = {})
{
    EnumerationOptions options;
    options.normalized = normalized;
    return enumerate_sums(beta, n, tol, options);
}

/// Cardinality of A_n(β) after collapsing values within dedup_tol.
std::size_t distinct_count(const BaseValue& beta, int n, const ToleranceConfig& tol = {},
                           int level_cap = kDefaultLevelCap);

/// Smallest gap between consecutive values.  DomainError with fewer than 2 values.
double min_gap(const LevelSums& sums);

/// Collapses a sorted list in place: a value within tol of the last kept value
/// is dropped.  `counts`, when given, is summed alongside.
void collapse_sorted(std::vector<double>& values, double tol,
                     std::vector<std::uint64_t>* counts = nullptr);

} // namespace betaexp
