#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "betaexp/base.hpp"
#include "betaexp/tolerance.hpp"

namespace betaexp {

/// Finite digit word over {0,1}, most significant digit first.
struct DigitSequence {
    BaseValue beta;
    std::vector<std::uint8_t> digits;

    std::size_t size() const noexcept { return digits.size(); }
    /// Σ_{i<=n} ε_i β^{-i}.
    double prefix_value(std::size_t n) const;
    double value() const { return prefix_value(digits.size()); }
};

/// Σ_{i<=n} ε_i β^{-i} for an arbitrary word.
double word_value(std::span<const std::uint8_t> digits, double beta);

/// Σ_{i>n} β^{-i} = β^{-n}/(β-1): the largest value a tail after n digits can add.
double tail_capacity(double beta, std::size_t n);

/// Digit 1 whenever the remainder stays >= -measure_tol.
DigitSequence greedy_expand(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol = {});

/// Digit 0 whenever the remaining tail can still absorb the remainder.
DigitSequence lazy_expand(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol = {});

/// 0 <= x - value(prefix) <= β^{-n}/(β-1), with measure_tol slack on both sides.
bool is_extendable_prefix(double x, std::span<const std::uint8_t> prefix, const BaseValue& beta,
                          const ToleranceConfig& tol = {});

/// Bit 0 set: digit 0 allowed; bit 1 set: digit 1 allowed.
using AllowedDigits = std::uint8_t;

inline bool allows(AllowedDigits set, int digit) noexcept { return (set >> digit) & 1u; }

struct BranchReport {
    std::vector<AllowedDigits> allowed;  // per depth 1..horizon
    std::vector<std::uint8_t> path;      // digits followed (the forced one, else 1)
    std::vector<double> remainders;      // x - value(path prefix) after each depth
    int unique_up_to = 0;                // first branching depth, or horizon if none
    int horizon = 0;
    bool branched = false;
};

enum class IntervalClosure { open, closed };

/// Walks the digit tree of x, recording which children stay extendable.
/// x must lie in (0, 1/(β-1)); `closed` admits the endpoints.
BranchReport branching_profile(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol = {},
                               IntervalClosure closure = IntervalClosure::open);

/// κ_N = min_{1<=n<=N} β^n (β-1)(x - value(prefix_n)) along the forced digit path.
/// StateError if x branches before depth N.
double kappa_lower_bound(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol = {},
                         IntervalClosure closure = IntervalClosure::open);

/// min over n of β^n(β-1)(x - value(prefix_n)) for a given word.
double kappa_along(double x, std::span<const std::uint8_t> digits, double beta);

/// Largest value of an extendable n-prefix of x (branch and bound over the digit tree).
double best_prefix_value(double x, const BaseValue& beta, int n, const ToleranceConfig& tol = {});

inline constexpr int kOptimalSearchCap = 20;

struct OptimalityReport {
    std::optional<DigitSequence> chain;
    std::optional<int> failure_depth;
    std::vector<double> best_values;      // best_prefix_value per depth 1..N
    std::vector<std::size_t> candidates;  // optimal prefixes retained per depth
};

/// Searches for one digit path whose every prefix attains best_prefix_value.
OptimalityReport optimal_chain_search(double x, const BaseValue& beta, int depth,
                                      const ToleranceConfig& tol = {});

} // namespace betaexp
