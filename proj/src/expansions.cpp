#include "betaexp/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace betaexp {
namespace {

void check_admissible(double x, const BaseValue& beta, const ToleranceConfig& tol)
{
    tol.validate();
    if (!(x >= -tol.measure_tol && x <= beta.interval_length() + tol.measure_tol)) {
        throw DomainError("x = " + std::to_string(x) + " lies outside [0, 1/(beta-1)]");
    }
}

void check_depth(int depth)
{
    if (depth < 0) {
        throw DomainError("depth must be nonnegative");
    }
}

// β^{-1}, ..., β^{-depth}
std::vector<double> inverse_powers(double beta, int depth)
{
    std::vector<double> p(static_cast<std::size_t>(depth) + 1);
    p[0] = 1.0;
    for (int i = 1; i <= depth; ++i) {
        p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i - 1)] / beta;
    }
    return p;
}

bool remainder_in_window(double r, double capacity, const ToleranceConfig& tol)
{
    return r >= -tol.measure_tol && r <= capacity + tol.measure_tol;
}

} // namespace

double word_value(std::span<const std::uint8_t> digits, double beta)
{
    double value = 0.0;
    double p = 1.0;
    for (const auto d : digits) {
        p /= beta;
        if (d) value += p;
    }
    return value;
}

double DigitSequence::prefix_value(std::size_t n) const
{
    return word_value(std::span(digits).first(std::min(n, digits.size())), beta.value());
}

double tail_capacity(double beta, std::size_t n)
{
    return std::pow(beta, -static_cast<double>(n)) / (beta - 1.0);
}

DigitSequence greedy_expand(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol)
{
    check_admissible(x, beta, tol);
    check_depth(depth);
    const auto p = inverse_powers(beta.value(), depth);
    DigitSequence seq{beta, {}};
    seq.digits.reserve(static_cast<std::size_t>(depth));
    double r = x;
    for (int i = 1; i <= depth; ++i) {
        const double after = r - p[static_cast<std::size_t>(i)];
        if (after >= -tol.measure_tol) {
            seq.digits.push_back(1);
            r = after;
        } else {
            seq.digits.push_back(0);
        }
    }
    return seq;
}

DigitSequence lazy_expand(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol)
{
    check_admissible(x, beta, tol);
    check_depth(depth);
    const double b = beta.value();
    const auto p = inverse_powers(b, depth);
    DigitSequence seq{beta, {}};
    seq.digits.reserve(static_cast<std::size_t>(depth));
    double r = x;
    for (int i = 1; i <= depth; ++i) {
        const double capacity = p[static_cast<std::size_t>(i)] / (b - 1.0);
        if (r <= capacity + tol.measure_tol) {
            seq.digits.push_back(0);
        } else {
            seq.digits.push_back(1);
            r -= p[static_cast<std::size_t>(i)];
        }
    }
    return seq;
}

bool is_extendable_prefix(double x, std::span<const std::uint8_t> prefix, const BaseValue& beta,
                          const ToleranceConfig& tol)
{
    for (const auto d : prefix) {
        if (d > 1) {
            throw DomainError("digits must be 0 or 1");
        }
    }
    const double r = x - word_value(prefix, beta.value());
    return remainder_in_window(r, tail_capacity(beta.value(), prefix.size()), tol);
}

BranchReport branching_profile(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol,
                               IntervalClosure closure)
{
    tol.validate();
    check_depth(depth);
    const double right = beta.interval_length();
    const bool inside = closure == IntervalClosure::open ? (x > 0.0 && x < right) : (x >= 0.0 && x <= right);
    if (!inside) {
        throw DomainError("x = " + std::to_string(x) + " outside the interval for uniqueness analysis");
    }

    const double b = beta.value();
    const auto p = inverse_powers(b, depth);
    BranchReport report;
    report.horizon = depth;
    report.unique_up_to = depth;
    double r = x;
    for (int i = 1; i <= depth; ++i) {
        const double capacity = p[static_cast<std::size_t>(i)] / (b - 1.0);
        AllowedDigits set = 0;
        if (remainder_in_window(r, capacity, tol)) set |= 1u;
        if (remainder_in_window(r - p[static_cast<std::size_t>(i)], capacity, tol)) set |= 2u;
        report.allowed.push_back(set);
        if (set == 3u && !report.branched) {
            report.branched = true;
            report.unique_up_to = i;
        }
        // Follow the forced digit; after a branch keep to digit 1.
        const std::uint8_t digit = allows(set, 1) ? 1 : 0;
        if (digit) r -= p[static_cast<std::size_t>(i)];
        report.path.push_back(digit);
        report.remainders.push_back(r);
        if (set == 0u) {
            // Unreachable for admissible x up to rounding; stop rather than walk off the tree.
            report.branched = true;
            report.unique_up_to = std::min(report.unique_up_to, i);
            break;
        }
    }
    return report;
}

double kappa_along(double x, std::span<const std::uint8_t> digits, double beta)
{
    // u_n = β^n(β-1)(x - value_n) satisfies u_n = β u_{n-1} - (β-1) ε_n.
    double u = (beta - 1.0) * x;
    double kappa = std::numeric_limits<double>::infinity();
    for (const auto d : digits) {
        u = beta * u - (beta - 1.0) * d;
        kappa = std::min(kappa, u);
    }
    return kappa;
}

double kappa_lower_bound(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol,
                         IntervalClosure closure)
{
    if (depth < 1) {
        throw DomainError("kappa needs depth >= 1");
    }
    const auto report = branching_profile(x, beta, depth, tol, closure);
    if (report.branched) {
        throw StateError("x branches at depth " + std::to_string(report.unique_up_to) +
                         "; kappa is defined only for expansions unique to the horizon");
    }
    return kappa_along(x, report.path, beta.value());
}

double best_prefix_value(double x, const BaseValue& beta, int n, const ToleranceConfig& tol)
{
    check_admissible(x, beta, tol);
    check_depth(n);
    const double b = beta.value();
    const auto p = inverse_powers(b, n);
    // reach[d]: Σ_{i=d+1}^{n} β^{-i}, the most the remaining digits can add.
    std::vector<double> reach(static_cast<std::size_t>(n) + 1, 0.0);
    for (int d = n - 1; d >= 0; --d) {
        reach[static_cast<std::size_t>(d)] = reach[static_cast<std::size_t>(d + 1)] + p[static_cast<std::size_t>(d + 1)];
    }

    double best = -1.0;
    // Iterative DFS, digit 1 first; (depth, value) pairs.
    std::vector<std::pair<int, double>> stack{{0, 0.0}};
    while (!stack.empty()) {
        const auto [d, v] = stack.back();
        stack.pop_back();
        if (d == n) {
            best = std::max(best, v);
            continue;
        }
        if (std::min(v + reach[static_cast<std::size_t>(d)], x + tol.measure_tol) <= best) {
            continue;
        }
        const double capacity = p[static_cast<std::size_t>(d + 1)] / (b - 1.0);
        const double v0 = v;
        const double v1 = v + p[static_cast<std::size_t>(d + 1)];
        if (remainder_in_window(x - v0, capacity, tol)) stack.emplace_back(d + 1, v0);
        if (remainder_in_window(x - v1, capacity, tol)) stack.emplace_back(d + 1, v1);
    }
    if (best < 0.0) {
        throw DomainError("x has no extendable prefix of length " + std::to_string(n));
    }
    return best;
}

OptimalityReport optimal_chain_search(double x, const BaseValue& beta, int depth, const ToleranceConfig& tol)
{
    check_admissible(x, beta, tol);
    check_depth(depth);
    if (depth > kOptimalSearchCap) {
        throw ResourceError("optimal chain search is capped at depth " + std::to_string(kOptimalSearchCap));
    }
    const double b = beta.value();
    const auto p = inverse_powers(b, depth);

    struct Prefix {
        std::vector<std::uint8_t> digits;
        double value;
    };
    std::vector<Prefix> frontier{{{}, 0.0}};
    OptimalityReport report;
    for (int n = 1; n <= depth; ++n) {
        const double best = best_prefix_value(x, beta, n, tol);
        report.best_values.push_back(best);
        const double capacity = p[static_cast<std::size_t>(n)] / (b - 1.0);
        std::vector<Prefix> next;
        for (const auto& prefix : frontier) {
            for (std::uint8_t digit : {std::uint8_t{1}, std::uint8_t{0}}) {
                const double v = prefix.value + (digit ? p[static_cast<std::size_t>(n)] : 0.0);
                if (remainder_in_window(x - v, capacity, tol) && v >= best - tol.measure_tol) {
                    auto digits = prefix.digits;
                    digits.push_back(digit);
                    next.push_back({std::move(digits), v});
                }
            }
        }
        report.candidates.push_back(next.size());
        if (next.empty()) {
            report.failure_depth = n;
            return report;
        }
        frontier = std::move(next);
    }
    report.chain = DigitSequence{beta, frontier.front().digits};
    return report;
}

} // namespace betaexp
