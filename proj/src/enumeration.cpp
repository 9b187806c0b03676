#include "betaexp/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace betaexp {

void collapse_sorted(std::vector<double>& values, double tol, std::vector<std::uint64_t>* counts)
{
    if (values.empty()) {
        return;
    }
    std::size_t kept = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] - values[kept] > tol) {
            ++kept;
            values[kept] = values[i];
            if (counts) (*counts)[kept] = (*counts)[i];
        } else if (counts) {
            (*counts)[kept] += (*counts)[i];
        }
    }
    values.resize(kept + 1);
    if (counts) counts->resize(kept + 1);
}

LevelSums enumerate_sums(const BaseValue& beta, int n, const ToleranceConfig& tol,
                         const EnumerationOptions& options)
{
    tol.validate();
    if (n < 0) {
        throw DomainError("level must be nonnegative");
    }
    if (n > options.level_cap) {
        throw ResourceError("level " + std::to_string(n) + " exceeds enumeration cap " +
                            std::to_string(options.level_cap));
    }

    const double b = beta.value();
    const double scale = options.normalized ? b - 1.0 : 1.0;
    const std::size_t total = std::size_t{1} << n;

    // S_k = merge(S_{k-1}, S_{k-1} + c β^{-k}); both halves are sorted so each
    // level is a linear merge.  The shift shrinks with k, so the shifted copy
    // interleaves with the original rather than sitting above it.
    std::vector<double> current;
    std::vector<double> next;
    current.reserve(total);
    next.reserve(total);
    current.push_back(0.0);
    double shift = scale;
    for (int k = 1; k <= n; ++k) {
        shift /= b;
        next.resize(current.size() * 2);
        std::size_t i = 0;
        std::size_t j = 0;
        std::size_t out = 0;
        const std::size_t m = current.size();
        while (i < m && j < m) {
            const double shifted = current[j] + shift;
            if (current[i] <= shifted) {
                next[out++] = current[i++];
            } else {
                next[out++] = shifted;
                ++j;
            }
        }
        while (i < m) next[out++] = current[i++];
        while (j < m) next[out++] = current[j++] + shift;
        current.swap(next);
    }

    LevelSums result{beta, n, options.normalized, options.deduplicate, {}, std::nullopt, tol.dedup_tol};
    if (options.with_multiplicity) {
        std::vector<std::uint64_t> counts(current.size(), 1);
        if (options.deduplicate) {
            collapse_sorted(current, tol.dedup_tol, &counts);
        }
        result.multiplicities = std::move(counts);
    } else if (options.deduplicate) {
        collapse_sorted(current, tol.dedup_tol);
    }
    current.shrink_to_fit();
    result.values = std::move(current);
    return result;
}

std::size_t distinct_count(const BaseValue& beta, int n, const ToleranceConfig& tol, int level_cap)
{
    EnumerationOptions options;
    options.level_cap = level_cap;
    return enumerate_sums(beta, n, tol, options).size();
}

double min_gap(const LevelSums& sums)
{
    if (sums.values.size() < 2) {
        throw DomainError("min_gap needs at least two values");
    }
    double gap = sums.values[1] - sums.values[0];
    for (std::size_t i = 2; i < sums.values.size(); ++i) {
        gap = std::min(gap, sums.values[i] - sums.values[i - 1]);
    }
    return gap;
}

} // namespace betaexp
