#include "betaexp/counting.hpp"

#include <cmath>
#include <string>

#include "betaexp/parallel.hpp"

namespace betaexp {
namespace {

void check_scan_args(double lo, double hi, int grid_size, int n)
{
    if (!(lo > 1.0 && lo < hi && hi <= 2.0)) {
        throw DomainError("scan range must satisfy 1 < lo < hi <= 2");
    }
    if (grid_size < 2) {
        throw DomainError("grid_size must be at least 2");
    }
    if (n < 0) {
        throw DomainError("level must be nonnegative");
    }
}

void check_s(double s)
{
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw DomainError("window parameter s must be a nonnegative finite number");
    }
}

} // namespace

double pair_window(double s, int n, const ToleranceConfig& tol)
{
    const double w = std::ldexp(s, -n);
    return w + w * tol.measure_tol;
}

std::uint64_t close_pair_count(std::span<const double> sorted, double window)
{
    std::uint64_t forward = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (j < i + 1) j = i + 1;
        while (j < sorted.size() && sorted[j] - sorted[i] <= window) {
            ++j;
        }
        forward += j - i - 1;
    }
    return 2 * forward;
}

std::uint64_t crowded_point_count(std::span<const double> sorted, double window)
{
    std::uint64_t crowded = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const bool left = i > 0 && sorted[i] - sorted[i - 1] <= window;
        const bool right = i + 1 < sorted.size() && sorted[i + 1] - sorted[i] <= window;
        crowded += (left || right) ? 1 : 0;
    }
    return crowded;
}

PairStats pair_stats(const LevelSums& sums, double s, const ToleranceConfig& tol)
{
    check_s(s);
    if (!sums.deduplicated) {
        throw DomainError("pair statistics need deduplicated level sums");
    }
    PairStats stats;
    stats.beta = sums.beta.value();
    stats.n = sums.n;
    stats.s = s;
    if (s > 0.0) {
        const double w = pair_window(s, sums.n, tol);
        stats.p_count = close_pair_count(sums.values, w);
        stats.t_count = crowded_point_count(sums.values, w);
    }
    stats.density = std::ldexp(static_cast<double>(stats.p_count), -sums.n);
    return stats;
}

PairStats count_close_pairs(const BaseValue& beta, double s, int n, const ToleranceConfig& tol)
{
    check_s(s);
    return pair_stats(enumerate_sums(beta, n, true, tol), s, tol);
}

PairStats count_crowded_points(const BaseValue& beta, double s, int n, const ToleranceConfig& tol)
{
    check_s(s);
    return pair_stats(enumerate_sums(beta, n, true, tol), s, tol);
}

std::vector<double> midpoint_grid(double lo, double hi, int grid_size)
{
    std::vector<double> grid(static_cast<std::size_t>(grid_size));
    const double step = (hi - lo) / grid_size;
    for (int i = 0; i < grid_size; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + (i + 0.5) * step;
    }
    return grid;
}

std::vector<GridScanResult> grid_scan(double lo, double hi, int grid_size,
                                      std::span<const double> s_values, int n,
                                      const ToleranceConfig& tol, int jobs)
{
    tol.validate();
    check_scan_args(lo, hi, grid_size, n);
    for (const double s : s_values) {
        check_s(s);
    }

    const auto grid = midpoint_grid(lo, hi, grid_size);
    // stats[i][k]: grid point i, window s_values[k].  Filled independently per i.
    std::vector<std::vector<PairStats>> stats(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t i) {
        const auto sums = enumerate_sums(BaseValue(grid[i]), n, true, tol);
        auto& row = stats[i];
        row.reserve(s_values.size());
        for (const double s : s_values) {
            row.push_back(pair_stats(sums, s, tol));
        }
    });

    const double crowded_threshold = std::ldexp(1.0, n - 1);
    std::vector<GridScanResult> results;
    results.reserve(s_values.size());
    for (std::size_t k = 0; k < s_values.size(); ++k) {
        GridScanResult r;
        r.lo = lo;
        r.hi = hi;
        r.n = n;
        r.s = s_values[k];
        r.beta_grid = grid;
        r.per_beta.reserve(grid.size());
        double density_sum = 0.0;
        std::size_t crowded = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& st = stats[i][k];
            r.per_beta.push_back(st);
            density_sum += st.density;
            crowded += static_cast<double>(st.t_count) >= crowded_threshold ? 1 : 0;
        }
        r.mean_density = density_sum / static_cast<double>(grid.size());
        r.crowded_fraction = static_cast<double>(crowded) / static_cast<double>(grid.size());
        r.fitted_c = r.s > 0.0 ? r.mean_density / r.s : 0.0;
        results.push_back(std::move(r));
    }
    return results;
}

GridScanResult grid_scan(double lo, double hi, int grid_size, double s, int n,
                         const ToleranceConfig& tol, int jobs)
{
    const double single[] = {s};
    return std::move(grid_scan(lo, hi, grid_size, single, n, tol, jobs).front());
}

} // namespace betaexp
