#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "betaexp/enumeration.hpp"

namespace betaexp {

/// Pair-separation statistics of A_n(β) at window s/2^n.
struct PairStats {
    double beta = 0.0;
    int n = 0;
    double s = 0.0;
    std::uint64_t p_count = 0;  // ordered pairs (a,b), a != b, |a-b| <= s/2^n
    std::uint64_t t_count = 0;  // points with at least one such neighbour
    double density = 0.0;       // p_count / 2^n
};

/// Window s/2^n widened by a relative measure_tol so that boundary ties count.
double pair_window(double s, int n, const ToleranceConfig& tol);

/// Ordered close pairs in a sorted, deduplicated list (two-pointer sweep).
std::uint64_t close_pair_count(std::span<const double> sorted, double window);

/// Points of a sorted, deduplicated list with a neighbour within `window`.
std::uint64_t crowded_point_count(std::span<const double> sorted, double window);

/// Both counts on precomputed normalised sums.
PairStats pair_stats(const LevelSums& sums, double s, const ToleranceConfig& tol = {});

PairStats count_close_pairs(const BaseValue& beta, double s, int n, const ToleranceConfig& tol = {});
PairStats count_crowded_points(const BaseValue& beta, double s, int n, const ToleranceConfig& tol = {});

struct GridScanResult {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
    double s = 0.0;
    std::vector<double> beta_grid;
    std::vector<PairStats> per_beta;
    double mean_density = 0.0;
    double crowded_fraction = 0.0;  // share of grid points with t_count >= 2^{n-1}
    double fitted_c = 0.0;          // mean_density / s
};

/// Midpoints lo + (i + 1/2)(hi - lo)/grid_size, ascending.
std::vector<double> midpoint_grid(double lo, double hi, int grid_size);

GridScanResult grid_scan(double lo, double hi, int grid_size, double s, int n,
                         const ToleranceConfig& tol = {}, int jobs = 1);

/// One scan per entry of `s_values`, sharing a single enumeration per grid point.
std::vector<GridScanResult> grid_scan(double lo, double hi, int grid_size,
                                      std::span<const double> s_values, int n,
                                      const ToleranceConfig& tol = {}, int jobs = 1);

} // namespace betaexp
