#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "betaexp/base.hpp"
#include "betaexp/tolerance.hpp"

namespace betaexp {

enum class HistogramMethod { exact, montecarlo };

/// Histogram of the level-n push-forward of the fair coin measure.
///
/// Coordinates are (β-1)-normalised sums.  The support of the level-n measure
/// is [0, L] with L = 1 - β^{-n}; bins split [0, L] into equal half-open cells
/// with the last one closed.  Digit complement maps s to L - s, so the exact
/// histogram is symmetric under bin reversal (reflection about L/2).
struct DensityHistogram {
    double beta = 0.0;
    int n = 0;
    int bins = 0;
    HistogramMethod method = HistogramMethod::exact;
    std::uint64_t samples = 0;  // 2^n for exact
    std::uint64_t seed = 0;     // montecarlo only
    double support_hi = 0.0;    // L
    std::vector<std::uint64_t> counts;
    std::vector<double> weights;

    double reflection_center() const noexcept { return 0.5 * support_hi; }
    double bin_lo(int k) const noexcept { return support_hi * k / bins; }
    double bin_hi(int k) const noexcept { return support_hi * (k + 1) / bins; }
};

const char* to_string(HistogramMethod m) noexcept;

/// Bin of a normalised value v in [0, L] under the half-open convention.
int histogram_bin(double v, double support_hi, int bins) noexcept;

/// Exact level-n histogram; each of the 2^n words carries weight 2^{-n}.
/// The lower half of the sorted sums is binned directly and the upper half by
/// reflection, so the symmetry holds in integer counts.
DensityHistogram exact_histogram(const BaseValue& beta, int n, int bins, int level_cap = kDefaultLevelCap);

/// Monte Carlo estimate from `samples` iid fair words of length n.
/// Sampling runs in fixed shards with seeds derived from (seed, shard index),
/// so the result does not depend on `jobs`.
DensityHistogram mc_histogram(const BaseValue& beta, int n, std::uint64_t samples, std::uint64_t seed, int bins,
                              int jobs = 1);

/// max weight × bins.
double sup_density(const DensityHistogram& hist);

/// ½ Σ |p_k - q_k|; histograms must have the same bin count.
double total_variation(const DensityHistogram& a, const DensityHistogram& b);

/// Sums adjacent pairs of bins; `bins` must be even.
DensityHistogram coarsen_pairs(const DensityHistogram& hist);

/// SplitMix64 finaliser used to derive shard seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

} // namespace betaexp
