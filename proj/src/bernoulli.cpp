#include "betaexp/bernoulli.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "betaexp/enumeration.hpp"
#include "betaexp/parallel.hpp"

namespace betaexp {
namespace {

constexpr std::uint64_t kShardSize = 1u << 16;
constexpr int kMaxSampleLevel = 63;

void check_bins(int bins)
{
    if (bins < 2) {
        throw DomainError("histograms need at least 2 bins");
    }
}

void finish_weights(DensityHistogram& h)
{
    h.weights.resize(h.counts.size());
    const double total = static_cast<double>(h.samples);
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
        h.weights[k] = static_cast<double>(h.counts[k]) / total;
    }
}

} // namespace

const char* to_string(HistogramMethod m) noexcept
{
    return m == HistogramMethod::exact ? "exact" : "montecarlo";
}

int histogram_bin(double v, double support_hi, int bins) noexcept
{
    if (!(support_hi > 0.0)) {
        return 0;
    }
    const double t = v / support_hi * bins;
    const auto k = static_cast<long long>(std::floor(t));
    return static_cast<int>(std::clamp<long long>(k, 0, bins - 1));
}

DensityHistogram exact_histogram(const BaseValue& beta, int n, int bins, int level_cap)
{
    check_bins(bins);
    EnumerationOptions options;
    options.normalized = true;
    options.deduplicate = false;
    options.level_cap = level_cap;
    const auto sums = enumerate_sums(beta, n, {}, options);

    DensityHistogram h;
    h.beta = beta.value();
    h.n = n;
    h.bins = bins;
    h.method = HistogramMethod::exact;
    h.samples = sums.values.size();
    h.support_hi = 1.0 - std::pow(beta.value(), -n);
    h.counts.assign(static_cast<std::size_t>(bins), 0);

    const auto& v = sums.values;
    const std::size_t total = v.size();
    if (total == 1) {
        h.counts[0] = 1;
    } else {
        // Sorted sums pair up as v_i + v_{N-1-i} = L (digit complement).
        const std::size_t half = total / 2;
        for (std::size_t i = 0; i < half; ++i) {
            const int k = histogram_bin(v[i], h.support_hi, bins);
            ++h.counts[static_cast<std::size_t>(k)];
            ++h.counts[static_cast<std::size_t>(bins - 1 - k)];
        }
    }
    finish_weights(h);
    return h;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

DensityHistogram mc_histogram(const BaseValue& beta, int n, std::uint64_t samples, std::uint64_t seed, int bins,
                              int jobs)
{
    check_bins(bins);
    if (samples < 1) {
        throw DomainError("Monte Carlo histogram needs at least one sample");
    }
    if (n < 0 || n > kMaxSampleLevel) {
        throw DomainError("Monte Carlo level must lie in [0, 63]");
    }
    const double b = beta.value();
    std::vector<double> weight(static_cast<std::size_t>(n));
    double p = b - 1.0;
    for (int i = 0; i < n; ++i) {
        p /= b;
        weight[static_cast<std::size_t>(i)] = p;
    }

    DensityHistogram h;
    h.beta = b;
    h.n = n;
    h.bins = bins;
    h.method = HistogramMethod::montecarlo;
    h.samples = samples;
    h.seed = seed;
    h.support_hi = 1.0 - std::pow(b, -n);

    const std::uint64_t shards = (samples + kShardSize - 1) / kShardSize;
    std::vector<std::vector<std::uint64_t>> shard_counts(shards);
    parallel_for(shards, jobs, [&](std::size_t shard) {
        std::mt19937_64 rng(mix_seed(seed, shard));
        const std::uint64_t begin = shard * kShardSize;
        const std::uint64_t end = std::min(samples, begin + kShardSize);
        auto& counts = shard_counts[shard];
        counts.assign(static_cast<std::size_t>(bins), 0);
        for (std::uint64_t s = begin; s < end; ++s) {
            const std::uint64_t word = rng();
            double v = 0.0;
            for (int i = 0; i < n; ++i) {
                if ((word >> i) & 1u) v += weight[static_cast<std::size_t>(i)];
            }
            ++counts[static_cast<std::size_t>(histogram_bin(v, h.support_hi, bins))];
        }
    });

    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (const auto& counts : shard_counts) {
        for (std::size_t k = 0; k < counts.size(); ++k) {
            h.counts[k] += counts[k];
        }
    }
    finish_weights(h);
    return h;
}

double sup_density(const DensityHistogram& hist)
{
    if (hist.weights.empty()) {
        return 0.0;
    }
    return *std::max_element(hist.weights.begin(), hist.weights.end()) * hist.bins;
}

double total_variation(const DensityHistogram& a, const DensityHistogram& b)
{
    if (a.bins != b.bins) {
        throw DomainError("total variation needs matching bin counts");
    }
    double tv = 0.0;
    for (std::size_t k = 0; k < a.weights.size(); ++k) {
        tv += std::abs(a.weights[k] - b.weights[k]);
    }
    return 0.5 * tv;
}

DensityHistogram coarsen_pairs(const DensityHistogram& hist)
{
    if (hist.bins % 2 != 0) {
        throw DomainError("coarsening needs an even bin count");
    }
    DensityHistogram out = hist;
    out.bins = hist.bins / 2;
    out.counts.assign(static_cast<std::size_t>(out.bins), 0);
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
        out.counts[k / 2] += hist.counts[k];
    }
    finish_weights(out);
    return out;
}

} // namespace betaexp
