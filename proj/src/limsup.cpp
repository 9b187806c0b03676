#include "betaexp/limsup.hpp"

#include <algorithm>
#include <cmath>

#include "betaexp/enumeration.hpp"
#include "betaexp/parallel.hpp"

namespace betaexp {
namespace {

bool raw_anchors(SetVariant v) noexcept { return v != SetVariant::V; }

IntervalSet intervals_around(std::span<const double> anchors, double radius, SetVariant variant, Interval domain)
{
    std::vector<Interval> parts;
    parts.reserve(anchors.size());
    for (const double a : anchors) {
        const double lo = variant == SetVariant::K ? a - radius : a;
        const double hi = a + radius;
        const double clo = std::max(lo, domain.lo);
        const double chi = std::min(hi, domain.hi);
        if (clo <= chi) {
            parts.push_back({clo, chi});
        }
    }
    return IntervalSet::from_sorted(parts);
}

std::vector<double> anchors_for(const BaseValue& beta, int n, SetVariant variant, const ToleranceConfig& tol,
                                int level_cap)
{
    EnumerationOptions options;
    options.normalized = !raw_anchors(variant);
    options.level_cap = level_cap;
    return enumerate_sums(beta, n, tol, options).values;
}

} // namespace

void StageWindow::validate(int level_cap) const
{
    if (!(1 <= m && m <= N)) {
        throw DomainError("stage window needs 1 <= m <= N");
    }
    if (N > level_cap) {
        throw ResourceError("stage window end " + std::to_string(N) + " exceeds level cap " +
                            std::to_string(level_cap));
    }
}

const char* to_string(SetVariant v) noexcept
{
    switch (v) {
    case SetVariant::W: return "W";
    case SetVariant::V: return "V";
    case SetVariant::K: return "K";
    }
    return "?";
}

SetVariant parse_variant(const std::string& text)
{
    if (text == "W" || text == "w") return SetVariant::W;
    if (text == "V" || text == "v") return SetVariant::V;
    if (text == "K" || text == "k") return SetVariant::K;
    throw DomainError("unknown set variant '" + text + "' (expected W, V or K)");
}

Interval variant_domain(const BaseValue& beta, SetVariant variant) noexcept
{
    return variant == SetVariant::V ? Interval{0.0, 1.0} : Interval{0.0, beta.interval_length()};
}

IntervalSet stage_intervals(const BaseValue& beta, const RateFunction& psi, int n, SetVariant variant,
                            const ToleranceConfig& tol, int level_cap)
{
    tol.validate();
    if (n < 1) {
        throw DomainError("stages start at n = 1");
    }
    const auto anchors = anchors_for(beta, n, variant, tol, level_cap);
    return intervals_around(anchors, eval_rate(psi, n), variant, variant_domain(beta, variant));
}

namespace {

// Builds stages in batches of `jobs` and folds them in ascending n, calling
// visit(n, stage, running_union) after each fold.
template <class Visit>
IntervalSet fold_window(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                        SetVariant variant, const ToleranceConfig& tol, int jobs, int level_cap, Visit&& visit)
{
    tol.validate();
    window.validate(level_cap);
    IntervalSet running;
    const int batch = std::max(jobs, 1);
    for (int start = window.m; start <= window.N; start += batch) {
        const int stop = std::min(window.N, start + batch - 1);
        std::vector<IntervalSet> stages(static_cast<std::size_t>(stop - start + 1));
        parallel_for(stages.size(), jobs, [&](std::size_t i) {
            stages[i] = stage_intervals(beta, psi, start + static_cast<int>(i), variant, tol, level_cap);
        });
        for (std::size_t i = 0; i < stages.size(); ++i) {
            running = running.unite(stages[i]);
            visit(start + static_cast<int>(i), stages[i], running);
        }
    }
    return running;
}

} // namespace

IntervalSet window_union(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                         SetVariant variant, const ToleranceConfig& tol, int jobs, int level_cap)
{
    return fold_window(beta, psi, window, variant, tol, jobs, level_cap,
                       [](int, const IntervalSet&, const IntervalSet&) {});
}

CoverageResult coverage(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                        SetVariant variant, const ToleranceConfig& tol, int jobs, int level_cap)
{
    CoverageResult result;
    result.beta = beta.value();
    result.psi = psi.describe();
    result.window = window;
    result.variant = variant;
    const auto all = fold_window(beta, psi, window, variant, tol, jobs, level_cap,
                                 [&](int, const IntervalSet& stage, const IntervalSet& running) {
                                     result.stage_measures.push_back(stage.measure());
                                     result.cumulative_measures.push_back(running.measure());
                                 });
    const auto domain = variant_domain(beta, variant);
    result.window_measure = all.measure();
    result.domain_length = domain.length();
    result.coverage_fraction = std::clamp(result.window_measure / result.domain_length, 0.0, 1.0);
    return result;
}

WindowAnchors::WindowAnchors(const BaseValue& beta, const StageWindow& window, SetVariant variant,
                             const ToleranceConfig& tol, int level_cap)
    : beta_(beta), window_(window), variant_(variant), slack_(tol.measure_tol)
{
    tol.validate();
    window.validate(level_cap);
    levels_.reserve(static_cast<std::size_t>(window.count()));
    for (int n = window.m; n <= window.N; ++n) {
        levels_.push_back(anchors_for(beta, n, variant, tol, level_cap));
    }
}

std::span<const double> WindowAnchors::level(int n) const
{
    if (n < window_.m || n > window_.N) {
        throw RangeError("level " + std::to_string(n) + " outside the anchor window");
    }
    return levels_[static_cast<std::size_t>(n - window_.m)];
}

MembershipResult WindowAnchors::membership(double x, const RateFunction& psi) const
{
    const auto domain = variant_domain(beta_, variant_);
    if (!(x >= domain.lo && x <= domain.hi)) {
        throw DomainError("x = " + std::to_string(x) + " outside the variant domain");
    }
    MembershipResult result;
    for (int n = window_.m; n <= window_.N; ++n) {
        const auto anchors = level(n);
        const double radius = eval_rate(psi, n);
        // a <= x + slack and x <= a + radius + slack for the nearest anchor at or
        // below x + slack; K also accepts the next anchor from the right.
        const auto above = std::upper_bound(anchors.begin(), anchors.end(), x + slack_);
        bool hit = false;
        if (above != anchors.begin()) {
            hit = x <= *std::prev(above) + radius + slack_;
        }
        if (!hit && variant_ == SetVariant::K && above != anchors.end()) {
            hit = *above - radius - slack_ <= x;
        }
        if (hit) {
            result.witnesses.push_back(n);
        }
    }
    result.member = !result.witnesses.empty();
    return result;
}

MembershipResult membership(double x, const BaseValue& beta, const RateFunction& psi,
                            const StageWindow& window, SetVariant variant, const ToleranceConfig& tol)
{
    const auto domain = variant_domain(beta, variant);
    if (!(x >= domain.lo && x <= domain.hi)) {
        throw DomainError("x = " + std::to_string(x) + " outside the variant domain");
    }
    return WindowAnchors(beta, window, variant, tol).membership(x, psi);
}

bool bad_indicator(double x, const BaseValue& beta, int l, const RateSequence& omega, int N,
                   const ToleranceConfig& tol)
{
    if (l > N) {
        throw DomainError("bad_indicator needs l <= N");
    }
    return !membership(x, beta, RateFunction::scaled(omega), {l, N}, SetVariant::V, tol).member;
}

std::uint64_t box_count(const IntervalSet& set, int k)
{
    std::uint64_t count = 0;
    bool open = false;
    std::int64_t last = 0;  // highest box index counted so far
    for (const auto& iv : set.intervals()) {
        auto j0 = static_cast<std::int64_t>(std::floor(std::ldexp(iv.lo, k)));
        const auto j1 = static_cast<std::int64_t>(std::floor(std::ldexp(iv.hi, k)));
        if (open && j0 <= last) {
            j0 = last + 1;
        }
        if (j1 >= j0) {
            count += static_cast<std::uint64_t>(j1 - j0 + 1);
            last = j1;
            open = true;
        }
    }
    return count;
}

DimensionEstimate fit_box_counts(std::vector<int> exponents, std::vector<std::uint64_t> counts, double target)
{
    if (exponents.size() != counts.size() || exponents.size() < 2) {
        throw DomainError("a slope fit needs at least two scales with matching counts");
    }
    DimensionEstimate est;
    est.target = target;
    const double n = static_cast<double>(exponents.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (counts[i] == 0) {
            throw DomainError("box counts must be positive");
        }
        const double x = exponents[i] * std::log(2.0);
        const double y = std::log(static_cast<double>(counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        est.scales.push_back(std::ldexp(1.0, -exponents[i]));
    }
    const double denom = n * sxx - sx * sx;
    if (!(denom > 0.0)) {
        throw DomainError("a slope fit needs at least two distinct scales");
    }
    est.slope = (n * sxy - sx * sy) / denom;
    est.intercept = (sy - est.slope * sx) / n;
    est.exponents = std::move(exponents);
    est.counts = std::move(counts);
    return est;
}

DimensionEstimate box_dimension(const BaseValue& beta, double alpha, int N, int k_min, int k_max,
                                const ToleranceConfig& tol, int jobs)
{
    tol.validate();
    if (!(alpha > 1.0)) {
        throw DomainError("box_dimension needs alpha > 1");
    }
    if (k_min < 0 || k_max <= k_min) {
        throw DomainError("scale exponents need 0 <= k_min < k_max");
    }
    std::vector<int> exponents;
    std::vector<int> levels;
    for (int k = k_min; k <= k_max; ++k) {
        const int n = std::max(1, static_cast<int>(std::ceil(k / alpha)));
        if (n > N) {
            throw DomainError("box size 2^-" + std::to_string(k) + " is finer than the level-" + std::to_string(N) +
                              " intervals; raise N or coarsen the scales");
        }
        exponents.push_back(k);
        levels.push_back(n);
    }
    const auto psi = RateFunction::power(alpha);
    std::vector<std::uint64_t> counts(exponents.size());
    parallel_for(exponents.size(), jobs, [&](std::size_t i) {
        counts[i] = box_count(stage_intervals(beta, psi, levels[i], SetVariant::W, tol), exponents[i]);
    });
    auto est = fit_box_counts(std::move(exponents), std::move(counts), 1.0 / alpha);
    est.levels = std::move(levels);
    return est;
}

InclusionMeasures measure_inclusion(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                                    const ToleranceConfig& tol, int jobs)
{
    const auto w = window_union(beta, psi, window, SetVariant::W, tol, jobs);
    const auto k = window_union(beta, psi, window, SetVariant::K, tol, jobs);
    return {w.measure(), k.measure(), w.subtract(k).measure()};
}

bool inclusion_check(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                     const ToleranceConfig& tol, int jobs)
{
    return measure_inclusion(beta, psi, window, tol, jobs).excess <= tol.measure_tol;
}

} // namespace betaexp
