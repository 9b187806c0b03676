#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betaexp/base.hpp"
#include "betaexp/interval_set.hpp"
#include "betaexp/rate.hpp"
#include "betaexp/tolerance.hpp"

namespace betaexp {

/// Levels m..N replacing the infinite tail of the limsup.
struct StageWindow {
    int m = 1;
    int N = 1;

    void validate(int level_cap = kDefaultLevelCap) const;
    int count() const noexcept { return N - m + 1; }
};

/// W: [a, a+Ψ] around raw sums on I_β.  V: the same around (β-1)-scaled sums
/// on [0,1].  K: [a-Ψ, a+Ψ] around raw sums on I_β.
enum class SetVariant { W, V, K };

const char* to_string(SetVariant v) noexcept;
SetVariant parse_variant(const std::string& text);

/// Closed domain of a variant: I_β for W and K, [0,1] for V.
Interval variant_domain(const BaseValue& beta, SetVariant variant) noexcept;

/// Union of the level-n intervals, clipped to the variant's domain.
IntervalSet stage_intervals(const BaseValue& beta, const RateFunction& psi, int n, SetVariant variant,
                            const ToleranceConfig& tol = {}, int level_cap = kDefaultLevelCap);

/// Union over all levels of the window.  Stages are built on `jobs` threads
/// and folded in ascending n.
IntervalSet window_union(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                         SetVariant variant, const ToleranceConfig& tol = {}, int jobs = 1,
                         int level_cap = kDefaultLevelCap);

struct CoverageResult {
    double beta = 0.0;
    std::string psi;
    StageWindow window;
    SetVariant variant = SetVariant::V;
    std::vector<double> stage_measures;       // level m, ..., N
    std::vector<double> cumulative_measures;  // union over m..n
    double window_measure = 0.0;
    double domain_length = 0.0;
    double coverage_fraction = 0.0;
};

CoverageResult coverage(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                        SetVariant variant, const ToleranceConfig& tol = {}, int jobs = 1,
                        int level_cap = kDefaultLevelCap);

struct MembershipResult {
    bool member = false;
    std::vector<int> witnesses;  // levels n with an anchor covering x
};

/// Sorted anchors of every level in a window, reusable across many queries.
class WindowAnchors {
public:
    WindowAnchors(const BaseValue& beta, const StageWindow& window, SetVariant variant,
                  const ToleranceConfig& tol = {}, int level_cap = kDefaultLevelCap);

    const BaseValue& beta() const noexcept { return beta_; }
    const StageWindow& window() const noexcept { return window_; }
    SetVariant variant() const noexcept { return variant_; }
    std::span<const double> level(int n) const;

    MembershipResult membership(double x, const RateFunction& psi) const;

private:
    BaseValue beta_;
    StageWindow window_;
    SetVariant variant_;
    double slack_;
    std::vector<std::vector<double>> levels_;
};

/// Whether some level n of the window has an anchor a with 0 <= x - a <= Ψ(n)
/// (|x - a| <= Ψ(n) for K), each bound relaxed by measure_tol.  DomainError if x is outside the variant's domain.
MembershipResult membership(double x, const BaseValue& beta, const RateFunction& psi,
                            const StageWindow& window, SetVariant variant, const ToleranceConfig& tol = {});

/// True iff x in [0,1] has no solution at any level l..N with Ψ(n) = ω_n 2^{-n} (variant V).
bool bad_indicator(double x, const BaseValue& beta, int l, const RateSequence& omega, int N,
                   const ToleranceConfig& tol = {});

struct DimensionEstimate {
    std::vector<int> exponents;   // k, box size 2^{-k}
    std::vector<double> scales;   // 2^{-k}
    std::vector<int> levels;      // stage used at each scale
    std::vector<std::uint64_t> counts;
    double slope = 0.0;           // least squares of log count against log(1/scale)
    double intercept = 0.0;
    double target = 0.0;
};

/// Occupied dyadic boxes [j 2^{-k}, (j+1) 2^{-k}) of a set; a closed interval
/// occupies every box from floor(lo 2^k) to floor(hi 2^k).
std::uint64_t box_count(const IntervalSet& set, int k);

/// Least-squares slope of ln(count) against k ln 2.
DimensionEstimate fit_box_counts(std::vector<int> exponents, std::vector<std::uint64_t> counts,
                                 double target = 0.0);

/// Box-counting proxy for dim W_β(2^{-nα}).  At box size 2^{-k} the stage
/// n_k = ceil(k/α), whose intervals are the first no wider than one box, is
/// counted.  DomainError when n_k would exceed N.
DimensionEstimate box_dimension(const BaseValue& beta, double alpha, int N, int k_min, int k_max,
                                const ToleranceConfig& tol = {}, int jobs = 1);

struct InclusionMeasures {
    double w_measure = 0.0;
    double k_measure = 0.0;
    double excess = 0.0;  // measure of the W union outside the K union
};

InclusionMeasures measure_inclusion(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                                    const ToleranceConfig& tol = {}, int jobs = 1);

/// W-window union is contained in the K-window union up to measure_tol.
bool inclusion_check(const BaseValue& beta, const RateFunction& psi, const StageWindow& window,
                     const ToleranceConfig& tol = {}, int jobs = 1);

} // namespace betaexp
