#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace betaexp {

struct Interval {
    double lo;
    double hi;

    double length() const noexcept { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Canonical finite union of closed intervals: sorted by lo, pairwise
/// disjoint, with touching or overlapping members merged.
class IntervalSet {
public:
    IntervalSet() = default;

    /// Sorts and merges an arbitrary family.  Intervals with hi < lo are rejected.
    static IntervalSet from_intervals(std::vector<Interval> intervals);

    /// Merges a family already sorted by lo in linear time.
    static IntervalSet from_sorted(std::span<const Interval> sorted);

    const std::vector<Interval>& intervals() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }

    /// Lebesgue measure, summed left to right over the canonical parts.
    double measure() const noexcept;

    bool contains(double x) const noexcept;

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    /// Closure of this \ other, up to isolated points.
    IntervalSet subtract(const IntervalSet& other) const;
    IntervalSet clipped(double lo, double hi) const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    explicit IntervalSet(std::vector<Interval> canonical) : parts_(std::move(canonical)) {}

    std::vector<Interval> parts_;
};

double union_measure(const IntervalSet& set) noexcept;

} // namespace betaexp
