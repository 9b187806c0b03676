#include "betaexp/interval_set.hpp"

#include <algorithm>
#include <limits>

#include "betaexp/errors.hpp"

namespace betaexp {
namespace {

// Appends `next` to a canonical list, merging when the gap is <= 0.
void push_merged(std::vector<Interval>& out, const Interval& next)
{
    if (!out.empty() && next.lo <= out.back().hi) {
        out.back().hi = std::max(out.back().hi, next.hi);
    } else {
        out.push_back(next);
    }
}

} // namespace

IntervalSet IntervalSet::from_intervals(std::vector<Interval> intervals)
{
    for (const auto& iv : intervals) {
        if (!(iv.lo <= iv.hi)) {
            throw DomainError("interval with hi < lo");
        }
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return from_sorted(intervals);
}

IntervalSet IntervalSet::from_sorted(std::span<const Interval> sorted)
{
    std::vector<Interval> out;
    out.reserve(sorted.size());
    double previous_lo = -std::numeric_limits<double>::infinity();
    for (const auto& iv : sorted) {
        if (!(iv.lo <= iv.hi) || iv.lo < previous_lo) {
            throw DomainError("from_sorted needs valid intervals ordered by lo");
        }
        previous_lo = iv.lo;
        push_merged(out, iv);
    }
    out.shrink_to_fit();
    return IntervalSet(std::move(out));
}

double IntervalSet::measure() const noexcept
{
    double total = 0.0;
    for (const auto& iv : parts_) {
        total += iv.hi - iv.lo;
    }
    return total;
}

bool IntervalSet::contains(double x) const noexcept
{
    // First part whose hi >= x; x is inside iff that part starts at or before x.
    const auto it = std::lower_bound(parts_.begin(), parts_.end(), x,
                                     [](const Interval& iv, double v) { return iv.hi < v; });
    return it != parts_.end() && it->lo <= x;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const
{
    std::vector<Interval> out;
    out.reserve(parts_.size() + other.parts_.size());
    auto a = parts_.begin();
    auto b = other.parts_.begin();
    while (a != parts_.end() || b != other.parts_.end()) {
        if (b == other.parts_.end() || (a != parts_.end() && a->lo <= b->lo)) {
            push_merged(out, *a++);
        } else {
            push_merged(out, *b++);
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const
{
    std::vector<Interval> out;
    auto a = parts_.begin();
    auto b = other.parts_.begin();
    while (a != parts_.end() && b != other.parts_.end()) {
        const double lo = std::max(a->lo, b->lo);
        const double hi = std::min(a->hi, b->hi);
        if (lo <= hi) {
            push_merged(out, {lo, hi});
        }
        if (a->hi < b->hi) {
            ++a;
        } else {
            ++b;
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const
{
    std::vector<Interval> out;
    auto b = other.parts_.begin();
    for (const auto& iv : parts_) {
        double cursor = iv.lo;
        while (b != other.parts_.end() && b->hi < cursor) {
            ++b;
        }
        auto c = b;
        while (c != other.parts_.end() && c->lo <= iv.hi) {
            if (c->lo > cursor) {
                push_merged(out, {cursor, c->lo});
            }
            cursor = std::max(cursor, c->hi);
            if (c->hi > iv.hi) {
                break;
            }
            ++c;
        }
        if (cursor < iv.hi) {
            push_merged(out, {cursor, iv.hi});
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::clipped(double lo, double hi) const
{
    return intersect(IntervalSet({{lo, hi}}));
}

double union_measure(const IntervalSet& set) noexcept
{
    return set.measure();
}

} // namespace betaexp
