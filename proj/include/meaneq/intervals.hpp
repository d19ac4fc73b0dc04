#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "meaneq/errors.hpp"

namespace meaneq {

class GridFunction;

// One real interval with extended-real endpoints. Degenerate points are
// allowed (lo == hi, both ends closed); infinite endpoints are always open.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = false;

    Interval() = default;
    Interval(double lo, double hi, bool lo_closed, bool hi_closed);

    static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval point(double x) { return {x, x, true, true}; }

    bool is_point() const { return lo == hi; }
    bool is_open() const { return !lo_closed && !hi_closed; }
    bool is_bounded() const;
    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }

    bool contains(double x) const;
    // True iff `other` is a subset of *this.
    bool contains(const Interval& other) const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

std::optional<Interval> intersect(const Interval& a, const Interval& b);

// Finite union of disjoint, non-adjacent intervals, sorted by lower endpoint.
// Normalizes on construction, so equality is structural. The empty union
// represents the empty set.
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> parts);
    IntervalUnion(std::initializer_list<Interval> parts);

    const std::vector<Interval>& parts() const { return parts_; }
    bool is_empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    double inf() const;  // requires nonempty
    double sup() const;  // requires nonempty

    bool contains(double x) const;
    bool contains(const IntervalUnion& other) const;
    bool contained_in(const Interval& window) const;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    std::vector<Interval> parts_;
};

// domain \ u, where domain is an open interval and u is assumed to lie in it.
IntervalUnion complement_within(const IntervalUnion& u, const Interval& domain);

// Closure of u relative to the open interval `domain`.
IntervalUnion closure_within(const IntervalUnion& u, const Interval& domain);

// Convex hull of the union as a single interval (endpoints attained iff the
// extreme parts attain them); nullopt for the empty union.
std::optional<Interval> convex_hull(const IntervalUnion& u);

// A + I for an open nonempty interval I: the open interval
// ]inf A + inf I, sup A + sup I[, or nullopt when A is empty.
std::optional<Interval> sum_with_interval(const IntervalUnion& a, const Interval& i);

// Pointwise halving of sum_with_interval: ](inf A + inf I)/2, (sup A + sup I)/2[.
std::optional<Interval> half_sum(const IntervalUnion& a, const Interval& i);

// Maximal closed runs of grid points where |f| <= tol. Isolated qualifying
// points become degenerate intervals.
IntervalUnion zero_set(const GridFunction& f, double tol);
// Overload with the default tolerance 1e-9 * sup|f|.
IntervalUnion zero_set(const GridFunction& f);

// The regularity condition Z_f^c subseteq cl conv((cl Z_f)^c), with all
// closures and complements taken relative to the open interval `domain`.
bool regularity_holds(const IntervalUnion& zf, const Interval& domain);

}  // namespace meaneq
