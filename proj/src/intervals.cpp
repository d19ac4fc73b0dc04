#include "meaneq/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meaneq/grid.hpp"

namespace meaneq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool nonempty_endpoints(double lo, bool lc, double hi, bool hc) {
    if (lo < hi) return true;
    return lo == hi && lc && hc && std::isfinite(lo);
}

}  // namespace

Interval::Interval(double lo, double hi, bool lo_closed, bool hi_closed)
    : lo(lo), hi(hi), lo_closed(lo_closed), hi_closed(hi_closed) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo <= hi))
        throw PreconditionError("interval endpoints must satisfy lo <= hi");
    if (lo == hi && !(lo_closed && hi_closed))
        throw PreconditionError("degenerate interval must be closed on both sides");
    if ((std::isinf(lo) && lo_closed) || (std::isinf(hi) && hi_closed))
        throw PreconditionError("infinite endpoints must be open");
}

bool Interval::is_bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

bool Interval::contains(double x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
}

bool Interval::contains(const Interval& other) const {
    bool lo_ok = lo < other.lo || (lo == other.lo && (lo_closed || !other.lo_closed));
    bool hi_ok = other.hi < hi || (other.hi == hi && (hi_closed || !other.hi_closed));
    return lo_ok && hi_ok;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo);
    double hi = std::min(a.hi, b.hi);
    bool lc = (a.lo == lo ? a.lo_closed : true) && (b.lo == lo ? b.lo_closed : true);
    bool hc = (a.hi == hi ? a.hi_closed : true) && (b.hi == hi ? b.hi_closed : true);
    if (!nonempty_endpoints(lo, lc, hi, hc)) return std::nullopt;
    return Interval{lo, hi, lc, hc};
}

IntervalUnion::IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> merged;
    for (const Interval& p : parts_) {
        if (merged.empty()) {
            merged.push_back(p);
            continue;
        }
        Interval& cur = merged.back();
        bool mergeable = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
        if (!mergeable) {
            merged.push_back(p);
            continue;
        }
        if (p.hi > cur.hi || (p.hi == cur.hi && p.hi_closed)) {
            cur.hi = p.hi;
            cur.hi_closed = p.hi_closed;
        }
    }
    parts_ = std::move(merged);
}

IntervalUnion::IntervalUnion(std::initializer_list<Interval> parts)
    : IntervalUnion(std::vector<Interval>(parts)) {}

double IntervalUnion::inf() const {
    if (is_empty()) throw PreconditionError("inf of empty union");
    return parts_.front().lo;
}

double IntervalUnion::sup() const {
    if (is_empty()) throw PreconditionError("sup of empty union");
    return parts_.back().hi;
}

bool IntervalUnion::contains(double x) const {
    for (const Interval& p : parts_) {
        if (x < p.lo) return false;
        if (p.contains(x)) return true;
    }
    return false;
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
    // Parts are maximal and disjoint, so every part of `other` must fit in a
    // single part of *this.
    std::size_t j = 0;
    for (const Interval& q : other.parts_) {
        while (j < parts_.size() && !parts_[j].contains(q)) {
            if (parts_[j].lo > q.lo) return false;
            ++j;
        }
        if (j == parts_.size()) return false;
    }
    return true;
}

bool IntervalUnion::contained_in(const Interval& window) const {
    for (const Interval& p : parts_)
        if (!window.contains(p)) return false;
    return true;
}

IntervalUnion complement_within(const IntervalUnion& u, const Interval& domain) {
    if (!domain.is_open() || domain.is_point())
        throw PreconditionError("complement requires a nonempty open ambient interval");
    std::vector<Interval> gaps;
    double cur_lo = domain.lo;
    bool cur_lc = false;
    for (const Interval& p : u.parts()) {
        if (nonempty_endpoints(cur_lo, cur_lc, p.lo, !p.lo_closed))
            gaps.emplace_back(cur_lo, p.lo, cur_lc, !p.lo_closed);
        cur_lo = p.hi;
        cur_lc = !p.hi_closed;
    }
    if (nonempty_endpoints(cur_lo, cur_lc, domain.hi, false))
        gaps.emplace_back(cur_lo, domain.hi, cur_lc, false);
    return IntervalUnion(std::move(gaps));
}

IntervalUnion closure_within(const IntervalUnion& u, const Interval& domain) {
    if (!domain.is_open() || domain.is_point())
        throw PreconditionError("closure requires a nonempty open ambient interval");
    std::vector<Interval> closed;
    for (const Interval& p : u.parts()) {
        Interval c{p.lo, p.hi, std::isfinite(p.lo), std::isfinite(p.hi)};
        if (auto w = intersect(c, domain)) closed.push_back(*w);
    }
    return IntervalUnion(std::move(closed));
}

std::optional<Interval> convex_hull(const IntervalUnion& u) {
    if (u.is_empty()) return std::nullopt;
    const Interval& a = u.parts().front();
    const Interval& b = u.parts().back();
    return Interval{a.lo, b.hi, a.lo_closed, b.hi_closed};
}

std::optional<Interval> sum_with_interval(const IntervalUnion& a, const Interval& i) {
    if (!i.is_open() || i.is_point())
        throw PreconditionError("sum_with_interval requires I open and nonempty");
    if (a.is_empty()) return std::nullopt;
    return Interval::open(a.inf() + i.lo, a.sup() + i.hi);
}

std::optional<Interval> half_sum(const IntervalUnion& a, const Interval& i) {
    auto s = sum_with_interval(a, i);
    if (!s) return std::nullopt;
    return Interval::open(0.5 * s->lo, 0.5 * s->hi);
}

IntervalUnion zero_set(const GridFunction& f, double tol) {
    if (tol < 0) throw PreconditionError("zero_set tolerance must be nonnegative");
    if (f.size() == 0) throw PreconditionError("zero_set of empty grid");
    std::vector<Interval> runs;
    Eigen::Index i = 0;
    const Eigen::Index n = f.size();
    while (i < n) {
        if (std::abs(f.values()[i]) > tol) {
            ++i;
            continue;
        }
        Eigen::Index j = i;
        while (j + 1 < n && std::abs(f.values()[j + 1]) <= tol) ++j;
        runs.push_back(Interval::closed(f.x(i), f.x(j)));
        i = j + 1;
    }
    return IntervalUnion(std::move(runs));
}

IntervalUnion zero_set(const GridFunction& f) {
    if (f.size() == 0) throw PreconditionError("zero_set of empty grid");
    return zero_set(f, 1e-9 * f.values().abs().maxCoeff());
}

bool regularity_holds(const IntervalUnion& zf, const Interval& domain) {
    if (!domain.is_open() || domain.is_point())
        throw PreconditionError("regularity_holds requires a nonempty open domain");
    if (!zf.contained_in(domain))
        throw PreconditionError("zero set must be contained in the domain");

    IntervalUnion zc = complement_within(zf, domain);                    // Z_f^c
    IntervalUnion zbc = complement_within(closure_within(zf, domain), domain);
    if (zbc.is_empty()) return zc.is_empty();
    // cl conv(zbc) relative to the domain: close the hull, cut to the domain.
    Interval hull{zbc.inf(), zbc.sup(), std::isfinite(zbc.inf()), std::isfinite(zbc.sup())};
    auto cch = intersect(hull, domain);
    if (!cch) return zc.is_empty();
    return IntervalUnion{*cch}.contains(zc);
}

}  // namespace meaneq
