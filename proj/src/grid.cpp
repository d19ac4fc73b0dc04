#include "meaneq/grid.hpp"

#include <cmath>

namespace meaneq {

GridFunction::GridFunction(double x0, double step, Eigen::ArrayXd values)
    : x0_(x0), step_(step), values_(std::move(values)) {
    if (!(step_ > 0)) throw PreconditionError("grid step must be positive");
    if (values_.size() == 0) throw PreconditionError("grid values must be nonempty");
    if (!std::isfinite(x0_) || !std::isfinite(step_))
        throw PreconditionError("grid layout must be finite");
}

GridFunction GridFunction::sample(const RealFn& fn, const Interval& domain, Eigen::Index n) {
    if (!domain.is_open() || !domain.is_bounded() || domain.is_point())
        throw PreconditionError("sampling requires an open bounded nonempty interval");
    if (n < 1) throw PreconditionError("sampling requires n >= 1");
    double step = domain.length() / static_cast<double>(n);
    double x0 = domain.lo + 0.5 * step;
    Eigen::ArrayXd vals(n);
    for (Eigen::Index i = 0; i < n; ++i) vals[i] = fn(x0 + step * static_cast<double>(i));
    return GridFunction(x0, step, std::move(vals));
}

double GridFunction::operator()(double x) const {
    const Eigen::Index n = size();
    double t = (x - x0_) / step_;
    // Snap to a node when within rounding distance; keeps evaluation exact
    // at nodes and at midpoints of same-parity node pairs.
    auto k = static_cast<Eigen::Index>(std::llround(t));
    if (k >= 0 && k < n && std::abs(x - this->x(k)) <= 1e-9 * step_) return values_[k];
    if (t < 0) {
        if (t >= -1e-9) return values_[0];
        throw OutOfDomain("grid evaluation left of first node", x);
    }
    if (t > static_cast<double>(n - 1)) {
        if (t <= static_cast<double>(n - 1) + 1e-9) return values_[n - 1];
        throw OutOfDomain("grid evaluation right of last node", x);
    }
    auto i = static_cast<Eigen::Index>(std::floor(t));
    if (i >= n - 1) i = n - 2;
    double w = t - static_cast<double>(i);
    return values_[i] * (1.0 - w) + values_[i + 1] * w;
}

bool GridFunction::aligned_with(const GridFunction& other) const {
    if (size() != other.size()) return false;
    double tol = 1e-9 * step_;
    return std::abs(x0_ - other.x0_) <= tol && std::abs(step_ - other.step_) <= tol;
}

GridFunction GridFunction::map(const std::function<double(double)>& f) const {
    Eigen::ArrayXd vals(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) vals[i] = f(values_[i]);
    return GridFunction(x0_, step_, std::move(vals));
}

PiecewiseLinearFn::PiecewiseLinearFn(Eigen::ArrayXd xs, Eigen::ArrayXd ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size() || xs_.size() < 2)
        throw PreconditionError("piecewise-linear breakpoints need >= 2 aligned nodes");
    for (Eigen::Index i = 0; i + 1 < xs_.size(); ++i)
        if (!(xs_[i] < xs_[i + 1]))
            throw PreconditionError("piecewise-linear breakpoints must increase strictly");
}

double PiecewiseLinearFn::operator()(double t) const {
    const Eigen::Index n = xs_.size();
    double span = xs_[n - 1] - xs_[0];
    if (t <= xs_[0]) {
        if (t >= xs_[0] - 1e-9 * span) return ys_[0];
        throw OutOfDomain("piecewise-linear evaluation below range", t);
    }
    if (t >= xs_[n - 1]) {
        if (t <= xs_[n - 1] + 1e-9 * span) return ys_[n - 1];
        throw OutOfDomain("piecewise-linear evaluation above range", t);
    }
    // Largest i with xs[i] <= t.
    Eigen::Index lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        Eigen::Index mid = (lo + hi) / 2;
        if (xs_[mid] <= t)
            lo = mid;
        else
            hi = mid;
    }
    if (t == xs_[lo]) return ys_[lo];
    double w = (t - xs_[lo]) / (xs_[lo + 1] - xs_[lo]);
    return ys_[lo] * (1.0 - w) + ys_[lo + 1] * w;
}

}  // namespace meaneq
