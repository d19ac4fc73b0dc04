#pragma once

#include <Eigen/Core>
#include <functional>

#include "meaneq/errors.hpp"
#include "meaneq/intervals.hpp"

namespace meaneq {

using RealFn = std::function<double(double)>;

// Uniformly sampled real function on [x0, x0 + step*(n-1)]. The numeric
// stand-in for all sampled unknowns. Evaluation snaps to nodes when the
// argument is (numerically) a node and interpolates linearly otherwise.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(double x0, double step, Eigen::ArrayXd values);

    // Cell-centered sampling of `fn` over an open bounded interval: n nodes
    // at lo + step/2 + i*step with step = length/n. Grids built this way
    // never touch the (excluded) endpoints, and ambient() inverts the layout.
    static GridFunction sample(const RealFn& fn, const Interval& domain, Eigen::Index n);

    Eigen::Index size() const { return values_.size(); }
    double x0() const { return x0_; }
    double step() const { return step_; }
    double x(Eigen::Index i) const { return x0_ + step_ * static_cast<double>(i); }
    double x_back() const { return x(size() - 1); }

    const Eigen::ArrayXd& values() const { return values_; }
    Eigen::ArrayXd& values() { return values_; }

    Interval node_span() const { return Interval::closed(x0_, x_back()); }
    // The open interval this grid samples under the cell-centered convention.
    Interval ambient() const { return Interval::open(x0_ - 0.5 * step_, x_back() + 0.5 * step_); }

    double operator()(double x) const;

    bool aligned_with(const GridFunction& other) const;

    // Same x-axis, transformed values.
    GridFunction map(const std::function<double(double)>& f) const;

private:
    double x0_ = 0.0;
    double step_ = 1.0;
    Eigen::ArrayXd values_;
};

// Piecewise-linear function on strictly increasing breakpoints; exact at
// nodes. Used for monotone inverses and for grid-backed callables.
class PiecewiseLinearFn {
public:
    PiecewiseLinearFn() = default;
    PiecewiseLinearFn(Eigen::ArrayXd xs, Eigen::ArrayXd ys);

    double operator()(double t) const;
    double front_x() const { return xs_[0]; }
    double back_x() const { return xs_[xs_.size() - 1]; }

private:
    Eigen::ArrayXd xs_, ys_;
};

}  // namespace meaneq
