#pragma once

#include <optional>

#include "meaneq/grid.hpp"

namespace meaneq {

// Central-difference derivative of order 1..4, accuracy O(step^2). The domain
// shrinks by the stencil radius (1 for orders 1-2, 2 for orders 3-4) at each
// end.
GridFunction finite_diff(const GridFunction& f, int order);

// Generalized Wronskian W^{k,l} = f^(k) g^(l) - g^(k) f^(l) on the common
// differentiable sub-grid, derivatives by central differences.
GridFunction wronskian(const GridFunction& f, const GridFunction& g, int k, int l);

// Same from analytic derivative callables at a single point.
template <class F, class G>
double wronskian_at(F&& f, G&& g, int k, int l, double x) {
    return f(x, k) * g(x, l) - g(x, k) * f(x, l);
}

struct ValueWithDeviation {
    double value = 0;
    double deviation = 0;  // sup |pointwise - value| over the interior grid
};

// Measured constants and deviations for the differential identities
// phi' f^2 = lambda, W^{01} = alpha, W^{12} = beta, W^{02} = W^{13} = 0 and
// 7 W^{04} + 12 W^{13} = 0, with g = phi*f and gamma = -beta/alpha.
struct InvariantReport {
    ValueWithDeviation lambda_hat;
    ValueWithDeviation alpha_hat;
    ValueWithDeviation beta_hat;
    std::optional<double> gamma_hat;  // absent when alpha is numerically zero
    double dev_w02 = 0;
    double dev_w13 = 0;
    double dev_7w04_12w13 = 0;
    // Sup of the constituent |f^(k) g^(l)| + |g^(k) f^(l)| products, for
    // dimensionless thresholds.
    double scale_w01 = 0;
    double scale_w02 = 0;
    double scale_w13 = 0;
    double scale_w04 = 0;
    double step_used = 0;
};

// Runs all identity checks on aligned samples of (phi, f). Requires f
// bounded away from zero: min |f| > tol * max |f|.
InvariantReport invariant_report(const GridFunction& phi, const GridFunction& f, double tol);

}  // namespace meaneq
