#pragma once

#include <utility>

#include "meaneq/families.hpp"
#include "meaneq/grid.hpp"
#include "meaneq/intervals.hpp"

namespace meaneq {

// Grid-wide residual summary. `scale` is the sup of the equation's dominant
// term over the same grid, so thresholds are dimensionless.
struct ResidualReport {
    double sup_abs = 0;
    double mean_abs = 0;
    std::pair<double, double> witness{0, 0};
    std::pair<Eigen::Index, Eigen::Index> grid_shape{0, 0};
    double scale = 0;
};

// D_{f,g}(x,y) = f(m)(g(x)+g(y)) - g(m)(f(x)+f(y)), m = (x+y)/2.
template <class F, class G>
double dfg(F&& f, G&& g, double x, double y) {
    double m = 0.5 * (x + y);
    return f(m) * (g(x) + g(y)) - g(m) * (f(x) + f(y));
}

// phi(m)(f(x)+f(y)) - phi(x)f(x) - phi(y)f(y); exactly symmetric in (x,y).
template <class P, class F>
double residual_eq1(P&& phi, F&& f, double x, double y) {
    double m = 0.5 * (x + y);
    return phi(m) * (f(x) + f(y)) - (phi(x) * f(x) + phi(y) * f(y));
}

// G0(ell(x)-ell(y)) - H((x+y)/2) + (H(x)+H(y))/2.
template <class G0, class L, class H>
double residual_g0h(G0&& g0, L&& ell, H&& h, double x, double y) {
    double m = 0.5 * (x + y);
    return g0(ell(x) - ell(y)) - h(m) + 0.5 * (h(x) + h(y));
}

// G(g(u)-g(v)) - H(h(u)+h(v)) - F(u) - F(v).
template <class G, class Sg, class H, class Sh, class F>
double residual_ghf(G&& bigG, Sg&& g, H&& bigH, Sh&& h, F&& f, double u, double v) {
    return bigG(g(u) - g(v)) - bigH(h(u) + h(v)) - f(u) - f(v);
}

// Residual sweeps over the n x n cell-centered grid on domain^2. Rows may be
// processed in parallel (MEANEQ_THREADS caps the thread count); sup/mean are
// reduced in fixed row order, so results are deterministic.
ResidualReport sup_residual_eq1(const RealFn& phi, const RealFn& f, const Interval& domain,
                                Eigen::Index n);
ResidualReport sup_residual_g0h(const RealFn& g0, const RealFn& ell, const RealFn& h,
                                const Interval& domain, Eigen::Index n,
                                const Interval& g0_domain);
ResidualReport sup_residual_eq1(const ClosedFormPair& pair, Eigen::Index n);
ResidualReport sup_residual_eq1(const FlatPair& pair, Eigen::Index n);
ResidualReport sup_residual_g0h(const ClosedFormTriple& triple, Eigen::Index n);

// Residual of eq (1) evaluated on sampled data: sweeps node pairs with even
// index sum (whose midpoint is again a node), subsampled to at most
// `max_nodes` nodes per axis. No interpolation is involved.
ResidualReport sup_residual_eq1_grid(const GridFunction& phi, const GridFunction& f,
                                     Eigen::Index max_nodes = 201);

// As above for eq (G0H); g0 arguments ell(x)-ell(y) fall between nodes, so g0
// is evaluated through interpolation.
ResidualReport sup_residual_g0h_grid(const GridFunction& g0, const GridFunction& ell,
                                     const GridFunction& h, Eigen::Index max_nodes = 201);

}  // namespace meaneq
