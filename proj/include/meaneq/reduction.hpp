#pragma once

#include <optional>

#include "meaneq/families.hpp"
#include "meaneq/grid.hpp"
#include "meaneq/residuals.hpp"

namespace meaneq {

// A named function in a GHF/G0H bundle: a callable with a declared open
// domain, plus the original samples when the member is grid-backed.
struct FuncMember {
    RealFn fn;
    Interval domain{0, 1, false, false};
    std::optional<GridFunction> samples;

    double operator()(double x) const { return fn(x); }

    static FuncMember from_grid(GridFunction g);
    static FuncMember from_fn(RealFn f, const Interval& domain);
};

// The five unknowns of G(g(u)-g(v)) = H(h(u)+h(v)) + F(u) + F(v) on J.
struct GhfSystem {
    Interval domain_j{0, 1, false, false};
    FuncMember g, h, F;  // on J
    FuncMember G;        // on g(J) - g(J)
    FuncMember H;        // on h(J) + h(J) = 2h(J)
};

// The reduced unknowns of G0(ell(x)-ell(y)) = H((x+y)/2) - (H(x)+H(y))/2
// on I = 2h(J).
struct ReducedSystem {
    Interval domain_i{0, 1, false, false};
    FuncMember ell, H;  // on I
    FuncMember g0;      // on ell(I) - ell(I); g0(0) = 0
    double g_at_zero = 0;
};

// Continuous inverse of a strictly monotone sampled function by monotone
// piecewise-linear interpolation; exact at grid nodes.
PiecewiseLinearFn invert_monotone(const GridFunction& h);

// The forward reduction I := 2h(J), ell := g o h^{-1}(./2), G0 := G - G(0),
// together with the consistency check F(u) = (G(0) - H(2h(u)))/2 evaluated
// at F's sample nodes. `out_n` sets the sample count of the produced grids
// (0 derives it from h).
std::pair<ReducedSystem, ResidualReport> reduce_ghf(const GhfSystem& sys, Eigen::Index out_n = 0);

// The converse construction g := ell(2h(.)), F := (G(0) - H(2h(.)))/2,
// G := G(0) + G0 on J := h^{-1}(I/2). Members evaluate through the reduced
// system's callables, so a triple that solves the reduced equation lifts to
// a quintuple with residual at rounding level.
GhfSystem lift_g0h(const ReducedSystem& red, const GridFunction& h);
GhfSystem lift_g0h(const ClosedFormTriple& triple, double g_at_zero, const GridFunction& h);

// Residual sweep of the five-function equation over the n x n interior grid
// of J^2; scale is sup |G| over the visited arguments.
ResidualReport sup_residual_ghf(const GhfSystem& sys, Eigen::Index n);

}  // namespace meaneq
