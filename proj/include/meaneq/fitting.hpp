#pragma once

#include <optional>

#include "meaneq/families.hpp"
#include "meaneq/grid.hpp"

namespace meaneq {

struct GammaEstimate {
    double gamma_hat = 0;
    double stderr_ = 0;
};

// Least-squares gamma for f'' = gamma f and g'' = gamma g jointly, second
// derivatives by central differences:
// gamma = (<f'',f> + <g'',g>) / (<f,f> + <g,g>).
GammaEstimate estimate_gamma(const GridFunction& f, const GridFunction& g);

struct CoefficientFit {
    double a = 0, b = 0, c = 0, d = 0;
    double misfit = 0;  // combined relative residual norm
};

// Linear least squares of f (then g) against the basis (psi1, psi2) of
// psi'' = gamma psi.
CoefficientFit fit_coefficients(const GridFunction& f, const GridFunction& g, double gamma);

enum class PairFitCase { Flat, Trig, Affine, Hyperbolic };

const char* to_string(PairFitCase c);

struct PairFit {
    PairFitCase case_tag = PairFitCase::Flat;
    std::optional<PairParams> params;  // absent for Flat
    double fit_residual = 0;           // relative least-squares misfit
    double gamma_stderr = 0;
    // Flat diagnostics: the measured constant and the constancy region.
    std::optional<double> phi_const;
    std::optional<Interval> constancy_region;
};

// Decides between the flat alternative (phi constant on the half-sum set
// induced by the zero set of f) and the closed-form families; validates the
// winner against the data residual and throws Unclassifiable otherwise.
// Reported (a,b,c,d) are normalized to a^2+b^2 = 1 with the first nonzero of
// (a,b) positive.
PairFit classify_pair(const GridFunction& phi, const GridFunction& f, double tol);

struct TripleFit {
    TripleCase case_tag = TripleCase::I;
    TripleParams params;
    double fit_residual = 0;
};

// Classifies sampled (G0, ell, H) against the seven closed-form rows via the
// induced pair (phi, f) = (H', 1/ell'); E and B are pinned by matching ell
// and H at the domain midpoint.
TripleFit classify_triple(const GridFunction& g0, const GridFunction& ell, const GridFunction& h,
                          double tol);

// Rebuilds the closed form described by a triple fit (case (i) gets the
// identity ell).
ClosedFormTriple reconstruct_triple(const TripleFit& fit, const Interval& domain);

}  // namespace meaneq
