#pragma once

#include <functional>
#include <optional>
#include <string>

#include "meaneq/grid.hpp"
#include "meaneq/intervals.hpp"

namespace meaneq {

// ---------------------------------------------------------------------------
// Two-function families: (f, phi) with f = a*psi1 + b*psi2 nowhere zero and
// phi = (c*psi1 + d*psi2) / (a*psi1 + b*psi2), where the basis (psi1, psi2)
// is (sin(wx), cos(wx)) for gamma < 0, (1, x) for gamma = 0 and
// (sinh(wx), cosh(wx)) for gamma > 0, w = sqrt(|gamma|).
// ---------------------------------------------------------------------------

enum class PairCase { Trig, Affine, Hyperbolic };

const char* to_string(PairCase c);

struct PairParams {
    double a = 0, b = 0, c = 0, d = 0;
    double gamma = 0;
};

class ClosedFormPair {
public:
    const PairParams& params() const { return params_; }
    const Interval& domain() const { return domain_; }
    PairCase family_case() const;

    // Analytic derivative of order `deriv` (0..4) at x.
    double f(double x, int deriv = 0) const;
    double g(double x, int deriv = 0) const;  // g = phi*f = c*psi1 + d*psi2
    double phi(double x, int deriv = 0) const;

    RealFn f_fn() const;
    RealFn phi_fn() const;

private:
    friend ClosedFormPair build_pair(const PairParams&, const Interval&);
    ClosedFormPair(PairParams p, Interval domain) : params_(p), domain_(std::move(domain)) {}

    double combo(double x, int deriv, double u, double v) const;
    void check_domain(double x) const;

    PairParams params_;
    Interval domain_;
};

// Validates ad != bc and that f has no root inside the open bounded domain
// (roots located in closed form, not by sampling).
ClosedFormPair build_pair(const PairParams& params, const Interval& domain);

// First root of a*psi1 + b*psi2 strictly inside `domain`, if any.
std::optional<double> pair_f_root_in(const PairParams& params, const Interval& domain);

// ---------------------------------------------------------------------------
// Flat family: f vanishes off a subinterval J and phi is constant on the
// half-sum set (J + I)/2, continuous on all of I.
// ---------------------------------------------------------------------------

class FlatPair {
public:
    const Interval& domain() const { return domain_; }
    const std::optional<Interval>& support() const { return support_; }
    // The half-sum set (J+I)/2; nullopt when the support is empty.
    const std::optional<Interval>& constancy_region() const { return region_; }
    double phi_const() const { return phi_const_; }

    double f(double x) const;
    double phi(double x) const;

    RealFn f_fn() const;
    RealFn phi_fn() const;

private:
    friend FlatPair build_flat_pair(const Interval&, const std::optional<Interval>&, double,
                                    RealFn, RealFn);
    FlatPair() = default;

    Interval domain_;
    std::optional<Interval> support_;
    std::optional<Interval> region_;
    double phi_const_ = 0;
    RealFn f_support_;
    RealFn phi_tail_;
};

FlatPair build_flat_pair(const Interval& domain, const std::optional<Interval>& support,
                         double phi_const, RealFn f_support, RealFn phi_tail);

// ---------------------------------------------------------------------------
// Three-function families (G0, ell, H) solving
// G0(ell(x) - ell(y)) = H((x+y)/2) - (H(x)+H(y))/2, by case:
//   (i)    G0 = 0,             ell arbitrary monotone,            H = Ax+B
//   (ii)   G0 = C(Du)^2,       ell = x/(2D)+E,                    H = -Cx^2+Ax+B
//   (iii)  G0 = C(Du)^2,       ell = e^{ax}/(2D)+E,               H = -(C/2)e^{2ax}+Ax+B
//   (iv)   G0 = C ln cosh(Du), ell = ln|ax+b|/(2D)+E,             H = C ln|ax+b|+Ax+B
//   (v)    G0 = C ln cosh(Du), ell = ln|tan(ax+b)|/(2D)+E,        H = C ln|sin(2ax+2b)|+Ax+B
//   (vi)   G0 = C ln cosh(Du), ell = ln|tanh(ax+b)|/(2D)+E,       H = C ln|sinh(2ax+2b)|+Ax+B
//   (vii)  G0 = C ln cos(Du),  ell = arctan(tanh(ax+b))/D+E,      H = C ln cosh(2ax+2b)+Ax+B
// with a = alpha, b = beta. Cases (iv)/(v)/(vi) additionally require
// 0 not in alpha*I+beta, Z cap (2/pi)(alpha*I+beta) empty, 0 not in alpha*I+beta.
// ---------------------------------------------------------------------------

enum class TripleCase { I, II, III, IV, V, VI, VII };

const char* to_string(TripleCase c);
std::optional<TripleCase> triple_case_from_string(const std::string& s);

struct TripleParams {
    TripleCase case_tag = TripleCase::I;
    double A = 0, B = 0, C = 0, D = 0, E = 0;
    double alpha = 0, beta = 0;
};

// Strictly monotone closed forms accepted for the "arbitrary" ell of case (i).
struct MonotoneForm {
    enum class Kind { Identity, Affine, Exp } kind = Kind::Identity;
    double p = 1, q = 0;  // Affine: p*x+q (p != 0); Exp: exp(p*x+q) (p != 0)

    double eval(double x, int deriv) const;
};

class ClosedFormTriple {
public:
    const TripleParams& params() const { return params_; }
    const Interval& domain() const { return domain_; }
    const Interval& g0_domain() const { return g0_domain_; }

    double g0(double u, int deriv = 0) const;
    double ell(double x, int deriv = 0) const;
    double H(double x, int deriv = 0) const;

    // The induced pair of Lem GH: phi = H', f = 1/ell'.
    double phi(double x) const { return H(x, 1); }
    double f(double x) const { return 1.0 / ell(x, 1); }

    RealFn g0_fn() const;
    RealFn ell_fn() const;
    RealFn H_fn() const;

private:
    friend ClosedFormTriple build_triple(const TripleParams&, const Interval&,
                                         const std::optional<MonotoneForm>&);
    ClosedFormTriple() = default;

    TripleParams params_;
    Interval domain_;
    Interval g0_domain_;
    MonotoneForm case_i_ell_;
};

ClosedFormTriple build_triple(const TripleParams& params, const Interval& domain,
                              const std::optional<MonotoneForm>& case_i_ell = std::nullopt);

}  // namespace meaneq
