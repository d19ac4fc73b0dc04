#include "meaneq/families.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace meaneq {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kPoleGuard = 1e-12;

// Binomial coefficients up to n = 4.
constexpr int kBinom[5][5] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

using Stack = std::array<double, 5>;  // value and derivatives 1..4 at a point

void require_deriv_order(int deriv) {
    if (deriv < 0 || deriv > 4)
        throw PreconditionError("derivative order must be between 0 and 4");
}

void require_open_bounded(const Interval& domain, const char* who) {
    if (!domain.is_open() || !domain.is_bounded() || domain.is_point())
        throw PreconditionError(std::string(who) + " requires an open bounded nonempty domain");
}

double pow_int(double base, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= base;
    return r;
}

// Distance from t to the nearest multiple of `period`.
double dist_to_lattice(double t, double period) {
    return std::abs(t - period * std::round(t / period));
}

Stack lncosh_stack(double t) {
    double th = std::tanh(t);
    double se2 = 1.0 - th * th;  // sech^2
    double v = std::abs(t) > 20 ? std::abs(t) - std::log(2.0) + std::log1p(std::exp(-2 * std::abs(t)))
                                : std::log(std::cosh(t));
    return {v, th, se2, -2 * se2 * th, 4 * se2 * th * th - 2 * se2 * se2};
}

Stack lncos_stack(double t) {
    double tn = std::tan(t);
    double sc2 = 1.0 + tn * tn;  // sec^2
    return {std::log(std::cos(t)), -tn, -sc2, -2 * sc2 * tn, -2 * sc2 * (2 * tn * tn + sc2)};
}

Stack lnabs_stack(double t) {
    double r = 1.0 / t;
    return {std::log(std::abs(t)), r, -r * r, 2 * r * r * r, -6 * r * r * r * r};
}

Stack lnabs_sin_stack(double t) {
    double ct = std::cos(t) / std::sin(t);
    double cs2 = 1.0 + ct * ct;  // csc^2
    return {std::log(std::abs(std::sin(t))), ct, -cs2, 2 * cs2 * ct, -2 * cs2 * (2 * ct * ct + cs2)};
}

Stack lnabs_sinh_stack(double t) {
    double ch = std::cosh(t) / std::sinh(t);  // coth
    double cs2 = ch * ch - 1.0;               // csch^2
    double v = std::abs(t) > 20 ? std::abs(t) - std::log(2.0) : std::log(std::abs(std::sinh(t)));
    return {v, ch, -cs2, 2 * cs2 * ch, -2 * cs2 * (2 * ch * ch + cs2)};
}

// d/dt ln|tan t| = 2 csc(2t); higher orders written in s = 2t.
Stack lnabs_tan_stack(double t) {
    double s = 2 * t;
    double csc = 1.0 / std::sin(s);
    double cot = std::cos(s) * csc;
    return {std::log(std::abs(std::tan(t))), 2 * csc, -4 * csc * cot,
            8 * csc * (cot * cot + csc * csc), -16 * csc * cot * (cot * cot + 5 * csc * csc)};
}

Stack lnabs_tanh_stack(double t) {
    double s = 2 * t;
    double csch = 1.0 / std::sinh(s);
    double coth = std::cosh(s) * csch;
    return {std::log(std::abs(std::tanh(t))), 2 * csch, -4 * csch * coth,
            8 * csch * (coth * coth + csch * csch),
            -16 * csch * coth * (coth * coth + 5 * csch * csch)};
}

// d/dt arctan(tanh t) = sech(2t); higher orders written in s = 2t.
Stack atan_tanh_stack(double t) {
    double s = 2 * t;
    double sech = 1.0 / std::cosh(s);
    double th = std::tanh(s);
    return {std::atan(std::tanh(t)), sech, -2 * sech * th, -4 * sech * (sech * sech - th * th),
            -8 * sech * th * (th * th - 5 * sech * sech)};
}

// Stack of k * exp(lambda*x) with respect to x.
Stack exp_stack(double x, double k, double lambda) {
    double e = k * std::exp(lambda * x);
    return {e, lambda * e, lambda * lambda * e, pow_int(lambda, 3) * e, pow_int(lambda, 4) * e};
}

double chain_affine_inner(const Stack& s, int deriv, double slope) {
    return s[deriv] * pow_int(slope, deriv);
}

}  // namespace

const char* to_string(PairCase c) {
    switch (c) {
        case PairCase::Trig: return "trig";
        case PairCase::Affine: return "affine";
        case PairCase::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

PairCase ClosedFormPair::family_case() const {
    if (params_.gamma < 0) return PairCase::Trig;
    if (params_.gamma > 0) return PairCase::Hyperbolic;
    return PairCase::Affine;
}

void ClosedFormPair::check_domain(double x) const {
    double eps = 1e-12 * std::max({1.0, std::abs(domain_.lo), std::abs(domain_.hi)});
    if (x < domain_.lo - eps || x > domain_.hi + eps)
        throw OutOfDomain("evaluation outside the family domain", x);
}

double ClosedFormPair::combo(double x, int deriv, double u, double v) const {
    const double gamma = params_.gamma;
    if (gamma == 0) {
        if (deriv == 0) return u + v * x;  // basis (1, x)
        if (deriv == 1) return v;
        return 0.0;
    }
    if (gamma < 0) {
        double w = std::sqrt(-gamma);
        double s = std::sin(w * x), c = std::cos(w * x);
        double scale = pow_int(w, deriv);
        switch (deriv % 4) {
            case 0: return scale * (u * s + v * c);
            case 1: return scale * (u * c - v * s);
            case 2: return scale * (-u * s - v * c);
            default: return scale * (-u * c + v * s);
        }
    }
    double w = std::sqrt(gamma);
    double sh = std::sinh(w * x), ch = std::cosh(w * x);
    double scale = pow_int(w, deriv);
    return deriv % 2 == 0 ? scale * (u * sh + v * ch) : scale * (u * ch + v * sh);
}

double ClosedFormPair::f(double x, int deriv) const {
    require_deriv_order(deriv);
    check_domain(x);
    return combo(x, deriv, params_.a, params_.b);
}

double ClosedFormPair::g(double x, int deriv) const {
    require_deriv_order(deriv);
    check_domain(x);
    return combo(x, deriv, params_.c, params_.d);
}

double ClosedFormPair::phi(double x, int deriv) const {
    require_deriv_order(deriv);
    check_domain(x);
    double f0 = combo(x, 0, params_.a, params_.b);
    if (f0 == 0.0) throw NearSingularPoint("phi evaluated at a root of f", x);
    // Invert the Leibniz rule g = phi*f order by order.
    std::array<double, 5> fs{}, gs{}, ps{};
    for (int k = 0; k <= deriv; ++k) {
        fs[k] = combo(x, k, params_.a, params_.b);
        gs[k] = combo(x, k, params_.c, params_.d);
    }
    ps[0] = gs[0] / f0;
    for (int n = 1; n <= deriv; ++n) {
        double acc = gs[n];
        for (int k = 0; k < n; ++k) acc -= kBinom[n][k] * ps[k] * fs[n - k];
        ps[n] = acc / f0;
    }
    return ps[deriv];
}

RealFn ClosedFormPair::f_fn() const {
    return [p = *this](double x) { return p.f(x); };
}

RealFn ClosedFormPair::phi_fn() const {
    return [p = *this](double x) { return p.phi(x); };
}

std::optional<double> pair_f_root_in(const PairParams& p, const Interval& domain) {
    const double lo = domain.lo, hi = domain.hi;
    if (p.gamma == 0) {
        if (p.b == 0) return std::nullopt;  // f constant, a != 0 since ad != bc
        double root = -p.a / p.b;
        if (lo < root && root < hi) return root;
        return std::nullopt;
    }
    if (p.gamma < 0) {
        // f = R sin(w x + theta), roots at (k pi - theta) / w.
        double w = std::sqrt(-p.gamma);
        double theta = std::atan2(p.b, p.a);
        double klo = (w * lo + theta) / kPi;
        double khi = (w * hi + theta) / kPi;
        double k = std::ceil(klo);
        if (k == klo) k += 1;
        if (k < khi) return (k * kPi - theta) / w;
        return std::nullopt;
    }
    // gamma > 0: a sinh + b cosh vanishes iff tanh(w x) = -b/a with |b| < |a|.
    if (std::abs(p.a) <= std::abs(p.b)) return std::nullopt;
    double root = std::atanh(-p.b / p.a) / std::sqrt(p.gamma);
    if (lo < root && root < hi) return root;
    return std::nullopt;
}

ClosedFormPair build_pair(const PairParams& params, const Interval& domain) {
    require_open_bounded(domain, "build_pair");
    if (params.a * params.d - params.b * params.c == 0.0)
        throw DegenerateParams("pair requires ad != bc");
    if (auto root = pair_f_root_in(params, domain))
        throw ZeroInDomain("f vanishes inside the domain", *root);
    return ClosedFormPair(params, domain);
}

// ---------------------------------------------------------------------------
// Flat pairs
// ---------------------------------------------------------------------------

double FlatPair::f(double x) const {
    if (!domain_.contains(x)) {
        double eps = 1e-12 * std::max({1.0, std::abs(domain_.lo), std::abs(domain_.hi)});
        if (x < domain_.lo - eps || x > domain_.hi + eps)
            throw OutOfDomain("evaluation outside the flat-pair domain", x);
    }
    if (support_ && support_->contains(x)) return f_support_(x);
    return 0.0;
}

double FlatPair::phi(double x) const {
    if (region_ && region_->contains(x)) return phi_const_;
    return phi_tail_(x);
}

RealFn FlatPair::f_fn() const {
    return [p = *this](double x) { return p.f(x); };
}

RealFn FlatPair::phi_fn() const {
    return [p = *this](double x) { return p.phi(x); };
}

FlatPair build_flat_pair(const Interval& domain, const std::optional<Interval>& support,
                         double phi_const, RealFn f_support, RealFn phi_tail) {
    require_open_bounded(domain, "build_flat_pair");
    FlatPair out;
    out.domain_ = domain;
    out.support_ = support;
    out.phi_const_ = phi_const;
    if (support) {
        if (!domain.contains(*support))
            throw SupportNotContained("support must be a subinterval of the domain");
        if (!f_support) throw PreconditionError("nonempty support requires f_support");
        out.region_ = half_sum(IntervalUnion{*support}, domain);
    }
    out.f_support_ = std::move(f_support);
    if (!phi_tail) phi_tail = [phi_const](double) { return phi_const; };
    // Continuity across the boundary of the constancy region.
    double ctol = 1e-12 * std::max(1.0, std::abs(phi_const));
    if (out.region_) {
        for (double m : {out.region_->lo, out.region_->hi}) {
            if (m <= domain.lo || m >= domain.hi) continue;
            if (std::abs(phi_tail(m) - phi_const) > ctol)
                throw DiscontinuousPhi("phi tail does not meet the constant at the region boundary",
                                       m);
        }
    }
    out.phi_tail_ = std::move(phi_tail);
    return out;
}

// ---------------------------------------------------------------------------
// Triples
// ---------------------------------------------------------------------------

const char* to_string(TripleCase c) {
    switch (c) {
        case TripleCase::I: return "i";
        case TripleCase::II: return "ii";
        case TripleCase::III: return "iii";
        case TripleCase::IV: return "iv";
        case TripleCase::V: return "v";
        case TripleCase::VI: return "vi";
        case TripleCase::VII: return "vii";
    }
    return "?";
}

std::optional<TripleCase> triple_case_from_string(const std::string& s) {
    if (s == "i") return TripleCase::I;
    if (s == "ii") return TripleCase::II;
    if (s == "iii") return TripleCase::III;
    if (s == "iv") return TripleCase::IV;
    if (s == "v") return TripleCase::V;
    if (s == "vi") return TripleCase::VI;
    if (s == "vii") return TripleCase::VII;
    return std::nullopt;
}

double MonotoneForm::eval(double x, int deriv) const {
    switch (kind) {
        case Kind::Identity:
            if (deriv == 0) return x;
            return deriv == 1 ? 1.0 : 0.0;
        case Kind::Affine:
            if (deriv == 0) return p * x + q;
            return deriv == 1 ? p : 0.0;
        case Kind::Exp:
            return pow_int(p, deriv) * std::exp(p * x + q);
    }
    return 0.0;
}

namespace {

void check_in(const Interval& domain, double x, const char* what) {
    double eps = 1e-12 * std::max({1.0, std::abs(domain.lo), std::abs(domain.hi)});
    if (x < domain.lo - eps || x > domain.hi + eps)
        throw OutOfDomain(std::string("evaluation outside ") + what, x);
}

}  // namespace

double ClosedFormTriple::g0(double u, int deriv) const {
    require_deriv_order(deriv);
    check_in(g0_domain_, u, "the g0 domain");
    const auto& p = params_;
    switch (p.case_tag) {
        case TripleCase::I:
            return 0.0;
        case TripleCase::II:
        case TripleCase::III: {
            double dd = p.C * p.D * p.D;
            if (deriv == 0) return dd * u * u;
            if (deriv == 1) return 2 * dd * u;
            if (deriv == 2) return 2 * dd;
            return 0.0;
        }
        case TripleCase::IV:
        case TripleCase::V:
        case TripleCase::VI:
            return p.C * chain_affine_inner(lncosh_stack(p.D * u), deriv, p.D);
        case TripleCase::VII: {
            double t = p.D * u;
            if (dist_to_lattice(t - 0.5 * kPi, kPi) <= kPoleGuard)
                throw NearSingularPoint("g0 evaluated at a pole of ln cos", u);
            return p.C * chain_affine_inner(lncos_stack(t), deriv, p.D);
        }
    }
    return 0.0;
}

double ClosedFormTriple::ell(double x, int deriv) const {
    require_deriv_order(deriv);
    check_in(domain_, x, "the triple domain");
    const auto& p = params_;
    const double t = p.alpha * x + p.beta;
    switch (p.case_tag) {
        case TripleCase::I:
            return case_i_ell_.eval(x, deriv);
        case TripleCase::II:
            if (deriv == 0) return x / (2 * p.D) + p.E;
            return deriv == 1 ? 1.0 / (2 * p.D) : 0.0;
        case TripleCase::III: {
            Stack s = exp_stack(x, 1.0 / (2 * p.D), p.alpha);
            return s[deriv] + (deriv == 0 ? p.E : 0.0);
        }
        case TripleCase::IV:
            if (std::abs(t) <= kPoleGuard)
                throw NearSingularPoint("ell evaluated at the pole of ln|alpha x + beta|", x);
            return chain_affine_inner(lnabs_stack(t), deriv, p.alpha) / (2 * p.D) +
                   (deriv == 0 ? p.E : 0.0);
        case TripleCase::V:
            if (dist_to_lattice(t, 0.5 * kPi) <= kPoleGuard)
                throw NearSingularPoint("ell evaluated at a pole of ln|tan|", x);
            return chain_affine_inner(lnabs_tan_stack(t), deriv, p.alpha) / (2 * p.D) +
                   (deriv == 0 ? p.E : 0.0);
        case TripleCase::VI:
            if (std::abs(t) <= kPoleGuard)
                throw NearSingularPoint("ell evaluated at the pole of ln|tanh|", x);
            return chain_affine_inner(lnabs_tanh_stack(t), deriv, p.alpha) / (2 * p.D) +
                   (deriv == 0 ? p.E : 0.0);
        case TripleCase::VII:
            return chain_affine_inner(atan_tanh_stack(t), deriv, p.alpha) / p.D +
                   (deriv == 0 ? p.E : 0.0);
    }
    return 0.0;
}

double ClosedFormTriple::H(double x, int deriv) const {
    require_deriv_order(deriv);
    check_in(domain_, x, "the triple domain");
    const auto& p = params_;
    const double t = p.alpha * x + p.beta;
    double affine = deriv == 0 ? p.A * x + p.B : (deriv == 1 ? p.A : 0.0);
    switch (p.case_tag) {
        case TripleCase::I:
            return affine;
        case TripleCase::II: {
            double quad = deriv == 0 ? -p.C * x * x : (deriv == 1 ? -2 * p.C * x : (deriv == 2 ? -2 * p.C : 0.0));
            return quad + affine;
        }
        case TripleCase::III: {
            Stack s = exp_stack(x, -0.5 * p.C, 2 * p.alpha);
            return s[deriv] + affine;
        }
        case TripleCase::IV:
            if (std::abs(t) <= kPoleGuard)
                throw NearSingularPoint("H evaluated at the pole of ln|alpha x + beta|", x);
            return p.C * chain_affine_inner(lnabs_stack(t), deriv, p.alpha) + affine;
        case TripleCase::V:
            if (dist_to_lattice(t, 0.5 * kPi) <= kPoleGuard)
                throw NearSingularPoint("H evaluated at a zero of sin(2 alpha x + 2 beta)", x);
            return p.C * chain_affine_inner(lnabs_sin_stack(2 * t), deriv, 2 * p.alpha) + affine;
        case TripleCase::VI:
            if (std::abs(t) <= kPoleGuard)
                throw NearSingularPoint("H evaluated at a zero of sinh(2 alpha x + 2 beta)", x);
            return p.C * chain_affine_inner(lnabs_sinh_stack(2 * t), deriv, 2 * p.alpha) + affine;
        case TripleCase::VII:
            return p.C * chain_affine_inner(lncosh_stack(2 * t), deriv, 2 * p.alpha) + affine;
    }
    return 0.0;
}

RealFn ClosedFormTriple::g0_fn() const {
    return [t = *this](double u) { return t.g0(u); };
}
RealFn ClosedFormTriple::ell_fn() const {
    return [t = *this](double x) { return t.ell(x); };
}
RealFn ClosedFormTriple::H_fn() const {
    return [t = *this](double x) { return t.H(x); };
}

ClosedFormTriple build_triple(const TripleParams& params, const Interval& domain,
                              const std::optional<MonotoneForm>& case_i_ell) {
    require_open_bounded(domain, "build_triple");
    const TripleCase tag = params.case_tag;

    if (tag == TripleCase::II) {
        if (params.C * params.D == 0.0) throw DegenerateParams("case (ii) requires C*D != 0");
    } else if (tag != TripleCase::I) {
        if (params.C * params.D * params.alpha == 0.0)
            throw DegenerateParams("cases (iii)-(vii) require C*D*alpha != 0");
    }

    // eq (dom): the per-case restrictions on alpha*I + beta.
    if (tag == TripleCase::IV || tag == TripleCase::VI) {
        double p = params.alpha * domain.lo + params.beta;
        double q = params.alpha * domain.hi + params.beta;
        if (std::min(p, q) < 0.0 && 0.0 < std::max(p, q))
            throw DomainViolation("0 lies in alpha*I + beta", "zero_in_alpha_I_beta",
                                  -params.beta / params.alpha);
    } else if (tag == TripleCase::V) {
        double p = (params.alpha * domain.lo + params.beta) * (2.0 / kPi);
        double q = (params.alpha * domain.hi + params.beta) * (2.0 / kPi);
        double lo = std::min(p, q), hi = std::max(p, q);
        double k = std::ceil(lo);
        if (k == lo) k += 1;
        if (k < hi)
            throw DomainViolation("an integer lies in (2/pi)(alpha*I + beta)",
                                  "integer_in_scaled_alpha_I_beta",
                                  (k * 0.5 * kPi - params.beta) / params.alpha);
    }

    ClosedFormTriple out;
    out.params_ = params;
    out.domain_ = domain;
    if (tag == TripleCase::I) {
        out.case_i_ell_ = case_i_ell.value_or(MonotoneForm{});
        if (out.case_i_ell_.kind != MonotoneForm::Kind::Identity && out.case_i_ell_.p == 0.0)
            throw PreconditionError("case (i) ell form must be strictly monotone (p != 0)");
    } else if (case_i_ell) {
        throw PreconditionError("a custom ell is only meaningful for case (i)");
    }

    // g0 domain = ell(I) - ell(I) = ]-L, L[ from monotonicity; L may be
    // infinite when the dom-condition root sits exactly on the boundary.
    out.g0_domain_ = Interval::open(-1.0, 1.0);  // placeholder
    auto ell_limit = [&](double x) -> double {
        try {
            return out.ell(x, 0);
        } catch (const NearSingularPoint&) {
            // Boundary touches a pole: the one-sided limit of every ln-type
            // ell here is -inf or +inf depending on approach side; the span
            // becomes infinite either way.
            return std::numeric_limits<double>::infinity();
        }
    };
    double la = ell_limit(domain.lo);
    double lb = ell_limit(domain.hi);
    double span = std::isinf(la) || std::isinf(lb) ? std::numeric_limits<double>::infinity()
                                                   : std::abs(lb - la);
    if (span == 0.0) throw DegenerateParams("ell is numerically constant on the domain");
    out.g0_domain_ = Interval::open(-span, span);
    return out;
}

}  // namespace meaneq
