#include "meaneq/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace meaneq {

namespace {

int stencil_radius(int order) { return order <= 2 ? 1 : 2; }

// Trimmed mean over all values, dropping 5% at each tail of the sorted range.
double trimmed_mean(const Eigen::ArrayXd& v) {
    std::vector<double> s(v.data(), v.data() + v.size());
    std::sort(s.begin(), s.end());
    auto drop = static_cast<std::size_t>(0.05 * static_cast<double>(s.size()));
    double acc = 0;
    std::size_t n = 0;
    for (std::size_t i = drop; i < s.size() - drop; ++i, ++n) acc += s[i];
    return acc / static_cast<double>(n);
}

}  // namespace

GridFunction finite_diff(const GridFunction& f, int order) {
    if (order < 1 || order > 4) throw PreconditionError("finite_diff supports orders 1..4");
    const int r = stencil_radius(order);
    const Eigen::Index n = f.size();
    const Eigen::Index m = n - 2 * r;
    if (m < 1) throw TooFewPoints("grid too short for the central stencil");
    const double h = f.step();
    const auto& v = f.values();
    Eigen::ArrayXd out(m);
    switch (order) {
        case 1:
            out = (v.segment(2, m) - v.segment(0, m)) / (2 * h);
            break;
        case 2:
            out = (v.segment(2, m) - 2 * v.segment(1, m) + v.segment(0, m)) / (h * h);
            break;
        case 3:
            out = (v.segment(4, m) - 2 * v.segment(3, m) + 2 * v.segment(1, m) -
                   v.segment(0, m)) /
                  (2 * h * h * h);
            break;
        default:
            out = (v.segment(4, m) - 4 * v.segment(3, m) + 6 * v.segment(2, m) -
                   4 * v.segment(1, m) + v.segment(0, m)) /
                  (h * h * h * h);
            break;
    }
    return GridFunction(f.x(r), h, std::move(out));
}

namespace {

// Derivative of order `k` restricted to the radius-`rmax` interior, so
// different orders can be combined elementwise.
Eigen::ArrayXd deriv_on_interior(const GridFunction& f, int k, int rmax) {
    if (k == 0) return f.values().segment(rmax, f.size() - 2 * rmax);
    GridFunction d = finite_diff(f, k);
    int r = stencil_radius(k);
    return d.values().segment(rmax - r, f.size() - 2 * rmax);
}

}  // namespace

GridFunction wronskian(const GridFunction& f, const GridFunction& g, int k, int l) {
    if (!f.aligned_with(g)) throw PreconditionError("wronskian requires aligned grids");
    if (k < 0 || k > 4 || l < 0 || l > 4)
        throw PreconditionError("wronskian orders must be between 0 and 4");
    int rmax = std::max(k == 0 ? 0 : stencil_radius(k), l == 0 ? 0 : stencil_radius(l));
    if (f.size() - 2 * rmax < 1) throw TooFewPoints("grid too short for the requested orders");
    Eigen::ArrayXd fk = deriv_on_interior(f, k, rmax);
    Eigen::ArrayXd fl = deriv_on_interior(f, l, rmax);
    Eigen::ArrayXd gk = deriv_on_interior(g, k, rmax);
    Eigen::ArrayXd gl = deriv_on_interior(g, l, rmax);
    return GridFunction(f.x(rmax), f.step(), fk * gl - gk * fl);
}

InvariantReport invariant_report(const GridFunction& phi, const GridFunction& f, double tol) {
    if (!phi.aligned_with(f)) throw PreconditionError("invariant_report requires aligned grids");
    if (f.size() < 5) throw TooFewPoints("invariant_report needs at least 5 points");

    double fmax = f.values().abs().maxCoeff();
    Eigen::Index imin = 0;
    double fmin = f.values().abs().minCoeff(&imin);
    if (fmin <= tol * fmax)
        throw FNearZero("f is not bounded away from zero on the grid", f.x(imin));

    GridFunction g(f.x0(), f.step(), phi.values() * f.values());

    const int rmax = 2;
    auto fd = [&](const GridFunction& u, int k) { return deriv_on_interior(u, k, rmax); };
    Eigen::ArrayXd f0 = fd(f, 0), f1 = fd(f, 1), f2 = fd(f, 2), f3 = fd(f, 3), f4 = fd(f, 4);
    Eigen::ArrayXd g0 = fd(g, 0), g1 = fd(g, 1), g2 = fd(g, 2), g3 = fd(g, 3), g4 = fd(g, 4);
    Eigen::ArrayXd p1 = fd(phi, 1);

    Eigen::ArrayXd lam = p1 * f0 * f0;
    Eigen::ArrayXd w01 = f0 * g1 - g0 * f1;
    Eigen::ArrayXd w12 = f1 * g2 - g1 * f2;
    Eigen::ArrayXd w02 = f0 * g2 - g0 * f2;
    Eigen::ArrayXd w13 = f1 * g3 - g1 * f3;
    Eigen::ArrayXd w04 = f0 * g4 - g0 * f4;

    InvariantReport rep;
    rep.step_used = f.step();
    rep.lambda_hat.value = trimmed_mean(lam);
    rep.lambda_hat.deviation = (lam - rep.lambda_hat.value).abs().maxCoeff();
    rep.alpha_hat.value = trimmed_mean(w01);
    rep.alpha_hat.deviation = (w01 - rep.alpha_hat.value).abs().maxCoeff();
    rep.beta_hat.value = trimmed_mean(w12);
    rep.beta_hat.deviation = (w12 - rep.beta_hat.value).abs().maxCoeff();
    rep.dev_w02 = w02.abs().maxCoeff();
    rep.dev_w13 = w13.abs().maxCoeff();
    rep.dev_7w04_12w13 = (7 * w04 + 12 * w13).abs().maxCoeff();
    rep.scale_w01 = ((f0 * g1).abs() + (g0 * f1).abs()).maxCoeff();
    rep.scale_w02 = ((f0 * g2).abs() + (g0 * f2).abs()).maxCoeff();
    rep.scale_w13 = ((f1 * g3).abs() + (g1 * f3).abs()).maxCoeff();
    rep.scale_w04 = ((f0 * g4).abs() + (g0 * f4).abs()).maxCoeff();
    if (std::abs(rep.alpha_hat.value) > 1e-8 * std::max(1.0, rep.scale_w01))
        rep.gamma_hat = -rep.beta_hat.value / rep.alpha_hat.value;
    return rep;
}

}  // namespace meaneq
