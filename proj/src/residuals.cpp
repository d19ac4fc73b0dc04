#include "meaneq/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

namespace meaneq {

namespace {

int sweep_threads(Eigen::Index rows) {
    unsigned hw = std::thread::hardware_concurrency();
    long want = hw == 0 ? 1 : static_cast<long>(std::min(hw, 8u));
    if (const char* env = std::getenv("MEANEQ_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) want = std::min(want, cap);
    }
    want = std::min<long>(want, rows);
    return static_cast<int>(std::max<long>(1, want));
}

// Row-parallel sweep with a fixed-order reduction: per-row partials are
// stored and combined sequentially, so sup witness and mean are independent
// of the thread count.
template <class RowFn>
ResidualReport run_sweep(Eigen::Index n, const std::vector<double>& xs, RowFn&& row_fn,
                         double scale) {
    std::vector<double> row_sup(n, 0.0), row_sum(n, 0.0);
    std::vector<Eigen::Index> row_arg(n, 0);

    auto work = [&](Eigen::Index r0, Eigen::Index r1) {
        for (Eigen::Index i = r0; i < r1; ++i) row_fn(i, row_sup[i], row_arg[i], row_sum[i]);
    };
    int threads = sweep_threads(n);
    if (threads <= 1 || n < 64) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        Eigen::Index chunk = (n + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            Eigen::Index r0 = t * chunk, r1 = std::min<Eigen::Index>(n, r0 + chunk);
            if (r0 >= r1) break;
            pool.emplace_back([&, t, r0, r1] {
                try {
                    work(r0, r1);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    ResidualReport rep;
    rep.grid_shape = {n, n};
    rep.scale = scale;
    double total = 0;
    Eigen::Index wi = 0, wj = 0;
    double sup = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
        total += row_sum[i];
        if (row_sup[i] > sup) {
            sup = row_sup[i];
            wi = i;
            wj = row_arg[i];
        }
    }
    rep.sup_abs = std::max(0.0, sup);
    rep.mean_abs = total / (static_cast<double>(n) * static_cast<double>(n));
    rep.witness = {xs[wi], xs[wj]};
    return rep;
}

std::vector<double> cell_centered_nodes(const Interval& domain, Eigen::Index n) {
    if (n < 2) throw PreconditionError("residual sweep requires n >= 2");
    if (!domain.is_open() || !domain.is_bounded() || domain.is_point())
        throw PreconditionError("residual sweep requires an open bounded domain");
    double step = domain.length() / static_cast<double>(n);
    std::vector<double> xs(n);
    for (Eigen::Index i = 0; i < n; ++i)
        xs[i] = domain.lo + 0.5 * step + step * static_cast<double>(i);
    return xs;
}

}  // namespace

ResidualReport sup_residual_eq1(const RealFn& phi, const RealFn& f, const Interval& domain,
                                Eigen::Index n) {
    std::vector<double> xs = cell_centered_nodes(domain, n);
    std::vector<double> fv(n), pf(n), phim(2 * n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        fv[i] = f(xs[i]);
        pf[i] = phi(xs[i]) * fv[i];
    }
    // Midpoints (x_i + x_j)/2 depend only on i + j.
    for (Eigen::Index s = 0; s < 2 * n - 1; ++s) {
        Eigen::Index i = std::min<Eigen::Index>(s, n - 1);
        phim[s] = phi(0.5 * (xs[i] + xs[s - i]));
    }
    double scale = 0;
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(pf[i]));

    auto row = [&](Eigen::Index i, double& sup, Eigen::Index& arg, double& sum) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double r = std::abs(phim[i + j] * (fv[i] + fv[j]) - (pf[i] + pf[j]));
            sum += r;
            if (r > sup) {
                sup = r;
                arg = j;
            }
        }
    };
    return run_sweep(n, xs, row, scale);
}

ResidualReport sup_residual_g0h(const RealFn& g0, const RealFn& ell, const RealFn& h,
                                const Interval& domain, Eigen::Index n,
                                const Interval& g0_domain) {
    std::vector<double> xs = cell_centered_nodes(domain, n);
    std::vector<double> lv(n), hv(n), hm(2 * n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        lv[i] = ell(xs[i]);
        hv[i] = h(xs[i]);
    }
    for (Eigen::Index s = 0; s < 2 * n - 1; ++s) {
        Eigen::Index i = std::min<Eigen::Index>(s, n - 1);
        hm[s] = h(0.5 * (xs[i] + xs[s - i]));
    }
    double scale = 0;
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(hv[i]));

    double arg_slack = 1e-12 * std::max(1.0, std::min(std::abs(g0_domain.lo), g0_domain.hi));
    auto row = [&](Eigen::Index i, double& sup, Eigen::Index& arg, double& sum) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double u = lv[i] - lv[j];
            if (u < g0_domain.lo - arg_slack || u > g0_domain.hi + arg_slack)
                throw OutOfDomain("g0 argument outside ell(I) - ell(I)", u);
            double r = std::abs(g0(u) - hm[i + j] + 0.5 * (hv[i] + hv[j]));
            sum += r;
            if (r > sup) {
                sup = r;
                arg = j;
            }
        }
    };
    return run_sweep(n, xs, row, scale);
}

ResidualReport sup_residual_eq1(const ClosedFormPair& pair, Eigen::Index n) {
    return sup_residual_eq1(pair.phi_fn(), pair.f_fn(), pair.domain(), n);
}

ResidualReport sup_residual_eq1(const FlatPair& pair, Eigen::Index n) {
    return sup_residual_eq1(pair.phi_fn(), pair.f_fn(), pair.domain(), n);
}

ResidualReport sup_residual_g0h(const ClosedFormTriple& triple, Eigen::Index n) {
    return sup_residual_g0h(triple.g0_fn(), triple.ell_fn(), triple.H_fn(), triple.domain(), n,
                            triple.g0_domain());
}

namespace {

std::vector<Eigen::Index> subsample_indices(Eigen::Index n, Eigen::Index max_nodes) {
    Eigen::Index stride = std::max<Eigen::Index>(1, (n + max_nodes - 1) / max_nodes);
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; i += stride) idx.push_back(i);
    return idx;
}

}  // namespace

ResidualReport sup_residual_eq1_grid(const GridFunction& phi, const GridFunction& f,
                                     Eigen::Index max_nodes) {
    if (!phi.aligned_with(f)) throw PreconditionError("phi and f grids must be aligned");
    const auto& pv = phi.values();
    const auto& fv = f.values();
    auto idx = subsample_indices(f.size(), max_nodes);
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());

    ResidualReport rep;
    rep.grid_shape = {k, k};
    rep.scale = (pv * fv).abs().maxCoeff();
    double sup = -1, total = 0;
    Eigen::Index count = 0;
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            Eigen::Index p = idx[a], q = idx[b];
            if ((p + q) % 2 != 0) continue;
            Eigen::Index m = (p + q) / 2;
            double r = std::abs(pv[m] * (fv[p] + fv[q]) - (pv[p] * fv[p] + pv[q] * fv[q]));
            total += r;
            ++count;
            if (r > sup) {
                sup = r;
                rep.witness = {f.x(p), f.x(q)};
            }
        }
    }
    rep.sup_abs = std::max(0.0, sup);
    rep.mean_abs = count > 0 ? total / static_cast<double>(count) : 0.0;
    return rep;
}

ResidualReport sup_residual_g0h_grid(const GridFunction& g0, const GridFunction& ell,
                                     const GridFunction& h, Eigen::Index max_nodes) {
    if (!ell.aligned_with(h)) throw PreconditionError("ell and H grids must be aligned");
    const auto& lv = ell.values();
    const auto& hv = h.values();
    auto idx = subsample_indices(ell.size(), max_nodes);
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());

    ResidualReport rep;
    rep.grid_shape = {k, k};
    rep.scale = hv.abs().maxCoeff();
    double sup = -1, total = 0;
    Eigen::Index count = 0;
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            Eigen::Index p = idx[a], q = idx[b];
            if ((p + q) % 2 != 0) continue;
            Eigen::Index m = (p + q) / 2;
            double r = std::abs(g0(lv[p] - lv[q]) - hv[m] + 0.5 * (hv[p] + hv[q]));
            total += r;
            ++count;
            if (r > sup) {
                sup = r;
                rep.witness = {ell.x(p), ell.x(q)};
            }
        }
    }
    rep.sup_abs = std::max(0.0, sup);
    rep.mean_abs = count > 0 ? total / static_cast<double>(count) : 0.0;
    return rep;
}

}  // namespace meaneq
