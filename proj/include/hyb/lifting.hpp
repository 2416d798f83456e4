#pragma once

#include "hyb/discs.hpp"
#include "hyb/factor.hpp"
#include "hyb/homotopy.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace hyb {

struct StepControl {
    double initial_step = 1.0 / 64.0;
    double min_step = 1e-12;
    double corrector_tol = 1e-11;
};

// Numeric realization of the branched cover T -> p(T). The closed set F the
// lift freezes on is the non-Arch fibre together with the critical values.
template <class K>
struct LiftContext {
    Polynomial<K> p;
    StepControl step;
    double critical_exclusion = 1e-9;

    std::vector<std::complex<double>> pc, dpc;           // coefficients of p, p'
    std::vector<std::complex<double>> roots;             // roots of p
    std::vector<std::complex<double>> critical_values;   // p at roots of p'
    std::vector<Polynomial<K>> factors;                  // irreducible factors of p
};

template <class K>
LiftContext<K> make_lift_context(Polynomial<K> p, StepControl sc = {},
                                 double critical_exclusion = 1e-9) {
    if (!p.is_monic() || p.degree() < 1)
        throw DomainError("NotMonic", "cover polynomial must be monic nonconstant");
    if (!(sc.corrector_tol < critical_exclusion))
        throw DomainError("BadDeltas", "corrector tolerance must sit below the exclusion radius");
    LiftContext<K> ctx;
    ctx.p = std::move(p);
    ctx.step = sc;
    ctx.critical_exclusion = critical_exclusion;
    ctx.pc = ctx.p.complex_coeffs();
    auto dp = ctx.p.derivative();
    ctx.dpc = dp.complex_coeffs();
    ctx.roots = roots_numeric(ctx.p);
    if (dp.degree() >= 1)
        for (const auto& w : roots_numeric(dp))
            ctx.critical_values.push_back(detail::horner(ctx.pc, w));
    ctx.factors = poly_factor_exact(ctx.p);
    return ctx;
}

// phi_p: pushforward of a point along T -> p(T).
template <class K>
HybridPoint<K> phi_cover(const Polynomial<K>& p, const HybridPoint<K>& x) {
    if (x.is_derived()) return phi_cover(p, materialize(x));
    if (x.is_arch()) {
        const auto& a = x.arch();
        return make_arch<K>(p.eval(a.z), a.t);
    }
    const auto& tp = x.triv();
    if (tp.r >= 1) return make_triv<K>(Polynomial<K>::variable(), rat_pow(tp.r, p.degree()));
    int m = multiplicity(tp.p, p);
    if (m == 0) return trivial_norm_point<K>();  // off-cover branch collapses to eta_{0,1}
    return make_triv<K>(Polynomial<K>::variable(), rat_pow(tp.r, m));
}

namespace detail {

// damped Newton on p(w) = c; backward error measured against |c| plus the
// coefficient scale, which is the honest accuracy doubles admit
inline std::optional<std::complex<double>> corrector(const std::vector<std::complex<double>>& pc,
                                                     const std::vector<std::complex<double>>& dpc,
                                                     std::complex<double> c,
                                                     std::complex<double> w0, double tol,
                                                     int max_iter) {
    std::complex<double> w = w0;
    double res = std::abs(horner(pc, w) - c);
    for (int it = 0; it < max_iter; ++it) {
        double scale = std::abs(c) + coeff_scale_at(pc, std::abs(w)) * 1e-4;
        if (res <= tol * std::max(scale, 1e-14)) return w;
        auto d = horner(dpc, w);
        if (std::abs(d) < 1e-300) return std::nullopt;
        auto step = (horner(pc, w) - c) / d;
        double damp = 1.0;
        bool moved = false;
        for (int h = 0; h < 30; ++h) {
            auto cand = w - damp * step;
            double r2 = std::abs(horner(pc, cand) - c);
            if (r2 < res) {
                w = cand;
                res = r2;
                moved = true;
                break;
            }
            damp *= 0.5;
        }
        if (!moved) {
            double scale2 = std::abs(c) + coeff_scale_at(pc, std::abs(w)) * 1e-4;
            return res <= 1e3 * tol * std::max(scale2, 1e-14) ? std::optional(w) : std::nullopt;
        }
    }
    double scale = std::abs(c) + coeff_scale_at(pc, std::abs(w)) * 1e-4;
    return res <= tol * std::max(scale, 1e-14) ? std::optional(w) : std::nullopt;
}

inline bool near_critical_value(const std::vector<std::complex<double>>& crit,
                                const std::complex<double>& c, double excl) {
    for (const auto& v : crit)
        if (std::abs(c - v) <= excl) return true;
    return false;
}

// terminal branch data once the tracked center sits at a root of p
template <class K>
std::pair<Polynomial<K>, int> branch_at(const LiftContext<K>& ctx,
                                        const std::complex<double>& w) {
    Polynomial<K> q = factor_at_root(ctx.factors, w);
    return {q, multiplicity(q, ctx.p)};
}

}  // namespace detail

// Tracks the root of p(T) - c(u) from u=0 to u=1, bisecting the parameter
// step until the corrector holds or the step collapses.
template <class K>
std::complex<double> track_segment(const LiftContext<K>& ctx,
                                   const std::function<std::complex<double>(double)>& c_of,
                                   std::complex<double> w0) {
    std::complex<double> w = w0;
    double a = 0.0;
    std::complex<double> ca = c_of(0.0);
    std::vector<double> pending{1.0};
    while (!pending.empty()) {
        double b = pending.back();
        auto cb = c_of(b);
        auto d = detail::horner(ctx.dpc, w);
        std::complex<double> pred = std::abs(d) > 1e-300 ? w + (cb - ca) / d : w;
        auto sol = detail::corrector(ctx.pc, ctx.dpc, cb, pred, ctx.step.corrector_tol, 80);
        if (!sol)  // retry from the unpredicted seed before splitting the step
            sol = detail::corrector(ctx.pc, ctx.dpc, cb, w, ctx.step.corrector_tol, 200);
        if (sol) {
            w = *sol;
            a = b;
            ca = cb;
            pending.pop_back();
            continue;
        }
        if (std::fabs(b - a) < ctx.step.min_step)
            throw NumericError("StepCollapse",
                               "root tracking stalled near an undeclared critical value");
        pending.push_back(0.5 * (a + b));
    }
    return w;
}

template <class K>
bool seed_matches(const LiftContext<K>& ctx, const HybridPoint<K>& start,
                  const HybridPoint<K>& y0) {
    HybridPoint<K> img = phi_cover(ctx.p, y0);
    HybridPoint<K> s = materialize(start);
    if (img.is_arch() != s.is_arch()) return false;
    if (img.is_arch()) {
        double scale = 1.0 + std::abs(s.arch().z);
        return std::abs(img.arch().z - s.arch().z) <= 1e-6 * scale &&
               std::fabs(img.arch().t - s.arch().t) <= 1e-9;
    }
    return std::fabs(to_double(img.triv().r) - to_double(s.triv().r)) <= 1e-9;
}

// Lift of a sampled path through phi_p. Consecutive Archimedean samples are
// joined by linear interpolation of the center; a non-Archimedean sample or
// one at a critical value enters F and freezes the lift from there on.
template <class K>
std::vector<HybridPoint<K>> lift_path(const LiftContext<K>& ctx,
                                      const std::vector<HybridPoint<K>>& gamma,
                                      const HybridPoint<K>& y0) {
    if (gamma.empty()) throw DomainError("BadPath", "empty path");
    HybridPoint<K> y = materialize(y0);
    if (!seed_matches(ctx, gamma.front(), y))
        throw DomainError("SeedMismatch", "phi_p(y0) does not match the start of the path");

    std::vector<HybridPoint<K>> out;
    out.reserve(gamma.size());
    out.push_back(y);
    if (!y.is_arch() || !materialize(gamma.front()).is_arch()) {
        while (out.size() < gamma.size()) out.push_back(y);
        return out;
    }

    std::complex<double> w = y.arch().z;
    bool frozen = false;
    for (size_t j = 1; j < gamma.size(); ++j) {
        if (frozen) {
            out.push_back(out.back());
            continue;
        }
        const auto g = materialize(gamma[j]);
        if (g.is_triv()) {
            double rho = to_double(g.triv().r);
            auto target = detail::corrector(ctx.pc, ctx.dpc, {0.0, 0.0}, w,
                                            ctx.step.corrector_tol, 400);
            auto [q, m] = detail::branch_at(ctx, target ? *target : w);
            out.push_back(make_triv<K>(q, Rational(std::pow(rho, 1.0 / m))));
            frozen = true;
            continue;
        }
        std::complex<double> c0 = materialize(gamma[j - 1]).arch().z;
        std::complex<double> c1 = g.arch().z;
        w = track_segment(ctx, [&](double u) { return c0 + u * (c1 - c0); }, w);
        out.push_back(make_arch<K>(w, g.arch().t));
        if (detail::near_critical_value(ctx.critical_values, c1, ctx.critical_exclusion))
            frozen = true;
    }
    return out;
}

// Per-point trajectory t -> lift of s |-> H(s, phi_p(x)). The base homotopy
// must stop once it meets F; tracking then crosses only regular values.
template <class K>
struct LiftedTrajectory {
    const LiftContext<K>* ctx;
    Homotopy<HybridPoint<K>> base;
    HybridPoint<K> x;

    HybridPoint<K> operator()(double t) const {
        if (t <= 0.0) return x;
        if (t > 1.0) t = 1.0;
        if (!x.is_arch()) return x;  // phi^{-1}(F): constant
        HybridPoint<K> px = phi_cover(ctx->p, x);

        std::complex<double> w = x.arch().z;
        int steps = std::max(2, static_cast<int>(std::ceil(t / ctx->step.initial_step)));
        double prev_tau = 0.0;
        for (int j = 1; j <= steps; ++j) {
            double tau = t * j / steps;
            HybridPoint<K> cur = materialize(base.eval(tau, px));
            if (cur.is_triv()) {
                double rho = to_double(cur.triv().r);
                auto target = detail::corrector(ctx->pc, ctx->dpc, {0.0, 0.0}, w,
                                                ctx->step.corrector_tol, 400);
                auto [q, m] = detail::branch_at(*ctx, target ? *target : w);
                return make_triv<K>(q, Rational(std::pow(rho, 1.0 / m)));
            }
            double ta = prev_tau, tb = tau;
            std::complex<double> cb = cur.arch().z;
            auto c_of = [&](double u) {
                if (u >= 1.0) return cb;
                return materialize(base.eval(ta + u * (tb - ta), px)).arch().z;
            };
            w = track_segment(*ctx, c_of, w);
            prev_tau = tau;
        }
        return make_arch<K>(w, materialize(base.eval(t, px)).arch().t);
    }
};

template <class K>
LiftedTrajectory<K> lift_homotopy(const LiftContext<K>& ctx,
                                  const Homotopy<HybridPoint<K>>& base,
                                  const HybridPoint<K>& x) {
    return LiftedTrajectory<K>{&ctx, base, materialize(x)};
}

}  // namespace hyb
