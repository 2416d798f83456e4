#pragma once

#include "hyb/discs.hpp"
#include "hyb/homotopy.hpp"
#include "hyb/lifting.hpp"
#include "hyb/probes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace hyb {

// -------------------------------------------------------------------------
// Profile geometry. The solid cylinder is handled through its (radius, height)
// profile on [0,1]^2; each point flows linearly toward its central projection
// from an exterior point (px, 2) onto the walls listed below. Exit parameters
// are >= 1 on the square, with equality exactly on the walls.

struct ProfilePoint {
    double r = 0.0;
    double s = 0.0;
};

namespace detail {
constexpr double kProfileInf = std::numeric_limits<double>::infinity();
}

inline double profile_exit_kappa(double r, double s, double px, bool include_left) {
    double k = 2.0 / (2.0 - s);  // bottom wall; s < 2 always
    if (include_left && r < px) k = std::min(k, px / (px - r));
    if (r > px) k = std::min(k, (1.0 - px) / (r - px));
    return k;
}

// Exit point with the exit coordinate pinned exactly onto its wall.
inline ProfilePoint profile_exit_point(double r, double s, double px, bool include_left) {
    double kb = 2.0 / (2.0 - s);
    double kl = (include_left && r < px) ? px / (px - r) : detail::kProfileInf;
    double kr = (r > px) ? (1.0 - px) / (r - px) : detail::kProfileInf;
    if (kb <= kl && kb <= kr) {
        double re = px + kb * (r - px);
        return {std::clamp(re, 0.0, 1.0), 0.0};
    }
    if (kl <= kr) {
        double se = 2.0 + kl * (s - 2.0);
        return {0.0, std::clamp(se, 0.0, 1.0)};
    }
    double se = 2.0 + kr * (s - 2.0);
    return {1.0, std::clamp(se, 0.0, 1.0)};
}

inline ProfilePoint profile_flow(double t, double r, double s, double px, bool include_left) {
    if (t <= 0.0) return {r, s};
    if (profile_exit_kappa(r, s, px, include_left) <= 1.0 + 1e-12) return {r, s};  // on a wall
    ProfilePoint e = profile_exit_point(r, s, px, include_left);
    if (t >= 1.0) return e;
    return {(1.0 - t) * r + t * e.r, (1.0 - t) * s + t * e.s};
}

// -------------------------------------------------------------------------
// Cylinder retractions in coordinates. The angle of w never changes.

inline CylinderCoord cylinder_sdr_nplus(double t, const CylinderCoord& c) {
    check_cylinder(c);
    double r = std::min(1.0, std::abs(c.w));
    ProfilePoint f = profile_flow(std::min(1.0, t), r, c.s, 0.5, true);
    if (f.r == r && f.s == c.s) return c;
    std::complex<double> w = (r == 0.0) ? c.w : c.w * (f.r / r);
    return {w, f.s};
}

// Variant for the punctured disc seen from infinity: projection from (0, 2),
// targets bottom and outer wall only. The axis r = 0 is never reached.
inline CylinderCoord cylinder_sdr_infinity(double t, const CylinderCoord& c) {
    check_cylinder(c);
    double r = std::min(1.0, std::abs(c.w));
    ProfilePoint f = profile_flow(std::min(1.0, t), r, c.s, 0.0, false);
    if (f.r == r && f.s == c.s) return c;
    std::complex<double> w = (r == 0.0) ? c.w : c.w * (f.r / r);
    return {w, f.s};
}

inline Homotopy<CylinderCoord> cylinder_homotopy(double tol = 1e-8) {
    Homotopy<CylinderCoord> h;
    h.name = "cyl";
    h.eval = [](double t, const CylinderCoord& c) { return cylinder_sdr_nplus(t, c); };
    h.target = [tol](const CylinderCoord& c) {
        double r = std::abs(c.w);
        return r <= tol || c.s <= tol || r >= 1.0 - tol;
    };
    h.fixed = h.target;
    h.lambda_compatible = true;
    return h;
}

inline Homotopy<CylinderCoord> infinity_cylinder_homotopy(double tol = 1e-8) {
    Homotopy<CylinderCoord> h;
    h.name = "cyl_inf";
    h.eval = [](double t, const CylinderCoord& c) { return cylinder_sdr_infinity(t, c); };
    h.target = [tol](const CylinderCoord& c) {
        double r = std::abs(c.w);
        return c.s <= tol || r >= 1.0 - tol;
    };
    h.fixed = h.target;
    h.lambda_compatible = true;
    return h;
}

// -------------------------------------------------------------------------
// Disc retraction for the base branch T: the cylinder SDR conjugated through
// the disc coordinates. Trivially-valued points are all fixed (bottom wall,
// trivial norm, or off-branch exteriors alike).

template <class K>
Homotopy<HybridPoint<K>> model_disc_homotopy(double delta) {
    auto spec = DiscSpec<K>::finite(Polynomial<K>::variable(), delta);
    Homotopy<HybridPoint<K>> h;
    h.name = "disc[T]";
    h.lambda_compatible = true;
    h.target = [spec](const HybridPoint<K>& x) {
        return !region_member(x, spec, RegionTag::D) || region_member(x, spec, RegionTag::Nplus);
    };
    h.fixed = h.target;
    h.eval = [spec, delta](double t, const HybridPoint<K>& x) -> HybridPoint<K> {
        if (t <= 0.0) return x;
        HybridPoint<K> m = materialize(x);
        if (!m.is_arch()) return x;
        if (!region_member(m, spec, RegionTag::D)) return x;
        CylinderCoord c = g_delta_inverse(m, delta);
        CylinderCoord f = cylinder_sdr_nplus(std::min(1.0, t), c);
        if (f.w == c.w && f.s == c.s) return x;
        return g_delta<K>(f, delta);
    };
    return h;
}

// Disc at infinity: pull back through T -> T^{-1}, run the punctured-cylinder
// flow, push forward. Bottom exits land on the trivially-valued tail segment.
template <class K>
Homotopy<HybridPoint<K>> infinity_disc_homotopy(double delta) {
    auto spec = DiscSpec<K>::infinity(delta);
    Homotopy<HybridPoint<K>> h;
    h.name = "disc[inf]";
    h.lambda_compatible = true;
    h.target = [spec](const HybridPoint<K>& x) {
        return !region_member(x, spec, RegionTag::D) || region_member(x, spec, RegionTag::N);
    };
    h.fixed = h.target;
    h.eval = [spec, delta](double t, const HybridPoint<K>& x) -> HybridPoint<K> {
        if (t <= 0.0) return x;
        HybridPoint<K> m = materialize(x);
        if (!m.is_arch()) return x;
        if (!region_member(m, spec, RegionTag::D)) return x;
        CylinderCoord c = g_delta_inverse(infinity_chart(m), delta);
        CylinderCoord f = cylinder_sdr_infinity(std::min(1.0, t), c);
        if (f.w == c.w && f.s == c.s) return x;
        return infinity_chart(g_delta<K>(f, delta));
    };
    return h;
}

// -------------------------------------------------------------------------
// Per-disc retraction of D_k(p, delta). Degree one is transported through the
// exact shift conjugation; higher degrees lift the base flow through the
// branched cover T -> p(T) by root tracking.

template <class K>
Homotopy<HybridPoint<K>> disc_sdr_homotopy(const Polynomial<K>& p, double delta) {
    if (!p.is_monic() || p.degree() < 1)
        throw DomainError("NotMonic", "disc polynomial must be monic nonconstant");
    double thr = delta_threshold(p);
    if (!(delta > 0.0 && delta <= thr + 1e-15))
        throw DomainError("DeltaTooLarge", "delta exceeds the safe threshold of p");

    bool is_t = p.degree() == 1 && field_traits<K>::is_zero(p.c[0]);
    if (is_t) return model_disc_homotopy<K>(delta);

    auto spec = DiscSpec<K>::finite(p, delta);
    Homotopy<HybridPoint<K>> h;
    h.name = "disc[p]";
    h.lambda_compatible = true;
    h.target = [spec](const HybridPoint<K>& x) {
        return !region_member(x, spec, RegionTag::D) || region_member(x, spec, RegionTag::Nplus);
    };
    h.fixed = h.target;
    auto base = model_disc_homotopy<K>(delta);

    if (p.degree() == 1) {
        K a = K(0) - p.c[0];
        std::complex<double> ac = field_traits<K>::embed(a);
        Polynomial<K> pp = p;
        h.eval = [spec, base, ac, pp](double t, const HybridPoint<K>& x) -> HybridPoint<K> {
            if (t <= 0.0) return x;
            HybridPoint<K> m = materialize(x);
            if (!m.is_arch()) return x;
            if (!region_member(m, spec, RegionTag::D)) return x;
            std::complex<double> zs = m.arch().z - ac;
            HybridPoint<K> y = base.eval(std::min(1.0, t), make_arch<K>(zs, m.arch().t));
            if (y.is_arch()) {
                if (y.arch().z == zs && y.arch().t == m.arch().t) return x;
                return make_arch<K>(y.arch().z + ac, y.arch().t);
            }
            return make_triv<K>(pp, y.triv().r);
        };
        return h;
    }

    auto ctx = std::make_shared<LiftContext<K>>(make_lift_context(p));
    h.eval = [spec, base, ctx](double t, const HybridPoint<K>& x) -> HybridPoint<K> {
        if (t <= 0.0) return x;
        HybridPoint<K> m = materialize(x);
        if (!m.is_arch()) return x;
        if (!region_member(m, spec, RegionTag::D)) return x;
        return LiftedTrajectory<K>{ctx.get(), base, m}(std::min(1.0, t));
    };
    return h;
}

template <class K>
HybridPoint<K> disc_sdr_gn(const Polynomial<K>& p, double delta, double t,
                           const HybridPoint<K>& x) {
    return disc_sdr_homotopy(p, delta).eval(std::clamp(t, 0.0, 1.0), x);
}

// -------------------------------------------------------------------------
// Axis collapse: Archimedean points over the vanishing locus of p slide down
// their fibre ray and land on the radius-zero branch points. Everything else
// is held fixed, which is what composition with the disc flow needs.

template <class K>
Homotopy<HybridPoint<K>> axis_collapse_homotopy(const Polynomial<K>& p, double delta) {
    auto factors = std::make_shared<std::vector<Polynomial<K>>>(poly_factor_exact(p));
    Polynomial<K> pp = p;
    auto moving = [pp, delta](const HybridPoint<K>& m) {
        return m.is_arch() && m.arch().t <= delta + 1e-9 && detail::arch_on_axis(pp, m.arch().z);
    };
    Homotopy<HybridPoint<K>> h;
    h.name = "axis[p]";
    h.lambda_compatible = true;
    h.target = [moving](const HybridPoint<K>& x) { return !moving(materialize(x)); };
    h.fixed = h.target;
    h.eval = [moving, factors](double t, const HybridPoint<K>& x) -> HybridPoint<K> {
        if (t <= 0.0) return x;
        HybridPoint<K> m = materialize(x);
        if (!moving(m)) return x;
        if (t >= 1.0) return make_triv<K>(factor_at_root(*factors, m.arch().z), Rational(0));
        return make_arch<K>(m.arch().z, m.arch().t * (1.0 - t));
    };
    return h;
}

// Checked single-map form: away from time 0 the input must lie in N+.
template <class K>
HybridPoint<K> axis_collapse_g(const Polynomial<K>& p, double delta, double t,
                               const HybridPoint<K>& x) {
    auto spec = DiscSpec<K>::finite(p, delta);
    if (t > 0.0 && !region_member(x, spec, RegionTag::Nplus))
        throw DomainError("OutOfRegion", "axis collapse needs a point of N+");
    return axis_collapse_homotopy(p, delta).eval(std::clamp(t, 0.0, 1.0), x);
}

// Full per-disc stage: disc flow onto N+, then the axis collapse onto N.
template <class K>
Homotopy<HybridPoint<K>> gn_homotopy(const Polynomial<K>& p, double delta) {
    auto spec = DiscSpec<K>::finite(p, delta);
    auto h = homotopy_compose(axis_collapse_homotopy(p, delta), disc_sdr_homotopy(p, delta));
    h.name = "G[p]";
    h.domain = nullptr;
    h.target = [spec](const HybridPoint<K>& x) {
        return !region_member(x, spec, RegionTag::D) || region_member(x, spec, RegionTag::N);
    };
    h.fixed = h.target;
    h.lambda_compatible = true;
    return h;
}

// -------------------------------------------------------------------------
// Fibre squeeze: lambda |-> min(lambda, delta(1-s) + delta' s).

template <class K>
HybridPoint<K> fiber_squeeze_R(double s, const HybridPoint<K>& x, double delta, double deltap) {
    return squeeze_apply(delta, deltap, s, x);
}

template <class K>
Homotopy<HybridPoint<K>> squeeze_homotopy(double delta, double deltap) {
    if (!(deltap > 0.0 && deltap <= delta && delta <= 1.0))
        throw DomainError("BadDeltas", "need 0 < delta' <= delta <= 1");
    Homotopy<HybridPoint<K>> h;
    h.name = "R";
    h.lambda_compatible = true;
    h.domain = [delta](const HybridPoint<K>& x) { return lambda_of(x) <= delta + 1e-12; };
    h.target = [deltap](const HybridPoint<K>& x) { return lambda_of(x) <= deltap + 1e-12; };
    h.fixed = h.target;
    h.eval = [delta, deltap](double s, const HybridPoint<K>& x) -> HybridPoint<K> {
        if (s <= 0.0) return x;
        HybridPoint<K> m = materialize(x);
        if (!m.is_arch()) return x;
        double cap = delta * (1.0 - std::min(1.0, s)) + deltap * std::min(1.0, s);
        if (m.arch().t <= cap) return x;
        return make_arch<K>(m.arch().z, cap);
    };
    return h;
}

// -------------------------------------------------------------------------
// One-point-compactification retraction r_z. Lambda is preserved exactly;
// the only fixed trivially-valued points are the branch of T - z and the
// trivial norm, everything else slides along its segment toward eta_{0,1}.

template <class K>
HybridPoint<K> retraction_rz(const K& z, const HybridPoint<K>& x) {
    return rz_apply(field_traits<K>::embed(z), x);
}

template <class K>
Homotopy<HybridPoint<K>> rz_homotopy(const K& z) {
    std::complex<double> zc = field_traits<K>::embed(z);
    auto spec = DiscSpec<K>::finite(Polynomial<K>::linear_root(z), 1.0);
    Homotopy<HybridPoint<K>> h;
    h.name = "rz";
    h.lambda_compatible = true;
    h.target = [spec](const HybridPoint<K>& x) { return region_member(x, spec, RegionTag::D); };
    h.fixed = h.target;
    h.eval = [zc](double t, const HybridPoint<K>& x) -> HybridPoint<K> {
        if (t <= 0.0) return x;
        HybridPoint<K> m = materialize(x);
        if (m.is_arch()) {
            const auto& a = m.arch();
            double d = std::abs(a.z - zc);
            if (d <= a.t) return x;
            double f = (1.0 - t) + t * (a.t / d);
            return make_arch<K>(zc + f * (a.z - zc), a.t);
        }
        const auto& tp = m.triv();
        if (tp.r == 1) return x;
        if (tp.r < 1 && tp.p.degree() == 1 &&
            std::abs(field_traits<K>::embed(K(0) - tp.p.c[0]) - zc) <= 1e-12)
            return x;
        Rational rt = tp.r + Rational(std::min(1.0, t)) * (Rational(1) - tp.r);
        return make_triv<K>(tp.p, rt, tp.irr);
    };
    return h;
}

// -------------------------------------------------------------------------
// Schedule of discs for the global retraction. Stage n covers the disc of the
// n-th enumerated irreducible at radius e_n; the e-sequence is decreasing,
// capped by 2^{-n-2} and by every threshold seen so far, then shrunk further
// until the scheduled discs (and the disc at infinity) are pairwise disjoint.

template <class K>
struct ScheduleStage {
    Polynomial<K> p;
    IrrFlag irr = IrrFlag::Certified;
    double threshold = 1.0;  // tracking threshold of p
    double e = 0.25;         // scheduled radius
};

template <class K>
struct Schedule {
    int depth = 0;
    double e0 = 0.25;  // stage-0 cap (disc at infinity)
    std::vector<ScheduleStage<K>> stages;
};

// Worst-case distance of a point of the Archimedean slice of D(p, m) from the
// nearest root of p: |p(w)| >= dist * (sep/2)^{deg-1} on the safe neighborhood,
// so dist <= m / (sep/2)^{deg-1} whenever that bound stays inside it.
template <class K>
double disc_reach(const Polynomial<K>& p, double m) {
    if (p.degree() == 1) return m;
    auto rs = roots_numeric(p);
    double sep = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = i + 1; j < rs.size(); ++j) sep = std::min(sep, std::abs(rs[i] - rs[j]));
    double reach = m / std::pow(sep / 2.0, p.degree() - 1);
    return reach <= sep / 2.0 ? reach : std::numeric_limits<double>::infinity();
}

template <class K>
Schedule<K> make_schedule(int depth = 8) {
    if (depth < 1) throw DomainError("BadDepth", "schedule depth must be >= 1");
    Schedule<K> s;
    s.depth = depth;
    s.e0 = 0.25;
    auto irr = enumerate_irreducibles<K>(static_cast<size_t>(depth));

    double prev = s.e0, min_thr = 1.0;
    for (int n = 1; n <= depth; ++n) {
        auto& [p, fl] = irr[static_cast<size_t>(n - 1)];
        double thr = delta_threshold(p);
        min_thr = std::min(min_thr, thr);
        double e = std::min({prev, std::pow(2.0, -(n + 2)), min_thr});
        s.stages.push_back(ScheduleStage<K>{p, fl, thr, e});
        prev = e;
    }

    std::vector<std::vector<std::complex<double>>> roots;
    for (const auto& st : s.stages) roots.push_back(roots_numeric(st.p));

    for (int round = 0;; ++round) {
        if (round >= 60)
            throw NumericError("ScheduleCollapse", "disc disjointness not reached by halving");
        bool ok = true;
        for (size_t i = 0; i < s.stages.size(); ++i) {
            for (size_t j = i + 1; j < s.stages.size(); ++j) {
                double need = std::numeric_limits<double>::infinity();
                for (const auto& a : roots[i])
                    for (const auto& b : roots[j]) need = std::min(need, std::abs(a - b));
                if (disc_reach(s.stages[i].p, s.stages[i].e) +
                        disc_reach(s.stages[j].p, s.stages[j].e) >=
                    need) {
                    s.stages[j].e *= 0.5;
                    ok = false;
                }
            }
            // barrier against the disc at infinity: |z| t stays below 1
            double far = 0.0;
            for (const auto& a : roots[i]) far = std::max(far, std::abs(a));
            double reach = disc_reach(s.stages[i].p, s.stages[i].e);
            if (!((far + reach) * s.stages[i].e < 1.0)) {
                s.stages[i].e *= 0.5;
                ok = false;
            }
        }
        if (ok) break;
    }

    double run = s.e0;
    for (auto& st : s.stages) {
        st.e = std::min(st.e, run);
        run = st.e;
    }
    return s;
}

// -------------------------------------------------------------------------
// Global retraction onto the trivially-valued fibre: alternate fibre squeezes
// with per-disc stages along the schedule, spliced on dyadic windows.

template <class K>
struct GlobalSdr {
    Schedule<K> sched;
    std::vector<Homotopy<HybridPoint<K>>> stages;  // running order, infinity stage first
    Homotopy<HybridPoint<K>> full;

    // truncation H_n: only the first n+1 stages, full time
    Homotopy<HybridPoint<K>> truncated_chain(int n) const {
        if (n < 0 || n >= static_cast<int>(stages.size()))
            throw DomainError("BadDepth", "truncation index out of range");
        std::vector<Homotopy<HybridPoint<K>>> head(stages.begin(), stages.begin() + n + 1);
        return compose_chain(head);
    }
};

template <class K>
GlobalSdr<K> make_global_sdr(int depth = 8) {
    GlobalSdr<K> g;
    g.sched = make_schedule<K>(depth);

    auto k0 = homotopy_compose(infinity_disc_homotopy<K>(g.sched.e0),
                               squeeze_homotopy<K>(1.0, g.sched.e0));
    k0.name = "K0";
    k0.domain = nullptr;
    g.stages.push_back(std::move(k0));

    double prev = g.sched.e0;
    for (const auto& st : g.sched.stages) {
        auto kn = homotopy_compose(gn_homotopy(st.p, st.e), squeeze_homotopy<K>(prev, st.e));
        kn.name = "K[" + std::to_string(&st - g.sched.stages.data() + 1) + "]";
        kn.domain = nullptr;
        g.stages.push_back(std::move(kn));
        prev = st.e;
    }

    g.full = compose_chain(g.stages);
    g.full.name = "H";
    g.full.domain = nullptr;
    auto trivial = [](const HybridPoint<K>& x) { return !materialize(x).is_arch(); };
    g.full.target = trivial;
    g.full.fixed = trivial;
    g.full.lambda_compatible = true;
    return g;
}

template <class K>
struct GlobalResult {
    HybridPoint<K> pt;
    bool truncated = false;
};

// Terminal-time results report whether the trajectory was still Archimedean
// at the scheduled depth; such points fall back to the trivial norm.
template <class K>
GlobalResult<K> global_sdr(const GlobalSdr<K>& g, double s, const HybridPoint<K>& x) {
    if (s < 1.0) return {g.full.eval(std::max(0.0, s), x), false};
    HybridPoint<K> y = materialize(g.full.eval(1.0, x));
    if (!y.is_arch()) return {y, false};
    return {trivial_norm_point<K>(), true};
}

// -------------------------------------------------------------------------
// Descent along complex conjugation: a homotopy over the Gaussian field that
// commutes with conjugation on probes passes to the rational line.

inline Homotopy<PointQ> real_field_descend(const Homotopy<PointQi>& H, unsigned seed = 71) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    while (checked < 200) {
        double t = unit(rng);
        PointQi x = sample_hybrid_point<GaussRational>(rng);
        if (H.domain && !H.domain(x)) continue;
        ++checked;
        PointQi a = conjugate(H.eval(t, conjugate(x)));
        PointQi b = H.eval(t, x);
        if (probe_distance(a, b) > 1e-9)
            throw DomainError("NotEquivariant", "homotopy does not commute with conjugation");
    }
    Homotopy<PointQ> out;
    out.name = H.name + "/conj";
    out.lambda_compatible = H.lambda_compatible;
    out.eval = [H](double t, const PointQ& x) {
        return restrict_scalars(H.eval(t, extend_scalars(x)));
    };
    if (H.domain)
        out.domain = [d = H.domain](const PointQ& x) { return d(extend_scalars(x)); };
    if (H.target)
        out.target = [tg = H.target](const PointQ& x) { return tg(extend_scalars(x)); };
    if (H.fixed)
        out.fixed = [fx = H.fixed](const PointQ& x) { return fx(extend_scalars(x)); };
    return out;
}

}  // namespace hyb
