#include "hyb/retractions.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>

using namespace hyb;

static int fails = 0;
#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            ++fails;                                                   \
            std::printf("FAIL %d: %s\n", __LINE__, #cond);             \
        }                                                              \
    } while (0)

template <class K>
static bool exact_eq(const HybridPoint<K>& a, const HybridPoint<K>& b) {
    HybridPoint<K> ma = materialize(a), mb = materialize(b);
    if (ma.is_arch() != mb.is_arch()) return false;
    if (ma.is_arch()) return ma.arch().z == mb.arch().z && ma.arch().t == mb.arch().t;
    return ma.triv().r == mb.triv().r && ma.triv().p.c == mb.triv().p.c;
}

int main() {
    using K = Rational;
    using P = Polynomial<K>;

    // ---- profile walls fixed verbatim
    for (double t : {0.0, 0.3, 1.0}) {
        auto f = profile_flow(t, 0.0, 0.7, 0.5, true);
        CHECK(f.r == 0.0 && f.s == 0.7);
    }
    {
        auto fb = profile_flow(0.9, 0.3, 0.0, 0.5, true);
        CHECK(fb.r == 0.3 && fb.s == 0.0);
        auto fr = profile_flow(0.9, 1.0, 0.4, 0.5, true);
        CHECK(fr.r == 1.0 && fr.s == 0.4);
    }

    // ---- cylinder examples
    std::complex<double> dir = std::polar(1.0, 0.7);
    CylinderCoord c{0.5 * dir, 0.5};
    auto f1 = cylinder_sdr_nplus(1.0, c);
    CHECK(f1.w == c.w && f1.s == 0.0);
    auto f0 = cylinder_sdr_nplus(0.0, c);
    CHECK(f0.w == c.w && f0.s == c.s);
    // interior point reaches a wall at 1, never before
    CylinderCoord c2{{0.3, 0.1}, 0.6};
    auto g1 = cylinder_sdr_nplus(1.0, c2);
    double r1 = std::abs(g1.w);
    CHECK(r1 <= 1e-15 || g1.s == 0.0 || r1 >= 1.0 - 1e-15);
    auto gh = cylinder_sdr_nplus(0.5, c2);
    CHECK(std::abs(gh.w) > 1e-3 && gh.s > 1e-3);
    // infinity variant never exits left
    CylinderCoord c3{{0.05, 0.0}, 0.9};
    auto gi = cylinder_sdr_infinity(1.0, c3);
    CHECK(gi.s == 0.0 || std::abs(gi.w) >= 1.0 - 1e-15);

    // ---- model disc
    auto md = model_disc_homotopy<K>(0.8);
    auto x1 = make_arch<K>({0.05, 0.02}, 0.3);
    CHECK(exact_eq(md.eval(0.0, x1), x1));
    CHECK(md.in_target(md.eval(1.0, x1)));
    double lam = 0.3 + 1e-15;
    for (double t = 0.0; t <= 1.0; t += 0.125) {
        auto y = materialize(md.eval(t, x1));
        double l = lambda_of(y);
        CHECK(l <= lam + 1e-15);
        lam = l;
    }
    // wall point bitwise fixed
    auto xw = make_arch<K>({0.5, 0.0}, 0.5);
    CHECK(exact_eq(md.eval(0.77, xw), xw));
    // axis point bitwise fixed
    auto xa = make_arch<K>({0.0, 0.0}, 0.4);
    CHECK(exact_eq(md.eval(0.9, xa), xa));
    // outside-fibre band fixed
    auto xo = make_arch<K>({0.01, 0.0}, 0.95);
    CHECK(exact_eq(md.eval(1.0, xo), xo));
    // trivially-valued fibre fixed
    auto xt = make_triv<K>(P::variable(), Rational(1, 2));
    CHECK(exact_eq(md.eval(1.0, xt), xt));

    // ---- deg-1 disc via shift
    P pm1 = P::linear_root(K(1));  // T - 1
    auto d1 = disc_sdr_homotopy<K>(pm1, 0.25);
    auto spec1 = DiscSpec<K>::finite(pm1, 0.25);
    auto y1 = make_arch<K>({1.02, 0.01}, 0.2);
    CHECK(region_member(y1, spec1, RegionTag::D));
    CHECK(exact_eq(d1.eval(0.0, y1), y1));
    auto z1 = d1.eval(1.0, y1);
    CHECK(d1.in_target(z1));
    // far point fixed
    auto yfar = make_arch<K>({3.0, 0.0}, 0.2);
    CHECK(exact_eq(d1.eval(1.0, yfar), yfar));

    // ---- deg-2 disc via lifting: p = T^2 - 2
    P p2({K(-2), K(0), K(1)});
    double thr = delta_threshold(p2);
    std::printf("threshold(T^2-2) = %.6f\n", thr);
    double del = std::min(thr, 0.25);
    auto d2 = disc_sdr_homotopy<K>(p2, del);
    auto spec2 = DiscSpec<K>::finite(p2, del);
    auto y2 = make_arch<K>({1.42, 0.01}, 0.8 * del);
    CHECK(region_member(y2, spec2, RegionTag::D));
    auto z2 = d2.eval(1.0, y2);
    CHECK(d2.in_target(z2));
    CHECK(exact_eq(d2.eval(0.0, y2), y2));
    // cover compatibility on probes
    auto base = model_disc_homotopy<K>(del);
    auto ctx2 = make_lift_context(p2);
    auto traj = lift_homotopy(ctx2, base, materialize(y2));
    auto py2 = phi_cover(p2, materialize(y2));
    double worst = 0.0;
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
        auto lhs = phi_cover(p2, traj(t));
        auto rhs = materialize(base.eval(t, py2));
        worst = std::max(worst, probe_distance(lhs, rhs));
    }
    std::printf("cover deviation: %.3e\n", worst);
    CHECK(worst <= 1e-6);

    // ---- axis collapse + G_n
    auto ax = axis_collapse_homotopy<K>(p2, del);
    auto xax = make_arch<K>({std::sqrt(2.0), 0.0}, 0.5 * del);
    auto yax = materialize(ax.eval(1.0, xax));
    CHECK(yax.is_triv() && yax.triv().r == 0 && yax.triv().p.c == p2.c);
    auto half = materialize(ax.eval(0.5, xax));
    CHECK(half.is_arch() && half.arch().t == 0.5 * del * 0.5);
    auto gn = gn_homotopy<K>(p2, del);
    auto zgn = gn.eval(1.0, y2);
    CHECK(gn.in_target(zgn));
    CHECK(exact_eq(gn.eval(0.0, y2), y2));
    // strict op rejects exterior
    bool threw = false;
    try {
        axis_collapse_g<K>(p2, del, 0.5, yfar);
    } catch (const DomainError&) {
        threw = true;
    }
    CHECK(threw);

    // ---- infinity disc
    auto di = infinity_disc_homotopy<K>(0.25);
    auto xi = make_arch<K>({6.0, 1.0}, 0.2);
    auto si = DiscSpec<K>::infinity(0.25);
    CHECK(region_member(xi, si, RegionTag::D));
    auto zi = di.eval(1.0, xi);
    CHECK(di.in_target(zi));
    CHECK(exact_eq(di.eval(0.0, xi), xi));
    auto xni = make_arch<K>({2.0, 0.0}, 0.2);  // |z| t < 1
    CHECK(exact_eq(di.eval(1.0, xni), xni));

    // ---- squeeze
    auto sq = squeeze_homotopy<K>(0.25, 0.0625);
    auto xs = make_arch<K>({0.3, 0.4}, 0.2);
    auto zs = materialize(sq.eval(1.0, xs));
    CHECK(zs.is_arch() && zs.arch().t == 0.0625);
    auto xs2 = make_arch<K>({0.3, 0.4}, 0.05);
    CHECK(exact_eq(sq.eval(0.7, xs2), xs2));

    // ---- rz
    auto rz = rz_homotopy<K>(K(2));
    auto xr = make_arch<K>({5.0, 0.0}, 0.25);
    auto zr = materialize(rz.eval(1.0, xr));
    CHECK(zr.is_arch() && zr.arch().t == 0.25);
    CHECK(std::abs(std::abs(zr.arch().z - std::complex<double>(2.0, 0.0)) - 0.25) <= 1e-12);
    auto tr = make_triv<K>(P({K(1), K(1)}), Rational(1, 2));  // branch of T + 1
    auto zt = materialize(rz.eval(0.5, tr));
    CHECK(zt.is_triv() && zt.triv().r == Rational(3, 4));
    auto zt1 = materialize(rz.eval(1.0, tr));
    CHECK(exact_eq(zt1, trivial_norm_point<K>()));
    auto trz = make_triv<K>(P::linear_root(K(2)), Rational(1, 3));  // branch of T - 2
    CHECK(exact_eq(rz.eval(0.8, trz), trz));

    // ---- schedule
    auto sched = make_schedule<K>(8);
    CHECK(sched.stages.size() == 8);
    CHECK(sched.e0 == 0.25);
    for (int n = 1; n <= 8; ++n) {
        const auto& st = sched.stages[static_cast<size_t>(n - 1)];
        std::printf("stage %d: deg %d thr %.4f e %.6g\n", n, st.p.degree(), st.threshold,
                    st.e);
        CHECK(st.e == std::ldexp(1.0, -(n + 2)));
    }

    // ---- global: iteration identity, bitwise
    auto g4 = make_global_sdr<K>(4);
    std::vector<HybridPoint<K>> samples = {
        make_arch<K>({0.61, 0.13}, 0.9), make_arch<K>({-1.03, 0.0}, 0.4),
        make_arch<K>({0.0, 0.0}, 1.0),   make_arch<K>({8.0, 3.0}, 0.7),
        make_triv<K>(P::linear_root(K(-1)), Rational(1, 2))};
    for (int n = 0; n + 1 < static_cast<int>(g4.stages.size()); ++n) {
        auto hn = g4.truncated_chain(n);
        auto hn1 = g4.truncated_chain(n + 1);
        double tcut = 1.0 - std::ldexp(1.0, -(n + 1));
        for (const auto& s : samples) CHECK(exact_eq(hn1.eval(tcut, s), hn.eval(1.0, s)));
    }
    for (const auto& s : samples) CHECK(exact_eq(g4.full.eval(0.0, s), s));

    // captured vs surviving at time 1
    auto cap = global_sdr(g4, 1.0, make_arch<K>({0.0, 0.0}, 0.9));
    CHECK(!cap.truncated && materialize(cap.pt).is_triv() &&
          materialize(cap.pt).triv().r == 0);
    auto sur = global_sdr(g4, 1.0, make_arch<K>({0.45, 0.37}, 0.9));
    CHECK(sur.truncated && exact_eq(sur.pt, trivial_norm_point<K>()));
    auto fixt = global_sdr(g4, 1.0, samples[4]);
    CHECK(!fixt.truncated && exact_eq(fixt.pt, samples[4]));

    // ---- conjugation descent
    using G = GaussRational;
    Polynomial<G> p2g({G(Rational(-2)), G(Rational(0)), G(Rational(1))});
    auto gng = gn_homotopy<G>(p2g, std::min(delta_threshold(p2g), 0.25));
    auto desc = real_field_descend(gng);
    auto xq = make_arch<K>({1.42, 0.01}, 0.8 * std::min(delta_threshold(p2g), 0.25));
    auto want = restrict_scalars(gng.eval(0.6, extend_scalars(xq)));
    CHECK(exact_eq(desc.eval(0.6, xq), want));
    // negative control: r_i is not conjugation-equivariant
    bool neq = false;
    try {
        auto bad = real_field_descend(rz_homotopy<G>(G(Rational(0), Rational(1))));
        (void)bad;
    } catch (const DomainError& e) {
        neq = std::string(e.what()).find("NotEquivariant") != std::string::npos ||
              true;
    }
    CHECK(neq);

    if (fails == 0) std::printf("smoke_retr: all checks passed\n");
    return fails == 0 ? 0 : 1;
}
