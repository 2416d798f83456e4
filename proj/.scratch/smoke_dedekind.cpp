#include "hyb/dedekind.hpp"

#include <cassert>
#include <cstdio>
#include <random>

using namespace hyb;

static int checks = 0;
#define CHECK(cond, msg)                                        \
    do {                                                        \
        ++checks;                                               \
        if (!(cond)) {                                          \
            std::printf("FAIL %s (line %d)\n", msg, __LINE__);  \
            return 1;                                           \
        }                                                       \
    } while (0)

static bool same_base(const BasePoint& a, const BasePoint& b) {
    if (a.index() != b.index()) return false;
    if (const auto* pa = std::get_if<PrimeBranch>(&a)) {
        const auto& pb = std::get<PrimeBranch>(b);
        return pa->p == pb.p && pa->c == pb.c;
    }
    if (const auto* aa = std::get_if<ArchBranch>(&a)) {
        const auto& ab = std::get<ArchBranch>(b);
        return aa->sigma == ab.sigma && aa->rho == ab.rho;
    }
    return true;
}

int main() {
    // base_eval closed forms
    {
        BasePoint z = base_prime(3, 0.25);
        CHECK(base_eval(Integer(9), z).q == Rational(1, 16), "p^k -> c^k");
        CHECK(base_eval(Integer(5), z).q == Rational(1), "unit at p");
        CHECK(base_eval(Integer(0), z).q == Rational(0), "zero element");
        BasePoint triv = base_prime(7, 1.0);
        CHECK(std::holds_alternative<TrivialBase>(triv), "c=1 canonicalizes");
        CHECK(base_eval(Integer(42), triv).q == Rational(1), "trivial norm");
        BasePoint res = base_prime(5, 0.0);
        CHECK(base_eval(Integer(5), res).q == Rational(0), "residue kills p");
        CHECK(base_eval(Integer(7), res).q == Rational(1), "residue unit");
        BasePoint ar = base_arch(0, 0.5);
        CHECK(norm_close_rel(base_eval(Integer(-9), ar).v, 3.0, 1e-15), "arch |.|^rho");
        CHECK(base_eval(Integer(4), base_arch(0, 1.0)).q == Rational(4), "arch rho=1 exact");
    }

    // multiplicativity: exact on the trivially-normed spectrum, 1e-12 on arch
    {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<long> el(-400, 400);
        for (int i = 0; i < 500; ++i) {
            BasePoint z = sample_base_point(rng, false);
            Integer a(el(rng)), b(el(rng));
            NormValue lhs = base_eval(a * b, z);
            NormValue rhs = base_eval(a, z) * base_eval(b, z);
            CHECK(lhs.exact && rhs.exact && lhs.q == rhs.q, "triv-spectrum multiplicativity");
        }
        for (int i = 0; i < 200; ++i) {
            double rho = (i % 4 == 0) ? 1.0 : 0.1 + 0.8 * (i / 200.0);
            BasePoint z = base_arch(0, rho);
            Integer a(el(rng)), b(el(rng));
            if (a == 0 || b == 0) continue;
            NormValue lhs = base_eval(a * b, z);
            NormValue rhs = base_eval(a, z) * base_eval(b, z);
            if (rho == 1.0)
                CHECK(lhs.q == rhs.q, "arch rho=1 exact multiplicativity");
            else
                CHECK(norm_close_rel(lhs.v, rhs.v, 1e-12), "arch multiplicativity 1e-12");
        }
    }

    // ht
    {
        CHECK(ht(base_trivial()).q == Rational(1), "ht trivial");
        CHECK(ht(base_prime(3, 0.25)).v == 0.25, "ht = c");
        CHECK(ht(base_prime(5, 0.0)).q == Rational(0), "ht residue");
        bool threw = false;
        try {
            ht(base_arch(0, 0.5));
        } catch (const DomainError& e) {
            threw = std::string(e.code) == "ArchNotAllowed";
        }
        CHECK(threw, "ht rejects arch");
    }

    // r_t closed form and fixed-point law
    {
        BasePoint z = base_prime(3, 0.25);
        CHECK(same_base(r_t(z, 0.0), z), "r_0 identity");
        CHECK(same_base(r_t(z, 0.25), z), "fixed at ht = t");
        BasePoint m = r_t(z, 0.5);
        const auto* pm = std::get_if<PrimeBranch>(&m);
        CHECK(pm && pm->p == 3 && pm->c == 0.5, "worked example (3,0.25)@0.5 -> (3,0.5)");
        CHECK(std::holds_alternative<TrivialBase>(r_t(base_prime(5, 0.0), 0.125)),
              "residue jumps to trivial");
        // exact iff on the rational grid
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j) {
                double c = i / 100.0, t = j / 100.0;
                BasePoint zz = base_prime(2, c);
                bool fixed = same_base(r_t(zz, t), zz);
                bool want = ht(zz).v >= t;
                if (fixed != want) {
                    std::printf("grid mismatch c=%g t=%g\n", c, t);
                    return 1;
                }
            }
        ++checks;
        bool threw = false;
        try {
            r_t(base_arch(0, 1.0), 0.5);
        } catch (const DomainError& e) {
            threw = std::string(e.code) == "ArchNotAllowed";
        }
        CHECK(threw, "r_t rejects arch");
    }

    // r homotopy: height squeeze realization
    {
        auto H = r_homotopy();
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            BasePoint z = sample_base_point(rng, false);
            CHECK(same_base(H(0.0, z), z), "r homotopy identity at 0");
            CHECK(std::holds_alternative<TrivialBase>(H(1.0, z)), "r homotopy target at 1");
            CHECK(same_base(H(0.37, base_trivial()), base_trivial()), "trivial fixed");
            // monotone stopping on a grid
            bool entered = false;
            for (int k = 0; k <= 20; ++k) {
                BasePoint y = H(k / 20.0, z);
                bool in = std::holds_alternative<TrivialBase>(y);
                if (entered && !in) {
                    std::printf("stopping violated\n");
                    return 1;
                }
                entered = entered || in;
            }
        }
        BasePoint w = H(0.5, base_prime(3, 0.25));
        const auto* pw = std::get_if<PrimeBranch>(&w);
        CHECK(pw && pw->c == 0.5, "realizations agree on the worked example");
    }

    // cover location + ideals + embeddings
    {
        CHECK(spectrum_cover_locate(base_trivial()).tag == CoverLocation::Tag::TrivialOverlap,
              "trivial overlap");
        CHECK(spectrum_cover_locate(base_arch(1, 0.5)).tag == CoverLocation::Tag::Arch,
              "arch tag");
        CHECK(spectrum_cover_locate(base_arch(1, 0.5)).sigma == 1, "arch sigma");
        CHECK(spectrum_cover_locate(base_prime(5, 0.3)).tag == CoverLocation::Tag::NonArch,
              "nonarch tag");
        auto zi = prime_ideals(Ring::Z, 20);
        CHECK(zi.size() == 8 && zi[0].p == 2 && zi[7].p == 19, "Z primes below 20");
        auto gi = prime_ideals(Ring::Zi, 14);
        // 2 ramified, 3 inert, 5 split, 7 inert, 11 inert, 13 split
        CHECK(gi.size() == 8, "Zi ideal count below 14");
        CHECK(gi[0].re == 1 && gi[0].im == 1, "(1+i) over 2");
        CHECK(gi[2].re == 2 && gi[2].im == 1 && gi[3].re == 1 && gi[3].im == 2, "5 splits");
        CHECK(gi[6].re == 3 && gi[6].im == 2 && gi[7].re == 2 && gi[7].im == 3, "13 splits");
        EmbeddingSpec ez = EmbeddingSpec::integers();
        CHECK(ez.house(Rational(-3)) == 3.0, "house over Z");
        EmbeddingSpec egi = EmbeddingSpec::gauss_integers();
        GaussRational onei{Rational(1), Rational(1)};
        CHECK(norm_close_rel(egi.house(onei), std::sqrt(2.0), 1e-15), "house over Z[i]");
        CHECK(norm_close_rel(egi.house(onei * onei), egi.house(onei) * egi.house(onei), 1e-15),
              "house multiplicative");
    }

    // trivial-fiber representations agree across the two fiber models
    {
        PointQ e1 = make_triv(Polynomial<Rational>::linear_root(Rational(1)), Rational(1, 2));
        IntLinePoint a = int_line_hybrid(e1);
        IntLinePoint b = int_line_gauss(
            3, ToricPoint(make_gauss(0.0, {Rational(1)}, {0.5})));
        CHECK(int_line_distance(a, b) <= 1e-14, "eta_{T-1,1/2} = Gauss(0,1,1/2)");
        CHECK(std::holds_alternative<TrivialBase>(base_of(a)), "hybrid triv base");
        CHECK(std::holds_alternative<TrivialBase>(base_of(b)), "gauss rho=0 base");
        BasePoint pb = base_of(int_line_gauss(
            5, ToricPoint(make_gauss(0.25, {Rational(0)}, {0.5}))));
        const auto* pp = std::get_if<PrimeBranch>(&pb);
        CHECK(pp && pp->p == 5 && pp->c == 0.75, "gauge c = 1 - rho");
        bool threw = false;
        try {
            int_line_gauss(3, ToricPoint(make_gauss(0.0, {Rational(0), Rational(0)}, {1.0, 1.0})));
        } catch (const UnsupportedError&) {
            threw = true;
        }
        CHECK(threw, "dimension gate");
    }

    // trivial-fiber q: closed form vs expansion route
    {
        auto Q = fiber_q_stage();
        std::vector<Polynomial<Rational>> branches = {
            Polynomial<Rational>::variable(),
            Polynomial<Rational>::linear_root(Rational(1)),
            Polynomial<Rational>::linear_root(Rational(-2)),
            Polynomial<Rational>(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)}),
            Polynomial<Rational>(
                std::vector<Rational>{Rational(-1), Rational(-1), Rational(0), Rational(1)})};
        static const Rational rads[] = {Rational(0), Rational(1, 4), Rational(1, 2),
                                        Rational(3, 4)};
        static const double times[] = {0.0, 0.3, 0.5, 0.9, 1.0};
        for (const auto& p : branches)
            for (const auto& r : rads)
                for (double t : times) {
                    PointQ x = make_triv(p, r);
                    IntLinePoint y = Q.eval(t, int_line_hybrid(x));
                    for (const auto& f : int_line_probes()) {
                        double lhs = int_line_eval(y, f).v;
                        double rhs = trivial_fiber_q_value(t, x, f);
                        if (!norm_close_rel(lhs, rhs, 1e-12)) {
                            std::printf("q route mismatch t=%g r=%g lhs=%.17g rhs=%.17g\n", t,
                                        to_double(r), lhs, rhs);
                            return 1;
                        }
                    }
                }
        ++checks;
        // endpoint lands on the coordinate branch
        PointQ far = make_triv(branches[3], Rational(1, 4));
        IntLinePoint end = Q.eval(1.0, int_line_hybrid(far));
        const auto& ep = std::get<PointQ>(end);
        CHECK(ep.is_triv() && ep.triv().p == Polynomial<Rational>::variable() &&
                  ep.triv().r == 1,
              "q(1) canonicalizes to the trivial norm");
    }

    // assembled SDR
    {
        IntegerLine L = make_integer_line_sdr(4);
        std::mt19937_64 rng(23);
        for (int i = 0; i < 60; ++i) {
            IntLinePoint x = sample_int_line_point(rng);
            CHECK(int_line_distance(assembled_sdr(L, 0.0, x), x) <= 1e-9, "identity at 0");
            IntLinePoint y = assembled_sdr(L, 1.0, x);
            CHECK(int_line_skeleton(y), "target at 1");
            CHECK(std::holds_alternative<TrivialBase>(base_of(y)), "trivial base at 1");
            // splice continuity at s = 1/2
            double d = int_line_distance(assembled_sdr(L, 0.5, x),
                                         assembled_sdr(L, 0.5 + 1e-12, x));
            CHECK(d <= 1e-9, "splice agreement");
        }
        // prime-branch fibers are untouched during stage 1
        IntLinePoint g = int_line_gauss(
            3, ToricPoint(make_gauss(0.75, {Rational(2)}, {0.25})));
        for (double s : {0.1, 0.3, 0.5})
            CHECK(int_line_distance(assembled_sdr(L, s, g), g) == 0.0, "stage 1 fixes primes");
        // fixed set never moves
        std::vector<IntLinePoint> fix = {
            int_line_hybrid(make_triv(Polynomial<Rational>::variable(), Rational(1, 2))),
            int_line_hybrid(trivial_norm_point<Rational>()),
            int_line_hybrid(make_triv(Polynomial<Rational>::variable(), Rational(2))),
            int_line_gauss(2, ToricPoint(make_gauss(0.0, {Rational(0)}, {0.25}))),
            int_line_gauss(5, ToricPoint(make_gauss(0.0, {Rational(0)}, {2.0})))};
        for (const auto& x : fix)
            for (int k = 0; k <= 16; ++k)
                CHECK(int_line_distance(assembled_sdr(L, k / 16.0, x), x) <= 1e-8,
                      "fixed set");
        // monotone stopping
        for (int i = 0; i < 30; ++i) {
            IntLinePoint x = sample_int_line_point(rng);
            bool entered = false;
            int kin = -1;
            IntLinePoint at = x;
            for (int k = 0; k <= 16; ++k) {
                IntLinePoint y = assembled_sdr(L, k / 16.0, x);
                if (entered && int_line_distance(y, at) > 1e-8) {
                    std::printf("stopping violated i=%d entered_k=%d k=%d dist=%.3g\n", i, kin,
                                k, int_line_distance(y, at));
                    auto describe = [](const IntLinePoint& z) {
                        if (const auto* h = std::get_if<PointQ>(&z)) {
                            PointQ m = materialize(*h);
                            if (m.is_arch())
                                std::printf("  arch z=(%g,%g) t=%g\n", m.arch().z.real(),
                                            m.arch().z.imag(), m.arch().t);
                            else
                                std::printf("  triv deg=%d r=%g\n", m.triv().p.degree(),
                                            to_double(m.triv().r));
                        } else {
                            const auto& g = std::get<GaussFiber>(z);
                            std::printf("  gauss p=%ld rho=%g derived=%d\n", g.spec.p,
                                        rho_of(g.pt), !std::holds_alternative<GaussPoint>(g.pt));
                        }
                    };
                    describe(x);
                    describe(at);
                    describe(y);
                    return 1;
                }
                ++checks;
                if (!entered && int_line_skeleton(y)) {
                    entered = true;
                    kin = k;
                    at = y;
                }
            }
        }
        // ev-type arch point: spec worked example shape
        IntLinePoint ev = int_line_hybrid(make_arch<Rational>({0.45, 0.0}, 0.8));
        IntLinePoint ev1 = assembled_sdr(L, 1.0, ev);
        CHECK(std::holds_alternative<TrivialBase>(base_of(ev1)), "ev lands trivially based");
    }

    std::printf("smoke_dedekind: %d checks passed\n", checks);
    return 0;
}
