#include "hyb/oracles.hpp"

#include <cstdio>
#include <random>

#include "hyb/core_points.hpp"
#include "hyb/discs.hpp"
#include "hyb/irreducibles.hpp"
#include "hyb/probes.hpp"
#include "hyb/retractions.hpp"

using namespace hyb;
using Poly = Polynomial<Rational>;

static int checks = 0, fails = 0;
#define CHECK(cond)                                              \
    do {                                                         \
        ++checks;                                                \
        if (!(cond)) {                                           \
            ++fails;                                             \
            std::printf("FAIL %s (line %d)\n", #cond, __LINE__); \
        }                                                        \
    } while (0)

static bool rel_close(double a, double b, double tol) {
    double den = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / den <= tol;
}

int main() {
    // --- taylor_norm_oracle pinned examples ---
    Poly T = Poly::variable();
    Poly T2m2({Rational(-2), Rational(0), Rational(1)});
    CHECK(rel_close(taylor_norm_oracle(T2m2, T2m2, 0.5).v, 0.5, 1e-8));
    CHECK(taylor_norm_oracle(Poly::constant(Rational(3)), T2m2, 0.7).v == 1.0);
    {
        Poly g({Rational(5), Rational(1)});  // g(sqrt 2) != 0
        CHECK(taylor_norm_oracle(T2m2 * g, T2m2, 0.0).v == 0.0);
        CHECK(rel_close(taylor_norm_oracle(T2m2 * g, T2m2, 0.3).v, 0.3, 1e-8));
    }
    CHECK(rel_close(taylor_norm_oracle(T * T * T, T, 2.0).v, 8.0, 1e-8));
    CHECK(rel_close(taylor_norm_oracle(T * T, T, 0.5).v, 0.25, 1e-8));
    {
        // squarefree reducible p: the oracle must take the max over the roots
        Poly p = T * Poly({Rational(-1), Rational(1)});  // T(T-1)
        CHECK(rel_close(taylor_norm_oracle(T, p, 0.3).v, 1.0, 1e-8));  // mult(p, T) = 0
        CHECK(rel_close(taylor_norm_oracle(p, p, 0.3).v, 0.3, 1e-8));
        CHECK(rel_close(taylor_norm_oracle(p * p, p, 0.3).v, 0.09, 1e-8));
    }

    // --- closed form vs oracle, criterion-1 shaped mini run ---
    {
        auto irr = enumerate_irreducibles<Rational>(12);
        std::mt19937_64 rng(4242);
        std::uniform_int_distribution<size_t> pick(0, irr.size() - 1);
        std::uniform_int_distribution<int> coin(0, 1), pw(0, 2), cf(-4, 4);
        const double radii[4] = {0.0, 0.3, 1.0, 2.0};
        const Rational rat_radii[4] = {Rational(0), Rational(3, 10), Rational(1), Rational(2)};
        int done = 0;
        for (int trial = 0; done < 150 && trial < 3000; ++trial) {
            Poly p = irr[pick(rng)].first;
            if (coin(rng)) {
                Poly q = irr[pick(rng)].first;
                if (q.degree() + p.degree() <= 4 && q.c != p.c) p = p * q;
            }
            if (p.degree() > 4 || !is_squarefree(p)) continue;
            Poly f = Poly::constant(Rational(1));
            for (int j = 0; j < 2; ++j) {
                Poly q = irr[pick(rng)].first;
                for (int e = 0; e < pw(rng) && f.degree() + q.degree() <= 6; ++e) f = f * q;
            }
            std::vector<Rational> rc(3);
            for (auto& a : rc) a = Rational(cf(rng));
            Poly rnd(std::move(rc));
            if (!rnd.is_zero()) f = f * rnd;
            if (f.is_zero() || f.degree() > 8) continue;
            double r = radii[static_cast<size_t>(trial) % 4];
            TrivPoint<Rational> pt{p, rat_radii[static_cast<size_t>(trial) % 4], IrrFlag::Assumed};
            double closed = eval_trivial(pt, f).v;
            double oracle = taylor_norm_oracle(f, p, r).v;
            CHECK(rel_close(closed, oracle, 1e-8));
            ++done;
        }
        CHECK(done == 150);
    }

    // --- sdr_axiom_suite: identity homotopy passes everything ---
    {
        Homotopy<PointQ> id;
        id.name = "id";
        id.eval = [](double, const PointQ& x) { return x; };
        id.target = [](const PointQ&) { return true; };
        id.fixed = id.target;
        AxiomSampler<PointQ> s;
        s.draw = [](std::mt19937_64& rng) { return sample_hybrid_point<Rational>(rng); };
        s.distance = [](const PointQ& a, const PointQ& b) { return probe_distance(a, b); };
        auto rep = sdr_axiom_suite(id, s, 40, 1e-9);
        CHECK(rep.pass());
        CHECK(rep.samples == 40 && rep.pairs == 40 * 17);
        CHECK(rep.first_counterexample.empty());
    }

    // --- cylinder SDR passes; broken homotopy fails fixed-set with witness ---
    {
        AxiomSampler<CylinderCoord> s;
        s.draw = [](std::mt19937_64& rng) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            double r = u(rng), th = 6.283185307 * u(rng);
            return CylinderCoord{std::polar(r, th), u(rng)};
        };
        s.distance = [](const CylinderCoord& a, const CylinderCoord& b) {
            return std::abs(a.w - b.w) + std::abs(a.s - b.s);
        };
        s.describe = [](const CylinderCoord& c) {
            std::ostringstream os;
            os << "(|w|=" << std::abs(c.w) << ", s=" << c.s << ")";
            return os.str();
        };
        auto rep = sdr_axiom_suite(cylinder_homotopy(), s, 200, 1e-8);
        if (!rep.pass()) std::printf("cyl: %s\n", rep.first_counterexample.c_str());
        CHECK(rep.pass());
        CHECK(rep.pairs >= 500);

        Homotopy<CylinderCoord> broken;
        broken.name = "broken";
        broken.eval = [](double t, const CylinderCoord& c) {
            if (t <= 0.0) return c;
            return CylinderCoord{c.w * (1.0 - 0.5 * t), c.s};
        };
        broken.target = [](const CylinderCoord&) { return true; };
        broken.fixed = broken.target;
        auto bad = sdr_axiom_suite(broken, s, 50, 1e-8);
        CHECK(bad.fixed_fail > 0);
        CHECK(!bad.first_counterexample.empty());
    }

    // --- q and J wrappers over a hybrid base ---
    {
        auto spec = BaseRingSpec::hybrid_field(3);
        AxiomSampler<ToricPoint> s;
        s.draw = [](std::mt19937_64& rng) {
            std::uniform_int_distribution<int> ci(0, 4), ri(0, 4), hi(1, 4);
            const Rational cs[5] = {Rational(0), Rational(1), Rational(-1), Rational(3), Rational(2)};
            const double rs[5] = {0.0, 0.25, 0.5, 1.0, 2.0};
            return ToricPoint(make_gauss(hi(rng) * 0.25, {cs[ci(rng)]}, {rs[ri(rng)]}));
        };
        s.distance = [spec](const ToricPoint& a, const ToricPoint& b) {
            return toric_probe_distance(spec, a, b);
        };
        auto rq = sdr_axiom_suite(q_homotopy(spec, 1), s, 150, 1e-8);
        if (!rq.pass()) std::printf("q: %s\n", rq.first_counterexample.c_str());
        CHECK(rq.pass());

        AxiomSampler<ToricPoint> sk;
        sk.draw = [](std::mt19937_64& rng) {
            std::uniform_int_distribution<int> ri(0, 4), hi(0, 4);
            const double rs[5] = {0.0, 0.25, 0.5, 1.0, 2.0};
            return ToricPoint(make_gauss(hi(rng) * 0.25, {Rational(0)}, {rs[ri(rng)]}));
        };
        sk.distance = s.distance;
        auto rj = sdr_axiom_suite(j_homotopy(spec, 1), sk, 150, 1e-8);
        if (!rj.pass()) std::printf("J: %s\n", rj.first_counterexample.c_str());
        CHECK(rj.pass());
    }

    // --- probe family determinism ---
    {
        auto a = make_probe_family(99), b = make_probe_family(99), c = make_probe_family(100);
        CHECK(a.polys.size() == b.polys.size() && a.polys.size() == 15);
        bool same = true;
        for (size_t i = 0; i < a.polys.size(); ++i) same = same && a.polys[i].c == b.polys[i].c;
        CHECK(same);
        bool diff = false;
        for (size_t i = 9; i < c.polys.size(); ++i) diff = diff || c.polys[i].c != a.polys[i].c;
        CHECK(diff);
        CHECK(a.polys[8].degree() == 8);
    }

    if (fails == 0) std::printf("smoke_oracles: %d checks passed\n", checks);
    return fails == 0 ? 0 : 1;
}
