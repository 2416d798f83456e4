#include "hyb/toric.hpp"

#include <cstdio>
#include <random>

using namespace hyb;

static int fails = 0;
#define CHECK(cond)                                        \
    do {                                                   \
        if (!(cond)) {                                     \
            ++fails;                                       \
            std::printf("FAIL %d: %s\n", __LINE__, #cond); \
        }                                                  \
    } while (0)

static Rational rand_scalar(std::mt19937_64& rng, long avoid_den_prime) {
    std::uniform_int_distribution<int> numd(-20, 20);
    std::uniform_int_distribution<int> dend(0, 3);
    static const int dens[] = {1, 2, 3, 5};
    int d = dens[dend(rng)];
    if (avoid_den_prime > 0 && d % avoid_den_prime == 0) d = 1;
    return Rational(numd(rng), d);
}

static MultiPoly rand_poly(std::mt19937_64& rng, int n, int deg, long avoid_den) {
    std::uniform_int_distribution<int> ed(0, deg);
    std::uniform_int_distribution<int> cnt(1, 5);
    MultiPoly f = MultiPoly::zero(n);
    int k = cnt(rng);
    for (int i = 0; i < k; ++i) {
        MultiIndex mu(static_cast<size_t>(n), 0);
        for (auto& e : mu) e = ed(rng);
        f.add_term(mu, rand_scalar(rng, avoid_den));
    }
    if (f.is_zero()) f.add_term(MultiIndex(static_cast<size_t>(n), 0), Rational(1));
    return f;
}

static GaussPoint rand_gauss(std::mt19937_64& rng, int n, long avoid_den) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> rad(0, 3);
    static const double rads[] = {0.0, 0.25, 0.6, 1.5};
    std::vector<Rational> c;
    std::vector<double> r;
    for (int i = 0; i < n; ++i) {
        c.push_back(rand_scalar(rng, avoid_den));
        r.push_back(rads[rad(rng)]);
    }
    return make_gauss(unit(rng), std::move(c), std::move(r));
}

int main() {
    std::mt19937_64 rng(2026);
    auto F3 = BaseRingSpec::hybrid_field(3);
    auto D3 = BaseRingSpec::dvr(3);

    // alpha examples
    CHECK(alpha(F3, 0.0, Rational(5)) == 1.0);
    CHECK(alpha(F3, 1.0, Rational(9)) == std::pow(3.0, -2.0));
    CHECK(alpha(F3, 1.0, Rational(1, 3)) == std::pow(3.0, 1.0));
    CHECK(alpha(D3, 1.0, Rational(3)) == 0.0);
    CHECK(alpha(D3, 1.0, Rational(5)) == 1.0);
    CHECK(alpha(D3, 0.25, Rational(9)) == 0.75 * 0.75);
    CHECK(alpha(F3, 0.7, Rational(0)) == 0.0);
    CHECK(alpha_inv(F3, std::pow(3.0, -0.4)) - 0.4 < 1e-15);
    CHECK(alpha_inv(D3, 0.3) == 0.7);

    // mstar / f_expansion examples
    MultiPoly T1 = MultiPoly::variable(1, 0);
    TorusPoly m1 = mstar(T1);
    CHECK(m1.terms.size() == 1 &&
          m1.terms.begin()->first == std::make_pair(MultiIndex{1}, MultiIndex{1}));
    TorusPoly u1{1, {}};
    u1.add_term(MultiIndex{0}, MultiIndex{1}, Rational(1));
    auto e1 = f_expansion(u1);
    CHECK(e1.coeff.size() == 2);
    CHECK(e1.coeff.at(MultiIndex{0}) == MultiPoly::constant(1, Rational(1)));
    CHECK(e1.coeff.at(MultiIndex{1}) == MultiPoly::constant(1, Rational(1)));
    TorusPoly u2{1, {}};
    u2.add_term(MultiIndex{0}, MultiIndex{2}, Rational(1));
    auto e2 = f_expansion(u2);
    CHECK(e2.coeff.at(MultiIndex{1}) == MultiPoly::constant(1, Rational(2)));
    CHECK(e2 == series_expansion_oracle(u2));

    // expansion equivalence, random torus polys
    for (int tr = 0; tr < 60; ++tr) {
        int n = 1 + static_cast<int>(rng() % 3);
        TorusPoly g{n, {}};
        std::uniform_int_distribution<int> ed(0, 4);
        int terms = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < terms; ++i) {
            MultiIndex te(static_cast<size_t>(n), 0), ue(static_cast<size_t>(n), 0);
            for (auto& e : te) e = ed(rng);
            for (auto& e : ue) e = ed(rng);
            g.add_term(te, ue, rand_scalar(rng, 0));
        }
        CHECK(f_expansion(g) == series_expansion_oracle(g));
    }

    // worked q example: (Q, |.|_3), rho = 1, rigid center 6, f = T + 3
    GaussPoint x6 = make_gauss(1.0, {Rational(6)}, {0.0});
    MultiPoly f63 = MultiPoly::variable(1, 0) + MultiPoly::constant(1, Rational(3));
    CHECK(q_eval(F3, 0.0, ToricPoint{x6}, f63) == std::pow(3.0, -2.0));
    double q05 = q_eval(F3, 0.5, ToricPoint{x6}, f63);
    CHECK(std::fabs(q05 - std::max(1.0 / 9.0, 0.5 / 3.0)) < 1e-15);
    CHECK(q_eval(F3, 1.0, ToricPoint{x6}, f63) == std::pow(3.0, -1.0));

    // q_point closed form at t = 1
    GaussPoint g3 = make_gauss(1.0, {Rational(3)}, {1.0 / 27.0});
    ToricPoint q1 = q_point(F3, 1.0, ToricPoint{g3});
    const auto* q1g = std::get_if<GaussPoint>(&q1);
    CHECK(q1g && q1g->center[0] == 0 && q1g->radii[0] == std::pow(3.0, -1.0));
    CHECK(skeleton_member(F3, q1));

    // skeleton examples
    CHECK(skeleton_member(F3, ToricPoint{make_gauss(0.8, {Rational(0)}, {0.5})}));
    CHECK(!skeleton_member(F3, ToricPoint{make_gauss(0.8, {Rational(2)}, {0.0})}));
    CHECK(skeleton_member(F3, ToricPoint{make_gauss(1.0, {Rational(3)}, {0.5})}));

    // beta examples
    CHECK(beta(F3, 0.0, ToricPoint{make_gauss(0.8, {Rational(0)}, {1.0})}) == 0.8);
    CHECK(beta(F3, 1.0, ToricPoint{make_gauss(0.8, {Rational(0)}, {1.0})}) == 0.0);
    CHECK(beta(F3, 0.5, ToricPoint{make_gauss(0.8, {Rational(0)}, {1.0})}) == 0.5);

    // j closed form and fiber law
    GaussPoint z9 = make_gauss(0.9, {Rational(0), Rational(0)}, {0.3, 2.0});
    ToricPoint j5 = j_point(F3, 0.5, ToricPoint{z9});
    CHECK(rho_of(j5) == 0.5 && std::get_if<GaussPoint>(&j5));
    ToricPoint z0 = ToricPoint{make_gauss(0.0, {Rational(0)}, {0.7})};
    for (double t : {0.0, 0.3, 1.0}) {
        ToricPoint jt = j_point(F3, t, z0);
        const auto* gg = std::get_if<GaussPoint>(&jt);
        CHECK(gg && gg->rho == 0.0 && gg->radii[0] == 0.7);
    }
    for (int tr = 0; tr < 40; ++tr) {
        auto x = rand_gauss(rng, 2, 0);
        double t = std::uniform_real_distribution<double>(0, 1)(rng);
        CHECK(rho_of(j_point(F3, t, ToricPoint{x})) == beta(F3, t, ToricPoint{x}));
    }
    // derived-J probe agreement with the closed form
    {
        ToricPoint derived{DerivedToric{"J", 0.5, 0.5,
                                        std::make_shared<const ToricPoint>(ToricPoint{z9})}};
        for (const auto& f : default_toric_probes(2, F3)) {
            double a = toric_eval(F3, j5, f);
            double b = toric_eval(F3, derived, f);
            CHECK(norm_close_rel(a, b, 1e-12));
        }
    }

    // p_point_eval examples
    {
        TorusPoly g{1, {}};
        g.add_term(MultiIndex{0}, MultiIndex{1}, Rational(1));  // u_1
        GaussPoint x = make_gauss(0.6, {Rational(2)}, {0.25});
        CHECK(p_point_eval(F3, {0.5}, ToricPoint{x}, g) == 1.0);
        TorusPoly h{1, {}};
        h.add_term(MultiIndex{2}, MultiIndex{0}, Rational(5));  // 5 T^2, no u
        MultiPoly h0 = MultiPoly::monomial(1, MultiIndex{2}, Rational(5));
        CHECK(p_point_eval(F3, {0.37}, ToricPoint{x}, h) ==
              toric_eval(F3, ToricPoint{x}, h0));
    }

    // q: t=0 exact, t=1 closed max, monotone grid, over both base kinds
    for (int tr = 0; tr < 120; ++tr) {
        const auto& spec = (tr % 2 == 0) ? F3 : D3;
        long avoid = spec.kind == BaseRingSpec::Kind::Dvr ? spec.p : 0;
        int n = 1 + static_cast<int>(rng() % 3);
        auto x = rand_gauss(rng, n, avoid);
        auto f = rand_poly(rng, n, 4, avoid);
        ToricPoint xp{x};
        CHECK(q_eval(spec, 0.0, xp, f) == toric_eval(spec, xp, f));
        double lhs = q_eval(spec, 1.0, xp, f);
        double rhs = 0.0;
        for (const auto& [mu, a] : f.terms)
            rhs = std::max(rhs, toric_eval(spec, xp, MultiPoly::monomial(n, mu, a)));
        if (lhs != rhs) std::printf("t=1 mismatch: %.17g vs %.17g (trial %d)\n", lhs, rhs, tr);
        CHECK(lhs == rhs);
        double prev = -1.0;
        for (int k = 0; k <= 20; ++k) {
            double v = q_eval(spec, k / 20.0, xp, f);
            CHECK(v >= prev);
            prev = v;
        }
        // derived q point evaluates through q_eval
        ToricPoint qd = q_point(spec, 0.35, xp);
        CHECK(toric_eval(spec, qd, f) == q_eval(spec, 0.35, xp, f));
        CHECK(skeleton_member(spec, q_point(spec, 1.0, xp)));
    }

    // Gauss multiplicativity
    for (int tr = 0; tr < 60; ++tr) {
        const auto& spec = (tr % 2 == 0) ? F3 : D3;
        long avoid = spec.kind == BaseRingSpec::Kind::Dvr ? spec.p : 0;
        int n = 1 + static_cast<int>(rng() % 2);
        auto x = rand_gauss(rng, n, avoid);
        auto f = rand_poly(rng, n, 3, avoid);
        auto g = rand_poly(rng, n, 3, avoid);
        double a = gauss_eval(spec, x, f * g);
        double b = gauss_eval(spec, x, f) * gauss_eval(spec, x, g);
        CHECK(norm_close_rel(a, b, 1e-10));
    }

    if (fails == 0) std::printf("smoke_toric: all checks passed\n");
    return fails == 0 ? 0 : 1;
}
