#include "hyb/factor.hpp"
#include "hyb/homotopy.hpp"
#include "hyb/lifting.hpp"
#include "hyb/probes.hpp"

#include <cassert>
#include <cstdio>

using namespace hyb;

int main() {
    using P = PolyQ;
    // factor (T-1/2)(T^2+1)
    P f = P::linear_root(Rational(1, 2)) * P(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
    auto fs = poly_factor_exact(f);
    assert(fs.size() == 2);

    // cover T^2
    P p2 = P(std::vector<Rational>{Rational(0), Rational(0), Rational(1)});
    auto ctx = make_lift_context(p2);
    assert(ctx.roots.size() == 2);
    assert(ctx.critical_values.size() == 1);

    // phi of ev(3, 1/2) is ev(9, 1/2)
    auto x = make_arch<Rational>({3.0, 0.0}, 0.5);
    auto px = phi_cover(p2, x);
    assert(px.is_arch() && std::abs(px.arch().z.real() - 9.0) < 1e-12);

    // straight-line path 9 -> 1 lifts 3 -> 1
    std::vector<PointQ> gamma;
    for (int j = 0; j <= 16; ++j) {
        double u = j / 16.0;
        gamma.push_back(make_arch<Rational>({9.0 * (1 - u) + 1.0 * u, 0.0}, 0.5));
    }
    auto lifted = lift_path(ctx, gamma, x);
    assert(lifted.size() == gamma.size());
    assert(std::abs(lifted.back().arch().z - std::complex<double>(1.0, 0.0)) < 1e-9);

    // Triv tail freezes onto the branch eta_{T, rho^{1/2}}
    gamma.push_back(make_triv<Rational>(P::variable(), Rational(1, 4)));
    auto lifted2 = lift_path(ctx, gamma, x);
    assert(lifted2.back().is_triv());

    // lifted homotopy of a linear base flow
    Homotopy<PointQ> base;
    base.eval = [](double t, const PointQ& y) {
        auto a = materialize(y).arch();
        return make_arch<Rational>(a.z * (1.0 - 0.9 * t), a.t);
    };
    auto traj = lift_homotopy(ctx, base, x);
    auto end = traj(1.0);
    assert(end.is_arch());
    // w^2 = 0.9 => w = 3*sqrt(0.1)
    assert(std::abs(std::abs(end.arch().z) - 3.0 * std::sqrt(0.1)) < 1e-8);

    // probes agree between the two routes at a handful of times
    for (double t : {0.25, 0.5, 0.75, 1.0}) {
        auto lhs = phi_cover(p2, traj(t));
        auto rhs = materialize(base.eval(t, px));
        double d = probe_distance(lhs, rhs);
        assert(d < 1e-9);
    }
    std::puts("smoke_lift ok");
    return 0;
}
