#pragma once

#include "hyb/errors.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hyb {

// A homotopy [0,1] x X -> X packaged with its contract predicates. Every
// evaluator constructed in this library satisfies eval(0, x) = x for all x,
// not just domain points; the splice formula below relies on that.
template <class P>
struct Homotopy {
    std::string name = "H";
    std::function<P(double, const P&)> eval;
    std::function<bool(const P&)> domain;  // null means everywhere
    std::function<bool(const P&)> target;  // membership at tolerance
    std::function<bool(const P&)> fixed;   // null means same as target
    bool lambda_compatible = false;

    P operator()(double t, const P& x) const {
        if (t < 0.0) t = 0.0;
        if (t > 1.0) t = 1.0;
        if (domain && !domain(x))
            throw DomainError("DomainMismatch", "point outside the homotopy domain");
        return eval(t, x);
    }
    bool in_target(const P& x) const { return !target || target(x); }
    bool in_fixed(const P& x) const { return fixed ? fixed(x) : in_target(x); }
};

template <class P>
Homotopy<P> identity_homotopy() {
    Homotopy<P> h;
    h.name = "id";
    h.eval = [](double, const P& x) { return x; };
    h.lambda_compatible = true;
    return h;
}

// F <| G: run G on [0,1/2], then F on [1/2,1]. Not associative; chains are
// read left-nested, ((F_n <| F_{n-1}) <| ...) <| F_1 with F_1 running first.
template <class P>
Homotopy<P> homotopy_compose(Homotopy<P> F, Homotopy<P> G) {
    Homotopy<P> h;
    h.name = F.name + " <| " + G.name;
    h.domain = G.domain;
    h.target = F.target ? F.target : G.target;
    if (F.fixed || G.fixed) {
        auto ff = F.fixed ? F.fixed : F.target;
        auto gf = G.fixed ? G.fixed : G.target;
        h.fixed = [ff, gf](const P& x) { return (!ff || ff(x)) && (!gf || gf(x)); };
    }
    h.lambda_compatible = F.lambda_compatible && G.lambda_compatible;
    h.eval = [F = std::move(F), G = std::move(G)](double t, const P& x) {
        if (t <= 0.5) return F.eval(0.0, G.eval(2.0 * t, x));
        P y = G.eval(1.0, x);
        if (F.domain && !F.domain(y))
            throw DomainError("DomainMismatch", "G lands outside the domain of F");
        return F.eval(2.0 * t - 1.0, y);
    };
    return h;
}

// Left-nested fold of [F_1, ..., F_n] given in running order: F_1 acts on
// [0,1/2], F_2 on [1/2,3/4], F_j on [1-2^{1-j}, 1-2^{-j}]. With this bracket
// the reparametrization identity
//   (F_n <| ... <| F_1)(1, .) = (F_{n+1} <| ... <| F_1)(1 - 2^{-n}, .)
// holds exactly, because each evaluator is the identity at time 0.
template <class P>
Homotopy<P> compose_chain(const std::vector<Homotopy<P>>& run_order) {
    if (run_order.empty()) return identity_homotopy<P>();
    Homotopy<P> acc = run_order.back();
    for (size_t j = run_order.size() - 1; j-- > 0;)
        acc = homotopy_compose(acc, run_order[j]);
    return acc;
}

}  // namespace hyb
