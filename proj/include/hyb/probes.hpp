#pragma once

#include "hyb/core_points.hpp"
#include "hyb/irreducibles.hpp"

#include <random>
#include <vector>

namespace hyb {

// Fixed separating family used whenever two points are compared by their
// seminorm values rather than their representations.
template <class K>
const std::vector<Polynomial<K>>& probe_family() {
    static const std::vector<Polynomial<K>> fam = [] {
        using P = Polynomial<K>;
        std::vector<P> v;
        v.push_back(P::variable());
        v.push_back(P::linear_root(K(1)));
        v.push_back(P::linear_root(K(0) - K(1)));
        v.push_back(P::linear_root(K(2)));
        v.push_back(P::linear_root(K(Rational(1, 2))));
        v.push_back(P(std::vector<K>{K(0) - K(2), K(0), K(1)}));              // T^2 - 2
        v.push_back(P(std::vector<K>{K(1), K(0), K(1)}));                     // T^2 + 1
        v.push_back(P(std::vector<K>{K(0) - K(1), K(0) - K(1), K(0), K(1)}));  // T^3 - T - 1
        return v;
    }();
    return fam;
}

template <class K>
double probe_distance(const HybridPoint<K>& x, const HybridPoint<K>& y) {
    double d = 0.0;
    for (const auto& f : probe_family<K>()) {
        double a = seminorm(x, f).v, b = seminorm(y, f).v;
        d = std::max(d, std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)}));
    }
    d = std::max(d, std::fabs(lambda_of(x) - lambda_of(y)));
    return d;
}

// Representation-aware closeness: probes alone cannot separate branches whose
// polynomials avoid the probe family, so same-kind points compare directly.
template <class K>
bool point_close(const HybridPoint<K>& x0, const HybridPoint<K>& y0, double tol) {
    HybridPoint<K> x = materialize(x0), y = materialize(y0);
    if (x.is_arch() && y.is_arch()) {
        const auto& a = x.arch();
        const auto& b = y.arch();
        return std::abs(a.z - b.z) <= tol * (1.0 + std::abs(a.z)) && std::fabs(a.t - b.t) <= tol;
    }
    if (x.is_triv() && y.is_triv()) {
        const auto& a = x.triv();
        const auto& b = y.triv();
        double ra = to_double(a.r), rb = to_double(b.r);
        if (std::fabs(ra - rb) > tol) return false;
        if (a.p == b.p) return true;
        // radius ~0 or ~1 pins the point regardless of the branch polynomial
        if (ra <= tol && rb <= tol) {
            auto root_of = [](const TrivPoint<K>& t) {
                return t.p.degree() == 1
                           ? std::optional(field_traits<K>::embed(K(0) - t.p.c[0]))
                           : std::nullopt;
            };
            auto za = root_of(a), zb = root_of(b);
            if (za && zb) return std::abs(*za - *zb) <= tol;
        }
        return std::min(ra, rb) >= 1.0 - tol || probe_distance(x, y) <= tol;
    }
    return probe_distance(x, y) <= tol;
}

// Shared branch pool for samplers: the first eight enumerated irreducibles.
template <class K>
const std::vector<Polynomial<K>>& sample_branch_pool() {
    static const std::vector<Polynomial<K>> pool = [] {
        std::vector<Polynomial<K>> v;
        for (auto& [p, f] : enumerate_irreducibles<K>(8)) v.push_back(p);
        return v;
    }();
    return pool;
}

template <class K>
HybridPoint<K> sample_arch_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> grid(-10, 10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double im = 0.0;
    if constexpr (field_traits<K>::has_conjugation) im = grid(rng) / 4.0;
    double re = grid(rng) / 4.0;
    double t = std::min(1.0, 1.0 / 64.0 + unit(rng));
    return make_arch<K>({re, im}, t);
}

template <class K>
HybridPoint<K> sample_triv_point(std::mt19937_64& rng) {
    const auto& pool = sample_branch_pool<K>();
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    static const Rational radii[] = {Rational(0),      Rational(1, 4), Rational(1, 2),
                                     Rational(3, 4),   Rational(1),    Rational(2)};
    std::uniform_int_distribution<int> rr(0, 5);
    return make_triv<K>(pool[pick(rng)], radii[rr(rng)]);
}

// Mixed-kind sampler covering both fibre layers.
template <class K>
HybridPoint<K> sample_hybrid_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    if (kind(rng) <= 1) return sample_arch_point<K>(rng);
    return sample_triv_point<K>(rng);
}

}  // namespace hyb
