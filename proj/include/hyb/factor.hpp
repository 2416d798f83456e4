#pragma once

#include "hyb/irreducibles.hpp"

#include <algorithm>
#include <vector>

namespace hyb {

// Monic irreducible factors with multiplicity, deterministic order. Strips
// field roots first, then splits quadratics by the discriminant; a rootless
// cubic is irreducible. Anything of degree >= 4 left after root stripping
// must certify irreducible or the factorization is refused.
template <class K>
std::vector<Polynomial<K>> poly_factor_exact(const Polynomial<K>& p) {
    if (!p.is_monic() || p.degree() < 1)
        throw DomainError("NotMonic", "factorization needs a monic nonconstant polynomial");
    std::vector<Polynomial<K>> out;
    Polynomial<K> g = p;
    while (g.degree() >= 1) {
        auto r = detail::find_root_in_field(g);
        if (!r) break;
        Polynomial<K> lin = Polynomial<K>::linear_root(*r);
        out.push_back(lin);
        auto [q, rem] = divmod(g, lin);
        if (!rem.is_zero()) throw NumericError("Internal", "exact division failed");
        g = make_monic(q);
    }
    if (g.degree() == 2) {
        K b = g.c[1], c0 = g.c[0];
        if (auto s = detail::field_sqrt(b * b - K(4) * c0)) {
            K half(Rational(1, 2));
            out.push_back(Polynomial<K>::linear_root((K(0) - b + *s) * half));
            out.push_back(Polynomial<K>::linear_root((K(0) - b - *s) * half));
        } else {
            out.push_back(g);
        }
        g = Polynomial<K>::constant(K(1));
    } else if (g.degree() >= 1) {
        if (!certify_irreducible(g))
            throw UnsupportedError("UnsupportedTag",
                                   "cannot factor a reducible rootless polynomial of degree >= 4");
        out.push_back(g);
    }
    std::sort(out.begin(), out.end(),
              [](const Polynomial<K>& a, const Polynomial<K>& b) {
                  if (a.degree() != b.degree()) return a.degree() < b.degree();
                  return detail::poly_lex_less(a, b);
              });
    return out;
}

// The irreducible factor vanishing at a numeric root approximation.
template <class K>
Polynomial<K> factor_at_root(const std::vector<Polynomial<K>>& factors,
                             const std::complex<double>& z) {
    const Polynomial<K>* best = nullptr;
    double bv = 0.0;
    for (const auto& q : factors) {
        auto cs = q.complex_coeffs();
        std::complex<double> acc(0.0, 0.0);
        for (size_t i = cs.size(); i-- > 0;) acc = acc * z + cs[i];
        double v = std::abs(acc);
        if (!best || v < bv) {
            best = &q;
            bv = v;
        }
    }
    if (!best) throw NumericError("Internal", "no factors supplied");
    return *best;
}

}  // namespace hyb
