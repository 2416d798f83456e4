#pragma once

#include "hyb/rational.hpp"

#include <algorithm>
#include <complex>
#include <vector>

namespace hyb {

// Dense univariate polynomial over K, coefficients lowest degree first.
// Invariant: no trailing zero coefficient; the zero polynomial has empty coeffs.
template <class K>
struct Polynomial {
    std::vector<K> c;

    Polynomial() = default;
    explicit Polynomial(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(K v) { return Polynomial(std::vector<K>{std::move(v)}); }
    static Polynomial variable() { return Polynomial(std::vector<K>{K(0), K(1)}); }
    // monic linear T - a
    static Polynomial linear_root(const K& a) { return Polynomial(std::vector<K>{K(0) - a, K(1)}); }

    void trim() {
        while (!c.empty() && field_traits<K>::is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const K& lead() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == K(1); }
    K coeff(size_t i) const { return i < c.size() ? c[i] : K(0); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c == b.c; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<K> r(std::max(a.c.size(), b.c.size()), K(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<K> r(std::max(a.c.size(), b.c.size()), K(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] - b.c[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<K> r(a.c.size() + b.c.size() - 1, K(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const K& s, const Polynomial& a) {
        std::vector<K> r = a.c;
        for (auto& x : r) x = s * x;
        return Polynomial(std::move(r));
    }

    K eval(const K& x) const {
        K acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
    std::complex<double> eval(const std::complex<double>& x) const {
        std::complex<double> acc(0.0, 0.0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + field_traits<K>::embed(c[i]);
        return acc;
    }

    Polynomial derivative() const {
        if (c.size() <= 1) return zero();
        std::vector<K> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = K(static_cast<int>(i)) * c[i];
        return Polynomial(std::move(r));
    }

    std::vector<std::complex<double>> complex_coeffs() const {
        std::vector<std::complex<double>> r(c.size());
        for (size_t i = 0; i < c.size(); ++i) r[i] = field_traits<K>::embed(c[i]);
        return r;
    }
};

using PolyQ = Polynomial<Rational>;
using PolyQi = Polynomial<GaussRational>;

template <class K>
std::pair<Polynomial<K>, Polynomial<K>> divmod(const Polynomial<K>& a, const Polynomial<K>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial<K> q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c.assign(a.degree() - b.degree() + 1, K(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        K f = r.lead() / b.lead();
        int d = r.degree() - b.degree();
        q.c[d] = q.c[d] + f;
        for (int i = 0; i <= b.degree(); ++i) r.c[i + d] = r.c[i + d] - f * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class K>
bool divides(const Polynomial<K>& p, const Polynomial<K>& f) {
    return divmod(f, p).second.is_zero();
}

// Exact multiplicity of p in f; f nonzero.
template <class K>
int multiplicity(const Polynomial<K>& p, Polynomial<K> f) {
    if (f.is_zero()) throw std::domain_error("multiplicity in zero polynomial");
    int v = 0;
    for (;;) {
        auto [q, r] = divmod(f, p);
        if (!r.is_zero()) return v;
        f = std::move(q);
        ++v;
        if (f.is_zero()) return v;
    }
}

template <class K>
Polynomial<K> make_monic(const Polynomial<K>& a) {
    if (a.is_zero()) return a;
    return (K(1) / a.lead()) * a;
}

template <class K>
Polynomial<K> poly_gcd(Polynomial<K> a, Polynomial<K> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

template <class K>
bool is_squarefree(const Polynomial<K>& p) {
    if (p.degree() <= 0) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

// Coefficients of f(T + a): repeated synthetic division, exact.
template <class K>
Polynomial<K> taylor_shift(const Polynomial<K>& f, const K& a) {
    if (f.is_zero()) return f;
    std::vector<K> r = f.c;
    size_t n = r.size();
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = n - 2; j + 1 > i; --j) r[j] = r[j] + a * r[j + 1];
    return Polynomial<K>(std::move(r));
}

// T^deg(p) * p(1/T), normalized monic; requires p(0) != 0.
template <class K>
Polynomial<K> reciprocal_monic(const Polynomial<K>& p) {
    if (p.is_zero() || field_traits<K>::is_zero(p.c.front()))
        throw std::domain_error("reciprocal_monic: zero constant term");
    std::vector<K> r(p.c.rbegin(), p.c.rend());
    return make_monic(Polynomial<K>(std::move(r)));
}

template <class K>
Polynomial<K> conj_poly(const Polynomial<K>& p) {
    std::vector<K> r = p.c;
    for (auto& x : r) x = field_traits<K>::conjugate(x);
    return Polynomial<K>(std::move(r));
}

inline PolyQi to_gaussian(const PolyQ& p) {
    std::vector<GaussRational> r(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) r[i] = GaussRational(p.c[i]);
    return PolyQi(std::move(r));
}

inline bool all_real(const PolyQi& p) {
    return std::all_of(p.c.begin(), p.c.end(), [](const GaussRational& z) { return z.is_real(); });
}

inline std::optional<PolyQ> to_rational(const PolyQi& p) {
    if (!all_real(p)) return std::nullopt;
    std::vector<Rational> r(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) r[i] = p.c[i].re;
    return PolyQ(std::move(r));
}

// max over coefficients of max(|num|, den) after scaling to integer form is what
// the enumeration orders by; for simplicity we take the max coefficient height directly.
template <class K>
Integer poly_height(const Polynomial<K>& p) {
    Integer h = 0;
    for (const auto& x : p.c) {
        Integer hx = field_traits<K>::height(x);
        if (hx > h) h = hx;
    }
    return h;
}

}  // namespace hyb
