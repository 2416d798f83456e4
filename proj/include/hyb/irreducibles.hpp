#pragma once

#include "hyb/core_points.hpp"
#include "hyb/polynomial.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace hyb {

namespace detail {

inline std::vector<Integer> divisors(Integer n) {
    n = iabs(n);
    std::vector<Integer> ds;
    if (n == 0) return ds;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d * d != n) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return a / boost::multiprecision::gcd(a, b) * b;
}

inline Integer denominator_lcm(const PolyQ& p) {
    Integer m = 1;
    for (const auto& c : p.c) m = lcm_int(m, den(c));
    return m;
}

inline Integer denominator_lcm(const PolyQi& p) {
    Integer m = 1;
    for (const auto& c : p.c) {
        m = lcm_int(m, den(c.re));
        m = lcm_int(m, den(c.im));
    }
    return m;
}

// Monic scaled companion g(Y) = m^d p(Y/m) has coefficients in the ring of
// integers; any root of p in the field is y/m with y an integral root of g.
template <class K>
Polynomial<K> integer_scaled(const Polynomial<K>& p, const Integer& m) {
    std::vector<K> r = p.c;
    int d = p.degree();
    Rational mq(m);
    for (int i = 0; i <= d; ++i) r[i] = r[i] * K(Rational(rat_pow(mq, d - i)));
    return Polynomial<K>(std::move(r));
}

// Rational roots of the integer-scaled polynomial are num/den with
// num | c0 and den | leading coefficient.
inline std::optional<Rational> find_root_in_field(const PolyQ& p) {
    if (p.c.front() == 0) return Rational(0);
    Integer m = denominator_lcm(p);
    PolyQ g = integer_scaled(p, m);
    Integer c0 = num(g.c.front());
    Integer cl = num(g.c.back());
    for (const auto& d : divisors(c0))
        for (const auto& e : divisors(cl))
            for (int s : {1, -1}) {
                Rational y = Rational(s * d) / Rational(e);
                if (g.eval(y) == 0) return y / Rational(m);
            }
    return std::nullopt;
}

inline std::optional<GaussRational> find_root_in_field(const PolyQi& p) {
    if (p.c.front().is_zero()) return GaussRational(0);
    Integer m = denominator_lcm(p);
    PolyQi g = integer_scaled(p, m);
    Integer n0 = num(norm_sq(g.c.front()));
    Integer nl = num(norm_sq(g.c.back()));
    // integral candidates have norm dividing N(c0); denominators divide the
    // leading coefficient, so their norm divides N(lead)
    for (const auto& d : divisors(n0)) {
        for (Integer a = 0; a * a <= d; ++a) {
            Integer b2 = d - a * a;
            auto b = isqrt_exact(b2);
            if (!b) continue;
            for (const auto& e : divisors(nl)) {
                for (Integer u = 0; u * u <= e; ++u) {
                    auto v = isqrt_exact(e - u * u);
                    if (!v) continue;
                    GaussRational dcand{Rational(u), Rational(*v)};
                    if (dcand.is_zero()) continue;
                    for (int sa : {1, -1})
                        for (int sb : {1, -1}) {
                            GaussRational numg{Rational(sa * a), Rational(sb * *b)};
                            GaussRational y = numg / dcand;
                            if (g.eval(y).is_zero()) return y / GaussRational(Rational(m));
                        }
                }
            }
        }
    }
    return std::nullopt;
}

template <class K>
bool has_root_in_field(const Polynomial<K>& p) {
    return find_root_in_field(p).has_value();
}

inline std::optional<Rational> field_sqrt(const Rational& a) { return rat_sqrt(a); }
inline std::optional<GaussRational> field_sqrt(const GaussRational& a) { return gauss_sqrt(a); }

inline bool discriminant_is_square(const PolyQ& p) {
    Rational b = p.c[1], c = p.c[0];
    return rat_sqrt(b * b - 4 * c).has_value();
}

inline bool discriminant_is_square(const PolyQi& p) {
    GaussRational b = p.c[1], c = p.c[0];
    return gauss_sqrt(b * b - GaussRational(4) * c).has_value();
}

}  // namespace detail

// Exact certification for degree <= 3 (root test / discriminant); degree >= 4
// gets Assumed after an exact squarefreeness check. nullopt means reducible.
template <class K>
std::optional<IrrFlag> certify_irreducible(const Polynomial<K>& p) {
    if (!p.is_monic() || p.degree() < 1) return std::nullopt;
    int d = p.degree();
    if (d == 1) return IrrFlag::Certified;
    if (d == 2) return detail::discriminant_is_square(p) ? std::nullopt
                                                         : std::optional(IrrFlag::Certified);
    if (d == 3) return detail::has_root_in_field(p) ? std::nullopt
                                                    : std::optional(IrrFlag::Certified);
    if (!is_squarefree(p)) return std::nullopt;
    if (detail::has_root_in_field(p)) return std::nullopt;
    return IrrFlag::Assumed;
}

namespace detail {

// Coefficient order: denominator, then |numerator|, then sign (so 0 < 1 < -1 < 2 ...).
inline bool coeff_less(const Rational& a, const Rational& b) {
    if (den(a) != den(b)) return den(a) < den(b);
    Integer na = iabs(num(a)), nb = iabs(num(b));
    if (na != nb) return na < nb;
    return num(a) > num(b);  // positive before negative
}

inline bool coeff_less(const GaussRational& a, const GaussRational& b) {
    if (a.re != b.re) return coeff_less(a.re, b.re);
    if (a.im == b.im) return false;
    return coeff_less(a.im, b.im);
}

template <class K>
bool poly_lex_less(const Polynomial<K>& a, const Polynomial<K>& b) {
    for (size_t i = 0; i < a.c.size() && i < b.c.size(); ++i) {
        if (!(a.c[i] == b.c[i])) return coeff_less(a.c[i], b.c[i]);
    }
    return a.c.size() < b.c.size();
}

inline std::vector<Rational> coeff_pool(const Integer& h, FieldTagRationals) {
    std::vector<Rational> pool;
    for (Integer d = 1; d <= h; ++d)
        for (Integer n = -h; n <= h; ++n) {
            if (d > 1 && boost::multiprecision::gcd(iabs(n), d) != 1) continue;
            pool.push_back(Rational(n, d));
        }
    std::sort(pool.begin(), pool.end(),
              [](const Rational& a, const Rational& b) { return coeff_less(a, b); });
    return pool;
}

inline std::vector<GaussRational> coeff_pool(const Integer& h, FieldTagGaussian) {
    auto base = coeff_pool(h, FieldTagRationals{});
    std::vector<GaussRational> pool;
    for (const auto& re : base)
        for (const auto& im : base) pool.push_back(GaussRational(re, im));
    std::sort(pool.begin(), pool.end(),
              [](const GaussRational& a, const GaussRational& b) { return coeff_less(a, b); });
    return pool;
}

}  // namespace detail

// Deterministic enumeration of monic irreducibles: blocks B = max(degree,
// coefficient height) = 1, 2, ..., ordered inside a block by (degree, height,
// coefficient lex). Degree >= 4 entries are additionally trial-divided by all
// previously emitted lower-degree elements before being flagged Assumed.
template <class K>
std::vector<std::pair<Polynomial<K>, IrrFlag>> enumerate_irreducibles(size_t count) {
    using Tag = std::conditional_t<std::is_same_v<K, Rational>, FieldTagRationals, FieldTagGaussian>;
    std::vector<std::pair<Polynomial<K>, IrrFlag>> out;
    if (count == 0) return out;

    for (Integer B = 1; B <= 6; ++B) {
        auto pool = detail::coeff_pool(B, Tag{});
        int Bi = B.convert_to<int>();
        for (int d = 1; d <= Bi; ++d) {
            // all monic degree-d tuples over the pool, keeping max(deg, height) == B
            std::vector<Polynomial<K>> block;
            std::vector<size_t> idx(static_cast<size_t>(d), 0);
            bool done = false;
            while (!done) {
                std::vector<K> coeffs(static_cast<size_t>(d) + 1, K(0));
                for (int i = 0; i < d; ++i) coeffs[static_cast<size_t>(i)] = pool[idx[static_cast<size_t>(i)]];
                coeffs[static_cast<size_t>(d)] = K(1);
                Polynomial<K> cand(std::move(coeffs));
                Integer h = poly_height(cand);
                if (d == B || h == B) block.push_back(std::move(cand));
                int pos = d - 1;
                while (pos >= 0) {
                    if (++idx[static_cast<size_t>(pos)] < pool.size()) break;
                    idx[static_cast<size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) done = true;
            }
            std::sort(block.begin(), block.end(), [](const Polynomial<K>& a, const Polynomial<K>& b) {
                Integer ha = poly_height(a), hb = poly_height(b);
                if (ha != hb) return ha < hb;
                return detail::poly_lex_less(a, b);
            });
            for (auto& cand : block) {
                auto flag = certify_irreducible(cand);
                if (!flag) continue;
                if (*flag == IrrFlag::Assumed) {
                    bool reducible = false;
                    for (const auto& [q, qf] : out)
                        if (q.degree() < cand.degree() && divides(q, cand)) {
                            reducible = true;
                            break;
                        }
                    if (reducible) continue;
                }
                out.emplace_back(std::move(cand), *flag);
                if (out.size() == count) return out;
            }
        }
    }
    throw NumericError("EnumerationOverflow", "irreducible enumeration capped at height 6");
}

}  // namespace hyb
