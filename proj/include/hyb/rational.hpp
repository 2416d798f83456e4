#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace hyb {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer iabs(const Integer& n) { return n < 0 ? Integer(-n) : n; }

// max(|numerator|, denominator); the height used to order coefficients.
inline Integer rat_height(const Rational& q) {
    Integer n = iabs(num(q)), d = den(q);
    return n > d ? n : d;
}

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = base;
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    if (inv) {
        if (acc == 0) throw std::domain_error("rat_pow: zero to negative power");
        acc = Rational(1) / acc;
    }
    return acc;
}

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline std::optional<Integer> isqrt_exact(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Exact square root in Q, if one exists.
inline std::optional<Rational> rat_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    auto sn = isqrt_exact(num(q));
    auto sd = isqrt_exact(den(q));
    if (!sn || !sd) return std::nullopt;
    return Rational(*sn, *sd);
}

// Parses "a/b", "a", or plain decimals like "-0.25". Throws on malformed input.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("parse_rational: bad literal '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) bad();
        return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Integer(s));
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (tail.empty()) bad();
    bool neg = !head.empty() && head[0] == '-';
    if (head == "-" || head == "+" || head.empty()) head += "0";
    Integer scale = 1;
    for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Integer whole(head), frac(tail);
    Integer n = iabs(whole) * scale + frac;
    return Rational(neg ? Integer(-n) : n, scale);
}

inline std::string rat_str(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

// p-adic valuation of a nonzero rational; 0 has no finite valuation.
inline long padic_valuation(const Rational& q, const Integer& p) {
    if (q == 0) throw std::domain_error("padic_valuation of 0");
    long v = 0;
    Integer n = iabs(num(q)), d = den(q);
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    return v;
}

struct GaussRational {
    Rational re{0}, im{0};

    GaussRational() = default;
    GaussRational(Rational r) : re(std::move(r)) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRational(int n) : re(n) {}

    bool is_real() const { return im == 0; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
        Rational n2 = b.re * b.re + b.im * b.im;
        if (n2 == 0) throw std::domain_error("GaussRational division by zero");
        return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
    }
    GaussRational& operator+=(const GaussRational& b) { return *this = *this + b; }
    GaussRational& operator-=(const GaussRational& b) { return *this = *this - b; }
    GaussRational& operator*=(const GaussRational& b) { return *this = *this * b; }
    GaussRational& operator/=(const GaussRational& b) { return *this = *this / b; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline GaussRational conj(const GaussRational& z) { return {z.re, -z.im}; }
inline Rational norm_sq(const GaussRational& z) { return z.re * z.re + z.im * z.im; }
inline std::complex<double> to_complex(const GaussRational& z) {
    return {to_double(z.re), to_double(z.im)};
}

// Square root in Q(i), if one exists: (x+yi)^2 = a+bi needs N(z) a square m^2
// and then (a+m)/2 a square.
inline std::optional<GaussRational> gauss_sqrt(const GaussRational& z) {
    if (z.is_zero()) return GaussRational(0);
    auto m = rat_sqrt(norm_sq(z));
    if (!m) return std::nullopt;
    auto x2 = (z.re + *m) / 2;
    auto x = rat_sqrt(x2);
    if (!x) return std::nullopt;
    if (*x == 0) {
        auto y = rat_sqrt(-z.re);
        if (!y) return std::nullopt;
        return GaussRational(0, *y);
    }
    Rational y = z.im / (2 * *x);
    GaussRational r(*x, y);
    if (r * r == z) return r;
    return std::nullopt;
}

struct FieldTagRationals {};
struct FieldTagGaussian {};

// Scalar concept used across the library: Rational or GaussRational.
template <class K> struct field_traits;

template <> struct field_traits<Rational> {
    static constexpr bool has_conjugation = false;
    static Rational conjugate(const Rational& x) { return x; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static std::complex<double> embed(const Rational& x) { return {to_double(x), 0.0}; }
    static Integer height(const Rational& x) { return rat_height(x); }
    static const char* name() { return "Q"; }
};

template <> struct field_traits<GaussRational> {
    static constexpr bool has_conjugation = true;
    static GaussRational conjugate(const GaussRational& x) { return conj(x); }
    static bool is_zero(const GaussRational& x) { return x.is_zero(); }
    static std::complex<double> embed(const GaussRational& x) { return to_complex(x); }
    static Integer height(const GaussRational& x) {
        Integer a = rat_height(x.re), b = rat_height(x.im);
        return a > b ? a : b;
    }
    static const char* name() { return "Q(i)"; }
};

}  // namespace hyb
