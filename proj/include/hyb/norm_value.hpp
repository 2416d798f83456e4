#pragma once

#include "hyb/rational.hpp"

#include <cmath>
#include <optional>

namespace hyb {

// Value of a seminorm. `exact` means `q` holds the value as a rational and the
// double is just its shadow; approximate values carry only the double.
struct NormValue {
    double v = 0.0;
    bool exact = false;
    Rational q{0};

    static NormValue from_rational(Rational r) {
        NormValue n;
        n.exact = true;
        n.v = to_double(r);
        n.q = std::move(r);
        return n;
    }
    static NormValue from_double(double d) {
        NormValue n;
        n.v = d;
        return n;
    }

    friend NormValue operator*(const NormValue& a, const NormValue& b) {
        if (a.exact && b.exact) return from_rational(a.q * b.q);
        return from_double(a.v * b.v);
    }

    // max is taken on the exact values when both sides carry them
    friend NormValue vmax(const NormValue& a, const NormValue& b) {
        if (a.exact && b.exact) return a.q >= b.q ? a : b;
        return a.v >= b.v ? a : b;
    }

    NormValue pow_int(long e) const {
        if (exact) {
            if (q == 0) return e == 0 ? from_rational(Rational(1)) : from_rational(Rational(0));
            return from_rational(rat_pow(q, e));
        }
        return from_double(std::pow(v, static_cast<double>(e)));
    }

    // exponentiation by a real exponent stays exact only in trivial cases
    NormValue pow_real(double e) const {
        if (e == 0.0) return from_rational(Rational(1));
        if (exact && (q == 0 || q == 1)) return *this;
        double r = std::round(e);
        if (exact && r == e && std::fabs(e) < 1e6) return pow_int(static_cast<long>(r));
        return from_double(std::pow(v, e));
    }
};

inline bool norm_close(const NormValue& a, const NormValue& b, double tol) {
    if (a.exact && b.exact) return a.q == b.q;
    double scale = std::max({1.0, std::fabs(a.v), std::fabs(b.v)});
    return std::fabs(a.v - b.v) <= tol * scale;
}

inline bool norm_close_rel(double a, double b, double tol) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

}  // namespace hyb
