#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyb/core_points.hpp"
#include "hyb/dedekind.hpp"
#include "hyb/errors.hpp"
#include "hyb/norm_value.hpp"
#include "hyb/rational.hpp"
#include "hyb/toric.hpp"

namespace hyb {

using Json = nlohmann::json;

// -------------------------------------------------------------------------
// Scalar encodings. Doubles print with 17 significant digits (lossless);
// rationals as "num/den"; norm values with 12 significant digits plus the
// exactness flag.

inline std::string decimal_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Schema coefficients are always "num/den", including "/1" denominators.
inline std::string frac_str(const Rational& r) {
    return num(r).str() + "/" + den(r).str();
}

inline std::string norm_value_text(const NormValue& v) {
    return sig12(v.v) + std::string(v.exact ? " exact" : " exact-input approx-eval");
}

namespace jsondetail {

inline const Json& need(const Json& j, const char* field, const std::string& where) {
    if (!j.is_object()) throw DomainError("BadPoint", where + ": expected an object");
    auto it = j.find(field);
    if (it == j.end())
        throw DomainError("BadPoint", where + ": missing field \"" + field + "\"");
    return *it;
}

inline std::string need_string(const Json& j, const char* field, const std::string& where) {
    const Json& v = need(j, field, where);
    if (!v.is_string())
        throw DomainError("BadPoint", where + ": field \"" + field + "\" must be a string");
    return v.get<std::string>();
}

// "num/den", plain integers, and decimal/scientific literals all parse to
// exact rationals.
inline Rational parse_rational(const std::string& s0, const std::string& where) {
    std::string s = s0;
    if (s.empty()) throw DomainError("BadPoint", where + ": empty number");
    auto bad = [&]() -> Rational {
        throw DomainError("BadPoint", where + ": cannot parse number \"" + s0 + "\"");
    };
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
            if (d == 0) return bad();
            return Rational(n, d);
        }
        std::string mant = s;
        long expo = 0;
        auto epos = s.find_first_of("eE");
        if (epos != std::string::npos) {
            mant = s.substr(0, epos);
            expo = std::stol(s.substr(epos + 1));
        }
        std::string digits = mant;
        long frac = 0;
        auto dot = mant.find('.');
        if (dot != std::string::npos) {
            frac = static_cast<long>(mant.size() - dot - 1);
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
        }
        bool neg = !digits.empty() && digits[0] == '-';
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
        // cpp_int reads a leading 0 as an octal prefix
        auto nz = digits.find_first_not_of('0');
        digits = nz == std::string::npos ? "0" : digits.substr(nz);
        if (digits.empty()) return bad();
        Integer n(digits);
        if (neg) n = -n;
        Rational r(n);
        long shift = expo - frac;
        Integer ten(10);
        for (long i = 0; i < std::labs(shift); ++i) {
            if (shift > 0)
                r *= ten;
            else
                r /= ten;
        }
        return r;
    } catch (const std::exception&) {
        return bad();
    }
}

inline double parse_double(const Json& j, const char* field, const std::string& where) {
    const Json& v = need(j, field, where);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>(), where));
    throw DomainError("BadPoint", where + ": field \"" + field + "\" must be a number");
}

template <class K>
Json coeff_json(const K& a);

template <>
inline Json coeff_json<Rational>(const Rational& a) {
    return frac_str(a);
}

template <>
inline Json coeff_json<GaussRational>(const GaussRational& a) {
    return Json{{"re", frac_str(a.re)}, {"im", frac_str(a.im)}};
}

template <class K>
K coeff_from_json(const Json& j, const std::string& where);

template <>
inline Rational coeff_from_json<Rational>(const Json& j, const std::string& where) {
    if (!j.is_string())
        throw DomainError("BadPoint", where + ": coefficient must be a \"num/den\" string");
    return parse_rational(j.get<std::string>(), where);
}

template <>
inline GaussRational coeff_from_json<GaussRational>(const Json& j, const std::string& where) {
    if (j.is_string()) return GaussRational(parse_rational(j.get<std::string>(), where));
    return GaussRational(parse_rational(need_string(j, "re", where), where),
                         parse_rational(need_string(j, "im", where), where));
}

}  // namespace jsondetail

// -------------------------------------------------------------------------
// Polynomials: bare coefficient arrays, ascending degree.

template <class K>
Json poly_to_json(const Polynomial<K>& f) {
    Json a = Json::array();
    for (const auto& c : f.c) a.push_back(jsondetail::coeff_json<K>(c));
    return a;
}

template <class K>
Polynomial<K> poly_from_json(const Json& j, const std::string& where = "polynomial") {
    if (!j.is_array())
        throw DomainError("BadPoint", where + ": expected a coefficient array");
    std::vector<K> c;
    c.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        c.push_back(jsondetail::coeff_from_json<K>(j[i], where + "[" + std::to_string(i) + "]"));
    return Polynomial<K>(std::move(c));
}

// -------------------------------------------------------------------------
// Hybrid points, schema-exact.

template <class K>
Json point_to_json(const HybridPoint<K>& x) {
    if (x.is_arch()) {
        const auto& a = x.arch();
        return Json{{"kind", "arch"},
                    {"z", Json{{"re", decimal_str(a.z.real())}, {"im", decimal_str(a.z.imag())}}},
                    {"t", decimal_str(a.t)}};
    }
    if (x.is_triv()) {
        const auto& t = x.triv();
        return Json{{"kind", "triv"},
                    {"p", poly_to_json(t.p)},
                    {"r", decimal_str(to_double(t.r))},
                    {"irr", t.irr == IrrFlag::Certified ? "certified" : "assumed"}};
    }
    const auto& d = x.derived();
    Json params = Json::object();
    for (const auto& [k, v] : d.params) params[k] = decimal_str(v);
    return Json{{"kind", "derived"},
                {"op", d.op},
                {"params", params},
                {"base", point_to_json(*d.base)}};
}

template <class K>
HybridPoint<K> point_from_json(const Json& j, const std::string& where = "point") {
    using jsondetail::need;
    using jsondetail::need_string;
    std::string kind = need_string(j, "kind", where);
    if (kind == "arch") {
        const Json& z = need(j, "z", where);
        double re = jsondetail::parse_double(z, "re", where + ".z");
        double im = jsondetail::parse_double(z, "im", where + ".z");
        double t = jsondetail::parse_double(j, "t", where);
        return make_arch<K>({re, im}, t);
    }
    if (kind == "triv") {
        auto p = poly_from_json<K>(need(j, "p", where), where + ".p");
        Rational r = jsondetail::parse_rational(need_string(j, "r", where), where + ".r");
        std::string irr = need_string(j, "irr", where);
        if (irr != "certified" && irr != "assumed")
            throw DomainError("BadPoint", where + ": field \"irr\" must be certified|assumed");
        return make_triv<K>(std::move(p), std::move(r),
                            irr == "certified" ? IrrFlag::Certified : IrrFlag::Assumed);
    }
    if (kind == "derived") {
        DerivedPoint<K> d;
        d.op = need_string(j, "op", where);
        const Json& params = need(j, "params", where);
        if (!params.is_object())
            throw DomainError("BadPoint", where + ": field \"params\" must be an object");
        for (auto it = params.begin(); it != params.end(); ++it)
            d.params[it.key()] = it->is_string() ? to_double(jsondetail::parse_rational(
                                                       it->get<std::string>(), where + ".params"))
                                                 : it->get<double>();
        d.base = std::make_shared<const HybridPoint<K>>(
            point_from_json<K>(need(j, "base", where), where + ".base"));
        return HybridPoint<K>(std::move(d));
    }
    throw DomainError("BadPoint", where + ": unknown kind \"" + kind + "\"");
}

// -------------------------------------------------------------------------
// Toric points and integer-line points follow the same conventions: exact
// centers, decimal radii and fiber parameters.

inline Json toric_to_json(const ToricPoint& x) {
    if (const auto* g = std::get_if<GaussPoint>(&x)) {
        Json centers = Json::array(), radii = Json::array();
        for (const auto& c : g->center) centers.push_back(frac_str(c));
        for (double r : g->radii) radii.push_back(decimal_str(r));
        return Json{{"kind", "gauss"},
                    {"rho", decimal_str(g->rho)},
                    {"center", centers},
                    {"radii", radii}};
    }
    const auto& d = std::get<DerivedToric>(x);
    return Json{{"kind", "toric-derived"},
                {"op", d.op},
                {"t", decimal_str(d.t)},
                {"rho", decimal_str(d.rho)},
                {"base", toric_to_json(*d.base)}};
}

inline ToricPoint toric_from_json(const Json& j, const std::string& where = "point") {
    using jsondetail::need;
    using jsondetail::need_string;
    std::string kind = need_string(j, "kind", where);
    if (kind == "gauss") {
        const Json& cs = need(j, "center", where);
        const Json& rs = need(j, "radii", where);
        if (!cs.is_array() || !rs.is_array() || cs.size() != rs.size())
            throw DomainError("BadPoint",
                              where + ": \"center\" and \"radii\" must be arrays of equal size");
        std::vector<Rational> center;
        std::vector<double> radii;
        for (size_t i = 0; i < cs.size(); ++i) {
            center.push_back(jsondetail::coeff_from_json<Rational>(
                cs[i], where + ".center[" + std::to_string(i) + "]"));
            if (rs[i].is_number())
                radii.push_back(rs[i].get<double>());
            else if (rs[i].is_string())
                radii.push_back(to_double(jsondetail::parse_rational(
                    rs[i].get<std::string>(), where + ".radii")));
            else
                throw DomainError("BadPoint", where + ": radii entries must be numbers");
        }
        double rho = jsondetail::parse_double(j, "rho", where);
        return make_gauss(rho, std::move(center), std::move(radii));
    }
    if (kind == "toric-derived") {
        DerivedToric d;
        d.op = need_string(j, "op", where);
        d.t = jsondetail::parse_double(j, "t", where);
        d.rho = jsondetail::parse_double(j, "rho", where);
        d.base = std::make_shared<const ToricPoint>(
            toric_from_json(need(j, "base", where), where + ".base"));
        return d;
    }
    throw DomainError("BadPoint", where + ": unknown kind \"" + kind + "\"");
}

inline Json int_line_to_json(const IntLinePoint& x) {
    if (const auto* h = std::get_if<PointQ>(&x)) return point_to_json(*h);
    const auto& gf = std::get<GaussFiber>(x);
    return Json{{"kind", "fiber"},
                {"p", gf.spec.p},
                {"point", toric_to_json(gf.pt)}};
}

inline IntLinePoint int_line_from_json(const Json& j, const std::string& where = "point") {
    std::string kind = jsondetail::need_string(j, "kind", where);
    if (kind == "fiber") {
        const Json& pv = jsondetail::need(j, "p", where);
        if (!pv.is_number_integer())
            throw DomainError("BadPoint", where + ": field \"p\" must be an integer prime");
        long p = pv.get<long>();
        ToricPoint pt = toric_from_json(jsondetail::need(j, "point", where), where + ".point");
        return int_line_gauss(p, pt);
    }
    return int_line_hybrid(point_from_json<Rational>(j, where));
}

}  // namespace hyb
