#include <cassert>
#include <iostream>

#include "hyb/json_io.hpp"
#include "hyb/probes.hpp"

using namespace hyb;

static int checks = 0;
#define CHECK(c)                                                        \
    do {                                                                \
        ++checks;                                                       \
        if (!(c)) {                                                     \
            std::cerr << "FAIL line " << __LINE__ << ": " #c "\n";      \
            return 1;                                                   \
        }                                                               \
    } while (0)

int main() {
    // Scalar formats.
    CHECK(frac_str(Rational(3, 4)) == "3/4");
    CHECK(frac_str(Rational(-5)) == "-5/1");
    CHECK(sig12(0.25) == std::string("0.25"));
    CHECK(norm_value_text(NormValue::from_rational(Rational(1, 4))) == "0.25 exact");
    CHECK(norm_value_text(NormValue::from_double(2.0)) == "2 exact-input approx-eval");

    // parse_rational: fractions, integers, decimals, exponents.
    using jsondetail::parse_rational;
    CHECK(parse_rational("3/4", "t") == Rational(3, 4));
    CHECK(parse_rational("-7", "t") == Rational(-7));
    CHECK(parse_rational("0.125", "t") == Rational(1, 8));
    CHECK(parse_rational("2.5e-1", "t") == Rational(1, 4));
    CHECK(parse_rational("1e3", "t") == Rational(1000));
    bool threw = false;
    try {
        parse_rational("3/0", "t");
    } catch (const DomainError& e) {
        threw = std::string(e.code) == "BadPoint";
    }
    CHECK(threw);

    // Polynomial roundtrips over both fields.
    auto f = Polynomial<Rational>({Rational(-2), Rational(0), Rational(1)});
    auto jf = poly_to_json(f);
    CHECK(jf.is_array() && jf.size() == 3 && jf[0] == "-2/1");
    CHECK(poly_from_json<Rational>(jf).c == f.c);

    auto g = Polynomial<GaussRational>(
        {GaussRational(Rational(1)), GaussRational(Rational(0)), GaussRational(Rational(1))});
    auto jg = poly_to_json(g);
    CHECK(jg[0].is_object() && jg[0]["re"] == "1/1" && jg[0]["im"] == "0/1");
    auto g2 = poly_from_json<GaussRational>(jg);
    CHECK(g2.degree() == 2 && g2.c[2].re == Rational(1) && g2.c[2].im == Rational(0));

    // Hybrid points: arch, triv, derived, roundtrip through text.
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        PointQ x = sample_hybrid_point<Rational>(rng);
        Json j = point_to_json(x);
        PointQ y = point_from_json<Rational>(Json::parse(j.dump()));
        CHECK(probe_distance(x, y) <= 1e-12);
    }
    for (int i = 0; i < 200; ++i) {
        PointQi x = sample_hybrid_point<GaussRational>(rng);
        Json j = point_to_json(x);
        PointQi y = point_from_json<GaussRational>(Json::parse(j.dump()));
        CHECK(probe_distance(x, y) <= 1e-12);
    }

    // Derived points keep op/params/base and materialize identically.
    {
        PointQ base = make_arch<Rational>({0.3, -0.4}, 0.7);
        DerivedPoint<Rational> d;
        d.op = "rz";
        d.params = {{"zre", 0.1}, {"zim", 0.2}};
        d.base = std::make_shared<const PointQ>(base);
        PointQ x{d};
        Json j = point_to_json(x);
        CHECK(j["kind"] == "derived" && j["op"] == "rz");
        CHECK(j["base"]["kind"] == "arch");
        PointQ y = point_from_json<Rational>(j);
        CHECK(y.is_derived() && y.derived().op == "rz");
        CHECK(probe_distance(materialize(x), materialize(y)) <= 1e-12);
    }

    // Exact decimal fields: dyadic radii roundtrip bit-for-bit.
    {
        PointQ x = make_triv<Rational>(Polynomial<Rational>::variable(), Rational(3, 8));
        Json j = point_to_json(x);
        CHECK(j["kind"] == "triv" && j["irr"] == "certified");
        PointQ y = point_from_json<Rational>(j);
        CHECK(y.triv().r == Rational(3, 8));
        // lenient parse: num/den form accepted too
        j["r"] = "3/8";
        CHECK(point_from_json<Rational>(j).triv().r == Rational(3, 8));
    }

    // Toric roundtrips.
    {
        ToricPoint x = make_gauss(0.5, {Rational(1, 2), Rational(-3)}, {0.25, 2.0});
        Json j = toric_to_json(x);
        CHECK(j["kind"] == "gauss" && j["center"].size() == 2);
        ToricPoint y = toric_from_json(Json::parse(j.dump()));
        const auto& ga = std::get<GaussPoint>(x);
        const auto& gb = std::get<GaussPoint>(y);
        CHECK(ga.rho == gb.rho && ga.center == gb.center && ga.radii == gb.radii);

        DerivedToric d;
        d.op = "q";
        d.t = 0.5;
        d.rho = 0.7;
        d.base = std::make_shared<const ToricPoint>(x);
        Json jd = toric_to_json(ToricPoint(d));
        ToricPoint yd = toric_from_json(jd);
        const auto& db = std::get<DerivedToric>(yd);
        CHECK(db.op == "q" && db.t == 0.5 && db.rho == 0.7);
        CHECK(std::get<GaussPoint>(*db.base).center == ga.center);
    }

    // Integer-line points: hybrid passthrough and fiber wrapping.
    {
        IntLinePoint a = int_line_hybrid(make_arch<Rational>({1.0, 0.0}, 0.5));
        Json ja = int_line_to_json(a);
        CHECK(ja["kind"] == "arch");
        IntLinePoint a2 = int_line_from_json(ja);
        CHECK(int_line_distance(a, a2) <= 1e-12);

        IntLinePoint b = int_line_gauss(5, ToricPoint(make_gauss(0.4, {Rational(2)}, {0.5})));
        Json jb = int_line_to_json(b);
        CHECK(jb["kind"] == "fiber" && jb["p"] == 5);
        IntLinePoint b2 = int_line_from_json(jb);
        CHECK(int_line_distance(b, b2) <= 1e-12);
    }

    // Malformed inputs name the offending field.
    auto expect_bad = [&](const char* text, const char* needle) {
        try {
            point_from_json<Rational>(Json::parse(text));
        } catch (const DomainError& e) {
            std::string w = e.what();
            return w.find(needle) != std::string::npos;
        }
        return false;
    };
    CHECK(expect_bad(R"({"z":{"re":"0","im":"0"},"t":"1"})", "kind"));
    CHECK(expect_bad(R"({"kind":"arch","t":"1"})", "\"z\""));
    CHECK(expect_bad(R"({"kind":"arch","z":{"re":"0"},"t":"1"})", "im"));
    CHECK(expect_bad(R"({"kind":"triv","p":["0/1","1/1"],"r":"oops","irr":"assumed"})", "oops"));
    CHECK(expect_bad(R"({"kind":"warp"})", "warp"));

    std::cout << "smoke_json: " << checks << " checks passed\n";
    return 0;
}
