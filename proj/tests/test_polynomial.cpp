#include "isochrone/battery.hpp"
#include "isochrone/polynomial.hpp"

#include <doctest.h>

#include <random>

using namespace isochrone;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }
const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();

} // namespace

TEST_CASE("rational literals") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == -4);
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(to_string(parse_rational("-10/4")) == "-5/2");
    CHECK_THROWS_AS(parse_rational("1/-2"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("arith") {
    CHECK(arith(x + y, x - y, ArithOp::Add) == x * Rational(2));
    CHECK(arith(x + y, BivarPoly(), ArithOp::Mul).is_zero());
    CHECK(arith(x, x, ArithOp::Sub).is_zero());
    BivarPoly f = arith(arith(y, x - y, ArithOp::Mul), x * Rational(2) - y, ArithOp::Mul);
    CHECK(f == P("2*x^2*y - 3*x*y^2 + y^3"));
    CHECK(to_string(f) == "2*x^2*y - 3*x*y^2 + y^3");
}

TEST_CASE("canonical text form") {
    CHECK(to_string(BivarPoly()) == "0");
    CHECK(to_string(P("1 + x")) == "1 + x");
    CHECK(to_string(P("y^2 - 1/2*x*y + x^2")) == "x^2 - 1/2*x*y + y^2");
    CHECK(to_string(P("-x^3")) == "-x^3");
    CHECK(to_string(P("3/4*x^2*y^5 - 2")) == "-2 + 3/4*x^2*y^5");
    CHECK(P("2*x*x*y") == P("2*x^2*y"));
    CHECK(P("0.5*x") == P("1/2*x"));
    sampling::Rng rng(11);
    for (int n = 0; n < 50; ++n) {
        BivarPoly p = sampling::polynomial(rng, 0, 6);
        CHECK(parse_poly(to_string(p)) == p);
    }
}

TEST_CASE("parse errors carry a column") {
    try {
        parse_poly("x + * y");
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Parse);
        CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_poly("x^"), Error);
    CHECK_THROWS_AS(parse_poly("z"), Error);
    CHECK_THROWS_AS(parse_poly("(x + y)"), Error);
}

TEST_CASE("partials") {
    auto [px, py] = partials(P("x^2*y"));
    CHECK(px == P("2*x*y"));
    CHECK(py == P("x^2"));
    auto [cx, cy] = partials(BivarPoly(Rational(7)));
    CHECK(cx.is_zero());
    CHECK(cy.is_zero());
    BivarPoly H5 = counterexample_system().H().homogeneous_part(5);
    auto [hx, hy] = partials(H5);
    CHECK(x * hx + y * hy == H5 * Rational(5));
}

TEST_CASE("Euler identity on random homogeneous polynomials") {
    sampling::Rng rng(12);
    for (unsigned d = 0; d <= 8; ++d)
        for (int n = 0; n < 5; ++n) {
            BivarPoly p = sampling::homogeneous(rng, d);
            auto [px, py] = partials(p);
            CHECK(x * px + y * py == p * Rational(d));
        }
}

TEST_CASE("rotational derivative") {
    CHECK(rotational_derivative(x) == -y);
    CHECK(rotational_derivative(BivarPoly::radius_squared()).is_zero());
    CHECK(rotational_derivative(x * y) == P("x^2 - y^2"));
    sampling::Rng rng(13);
    for (unsigned j = 0; j <= 3; ++j) {
        BivarPoly p = sampling::polynomial(rng, 0, 4);
        BivarPoly r = BivarPoly::radius_squared(j);
        CHECK(rotational_derivative(r * p) == r * rotational_derivative(p));
        BivarPoly h = sampling::homogeneous(rng, 3 + j);
        CHECK(rotational_derivative(h).is_homogeneous());
        CHECK(rotational_derivative(h).degree() == static_cast<int>(3 + j));
    }
}

TEST_CASE("homogeneous components") {
    auto comps = homogeneous_components(counterexample_system().H());
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].degree == 3);
    CHECK(comps[1].degree == 5);
    auto c2 = homogeneous_components(x + x * x);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0].degree == 1);
    CHECK(c2[0].part == x);
    CHECK(c2[1].part == x * x);
    CHECK(homogeneous_components(BivarPoly()).empty());
    sampling::Rng rng(14);
    for (int n = 0; n < 30; ++n) {
        BivarPoly p = sampling::polynomial(rng, 0, 7);
        BivarPoly sum;
        unsigned prev = 0;
        bool first = true;
        for (const auto& c : homogeneous_components(p)) {
            CHECK(c.part.is_homogeneous());
            CHECK(c.part.degree() == static_cast<int>(c.degree));
            if (!first) CHECK(c.degree > prev);
            prev = c.degree;
            first = false;
            sum += c.part;
        }
        CHECK(sum == p);
    }
}

TEST_CASE("evaluation") {
    CHECK(BivarPoly::radius_squared().evaluate(3.0, 4.0) == doctest::Approx(25.0));
    const BivarPoly H = counterexample_system().H();
    CHECK(H.evaluate(0.0, 0.0) == 0.0);
    CHECK(H.evaluate(Rational(1), Rational(1)) == 0);
    CHECK(std::abs(H.evaluate(1.0, 1.0)) < 1e-15);
    sampling::Rng rng(15);
    for (int n = 0; n < 30; ++n) {
        BivarPoly p = sampling::polynomial(rng, 0, 6);
        Rational a = sampling::rational(rng, 3, 4), b = sampling::rational(rng, 3, 4);
        CHECK(p.evaluate(a.get_d(), b.get_d()) == doctest::Approx(p.evaluate(a, b).get_d()).epsilon(1e-12));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    sampling::Rng rng(16);
    for (int n = 0; n < 20; ++n) {
        BivarPoly a = sampling::polynomial(rng, 0, 3), b = sampling::polynomial(rng, 0, 3), c = sampling::polynomial(rng, 0, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
        CHECK(a.pow(3) == a * a * a);
    }
}

TEST_CASE("compose and proportionality") {
    // h(u, v) = u + v^2 at u = x^2 + y^2, v = x y
    BivarPoly h = P("x + y^2");
    CHECK(compose(h, BivarPoly::radius_squared(), x * y) == P("x^2 + y^2 + x^2*y^2"));
    CHECK(proportionality(P("2*x - 4*y"), P("x - 2*y")) == Rational(2));
    CHECK_FALSE(proportionality(P("2*x - 4*y"), P("x - y")).has_value());
    CHECK(proportionality(BivarPoly(), P("x")) == Rational(0));
}
