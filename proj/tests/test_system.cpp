#include "isochrone/battery.hpp"
#include "isochrone/centerlab.hpp"
#include "isochrone/system.hpp"
#include "isochrone/trig.hpp"

#include <doctest.h>

#include <cmath>

using namespace isochrone;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }
const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();

} // namespace

TEST_CASE("factored construction") {
    FactoredSystem s = counterexample_system();
    CHECK(s.H() == counterexample_Q() * P("1 + x^2 + y^2"));
    CHECK(s.k() == 3);
    CHECK(s.m() == 1);
    CHECK(s.H().degree() == 5);

    FactoredSystem lin = build_eq2(y, {Rational(1)});
    CHECK(lin.vector_field() == PolyVectorField{P("-y + x*y"), P("x + y^2")});

    FactoredSystem rot = build_eq2(x, {Rational(0)});
    CHECK(rot.degenerate());
    CHECK(rot.vector_field() == PolyVectorField{-y, x});

    CHECK_THROWS_AS(build_eq2(P("x + y^2"), {Rational(1)}), Error);
    CHECK_THROWS_AS(build_eq2(y, {}), Error);
    try {
        build_eq2(y, {});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyRadial);
    }
}

TEST_CASE("generalized family construction") {
    CHECK(build_thm2(x * y, 1, P("y")).H() == P("x^2 - y^2") * x * y);
    CHECK(build_thm2(x, 1, BivarPoly(Rational(1))).H() == -y);
    CHECK(build_thm2(P("x^2 - 3*x*y"), Rational(5, 2), BivarPoly()).is_rotation());
    CHECK_THROWS_AS(build_thm2(P("x + y^2"), 1, P("x")), Error);
}

TEST_CASE("generalized family reduces on the circle to f'(t) h(1, f(t))") {
    sampling::Rng rng(31);
    for (int n = 0; n < 10; ++n) {
        unsigned k = 1 + n % 4;
        BivarPoly p = sampling::homogeneous(rng, k, 3, 2);
        Rational c = sampling::nonzero_rational(rng, 3, 2);
        BivarPoly h = sampling::polynomial(rng, 0, 2, 3, 2);
        UniformSystem u = build_thm2(p, c, h);
        CHECK(u.H().coeff(0, 0) == 0);
        TrigPoly f = restrict_to_circle(p);
        TrigPoly fp = f.derivative();
        for (double th : {0.4, 2.2, 5.1}) {
            double expected = to_double(c) * fp.evaluate(th) * h.evaluate(1.0, f.evaluate(th));
            CHECK(u.H().evaluate(std::cos(th), std::sin(th)) == doctest::Approx(expected).epsilon(1e-11));
        }
    }
}

TEST_CASE("vector field and divergence") {
    CHECK(UniformSystem(BivarPoly()).vector_field() == PolyVectorField{-y, x});
    CHECK(UniformSystem(x * x).vector_field() == PolyVectorField{P("-y + x^3"), P("x + x^2*y")});
    PolyVectorField f9 = counterexample_system().vector_field();
    CHECK(f9.degree() == 6);
    CHECK(divergence({-y, x}).is_zero());
    CHECK(divergence({x, y}) == BivarPoly(Rational(2)));
    CHECK(UniformSystem(P("x^2 + x*y")).H() == P("x^2 + x*y"));
    CHECK_THROWS_AS(UniformSystem(P("1 + x")), Error);
}

TEST_CASE("Darboux data") {
    FactoredSystem s = counterexample_system();
    DarbouxReport r = darboux_report(s);
    CHECK(r.identity_holds);
    CHECK(r.invariant1_holds);
    CHECK(r.invariant2_holds);
    CHECK(r.f1 == BivarPoly::radius_squared());
    CHECK(r.f2 == P("1 + x^2 + y^2"));
    CHECK(r.K2 == counterexample_Q() * BivarPoly::radius_squared() * Rational(2));
    CHECK(r.e1 == Rational(5, 2));
    CHECK(r.e2 == 1);

    DarbouxReport ry = darboux_report(build_eq2(y, {Rational(1)}));
    CHECK(ry.K1 == y * Rational(2));
    CHECK(ry.K2.is_zero());
    CHECK(ry.div == y * Rational(3));

    DarbouxReport rz = darboux_report(build_eq2(y, {Rational(1), Rational(0)}));
    CHECK(rz.f2 == BivarPoly(Rational(1)));
    CHECK(rz.K2.is_zero());
}

TEST_CASE("Darboux identities on random factored systems") {
    sampling::Rng rng(32);
    for (int n = 0; n < 25; ++n) {
        unsigned k = 1 + n % 6;
        std::vector<Rational> a(1 + n % 4);
        for (auto& q : a) q = sampling::rational(rng);
        FactoredSystem s = build_eq2(sampling::homogeneous(rng, k), a);
        DarbouxReport r = darboux_report(s);
        PolyVectorField v = s.vector_field();
        CHECK(apply(v, r.f1) == r.K1 * r.f1);
        CHECK(apply(v, r.f2) == r.K2 * r.f2);
        CHECK(r.K1 * (Rational(static_cast<long>(k) + 2) / 2) + r.K2 == divergence(v));
    }
}

TEST_CASE("invariant circles") {
    CHECK(invariant_circles(counterexample_system()).empty());
    auto c = invariant_circles(build_eq2(y, {Rational(-1), Rational(1)}));
    REQUIRE(c.size() == 1);
    CHECK(std::abs(c[0] - 1.0) <= 1e-12);
    CHECK(invariant_circles(build_eq2(y, {Rational(1)})).empty());
    // R = (rho^2 - 2)(rho^2 - 1/4)^2 has roots sqrt 2 and 1/2 (double)
    auto d = invariant_circles(build_eq2(y, {Rational(-1, 8), Rational(17, 16), Rational(-5, 2), Rational(1)}));
    REQUIRE(d.size() == 2);
    CHECK(std::abs(d[0] - 0.5) <= 1e-12);
    CHECK(std::abs(d[1] - std::sqrt(2.0)) <= 1e-12);
    CHECK_THROWS_AS(invariant_circles(build_eq2(y, {Rational(0)})), Error);
}

TEST_CASE("orbits started on invariant circles close up") {
    // circles where R changes sign steeply are too unstable to follow numerically
    for (auto a : std::vector<std::vector<Rational>>{{-1, 1}, {Rational(1, 4), Rational(-5, 4), 1}, {2, -3, 1}}) {
        FactoredSystem s = build_eq2(P("x^2*y - y^3 + x*y^2"), a);
        for (double rho : invariant_circles(s)) {
            auto r = return_map(s.uniform(), rho);
            CHECK_FALSE(r.blew_up);
            CHECK(std::abs(r.rho_end - rho) <= 1e-9);
        }
    }
}
