#include "isochrone/battery.hpp"
#include "isochrone/commutant.hpp"

#include <doctest.h>

using namespace isochrone;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }
const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();
const PolyVectorField rotation{-y, x};

} // namespace

TEST_CASE("Lie bracket") {
    PolyVectorField f9 = counterexample_system().vector_field();
    CHECK(lie_bracket(f9, f9).is_zero());
    CHECK(lie_bracket({x, y}, rotation).is_zero());
    FactoredSystem even = build_eq2(P("x^2 - y^2"), {Rational(1)});
    PolyVectorField radial{x * BivarPoly::radius_squared(), y * BivarPoly::radius_squared()};
    CHECK(lie_bracket(even.vector_field(), radial).is_zero());
    // [d/dx, x d/dy] = d/dy
    CHECK(lie_bracket({BivarPoly(Rational(1)), BivarPoly()}, {BivarPoly(), x}) == PolyVectorField{BivarPoly(), BivarPoly(Rational(1))});
}

TEST_CASE("bracket is bilinear, antisymmetric and satisfies Jacobi") {
    sampling::Rng rng(51);
    for (int n = 0; n < 15; ++n) {
        auto f = sampling::field(rng, 3), g = sampling::field(rng, 3), h = sampling::field(rng, 3);
        Rational c = sampling::rational(rng);
        CHECK(lie_bracket(f, g) == Rational(-1) * lie_bracket(g, f));
        CHECK(lie_bracket(c * f + g, h) == c * lie_bracket(f, h) + lie_bracket(g, h));
        auto jac = lie_bracket(f, lie_bracket(g, h)) + lie_bracket(g, lie_bracket(h, f)) + lie_bracket(h, lie_bracket(f, g));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("top-degree determinant") {
    BivarPoly H5 = counterexample_system().H().homogeneous_part(5);
    for (long n = 0; n <= 8; ++n)
        CHECK(top_degree_determinant(H5, n) == H5 * H5 * Rational((1 - n) * (6 - n)));
    CHECK(admissible_top_degrees(counterexample_system().uniform()) == std::set<unsigned>{1, 6});
    CHECK(admissible_top_degrees(build_eq2(y, {Rational(1)}).uniform()) == std::set<unsigned>{1, 2});
    CHECK_THROWS_AS(admissible_top_degrees(UniformSystem(BivarPoly())), Error);
    sampling::Rng rng(52);
    for (unsigned d = 1; d <= 6; ++d) {
        BivarPoly Hd = sampling::homogeneous(rng, d);
        CHECK(top_degree_determinant(Hd, 3) == Hd * Hd * Rational((1 - 3) * (static_cast<long>(d) + 1 - 3)));
    }
}

TEST_CASE("commutant of the counterexample is one-dimensional") {
    PolyVectorField f9 = counterexample_system().vector_field();
    CommutantBasis b = commutant_nullspace(f9, 6);
    CHECK(b.dimension() == 1);
    CHECK(b.contains_self);
    CHECK(proportionality(b.basis[0].P, f9.P).has_value());
    // below deg X only linear fields are admissible and none commute
    CHECK(commutant_nullspace(f9, 5).dimension() == 0);
}

TEST_CASE("commutant of an even-degree factored system contains the radial field") {
    FactoredSystem even = build_eq2(P("x^2 - y^2"), {Rational(1)});
    CommutantBasis b = commutant_nullspace(even.vector_field(), 4);
    CHECK(b.dimension() >= 2);
    CHECK(b.contains_self);
    auto radial = radial_commuter(even);
    REQUIRE(std::holds_alternative<PolyVectorField>(radial));
    CHECK(in_span(b.basis, std::get<PolyVectorField>(radial)));
    for (const auto& f : b.basis) CHECK(lie_bracket(even.vector_field(), f).is_zero());
}

TEST_CASE("linear fields commuting with the rotation") {
    CommutantBasis b = commutant_nullspace(rotation, 1);
    CHECK(b.dimension() == 2);
    CHECK(in_span(b.basis, {x, y}));
    CHECK(in_span(b.basis, rotation));
    CHECK(b.contains_self);
    CommutantBasis c = commutant_nullspace(rotation, 1, true);
    CHECK(c.includes_constants);
    CHECK(c.dimension() == 2);
}

TEST_CASE("radial commuter") {
    auto k2 = radial_commuter(build_eq2(P("x^2 - y^2"), {Rational(1)}));
    REQUIRE(std::holds_alternative<PolyVectorField>(k2));
    CHECK(std::get<PolyVectorField>(k2) == PolyVectorField{x * BivarPoly::radius_squared(), y * BivarPoly::radius_squared()});
    auto k3 = radial_commuter(counterexample_system());
    REQUIRE(std::holds_alternative<NonPolynomialReport>(k3));
    CHECK(std::get<NonPolynomialReport>(k3).exponent == Rational(3, 2));
}

TEST_CASE("form7") {
    auto r = check_form7(P("x^2 - y^2") * P("1 + x^2 + y^2"));
    CHECK(r.matches);
    REQUIRE(r.witness);
    CHECK(r.witness->P == P("x^2 - y^2"));
    CHECK(r.witness->a == std::vector<Rational>{1, 1});
    CHECK_FALSE(check_form7(counterexample_system().H()).matches);
    CHECK_FALSE(check_form7(P("x^3")).matches);
    // gap in the radial sum
    CHECK(check_form7(P("x*y") * (BivarPoly(Rational(2)) + BivarPoly::radius_squared(2) * Rational(-3))).witness->a ==
          std::vector<Rational>{1, 0, Rational(-3, 2)});
    CHECK_FALSE(check_form7(P("x^2 + x^4")).matches);
    CHECK_THROWS_AS(check_form7(BivarPoly()), Error);
}

TEST_CASE("form8") {
    auto r = check_form8(P("-y - x*y"));
    CHECK(r.matches);
    REQUIRE(r.witness);
    CHECK(r.witness->l == 1);
    CHECK(r.witness->alpha == -y);
    CHECK(reconstruct(*r.witness) == P("-y - x*y"));
    CHECK(rotational_derivative(r.witness->beta) == r.witness->alpha * Rational(r.witness->l));

    auto r9 = check_form8(counterexample_system().H());
    CHECK_FALSE(r9.matches);
    CHECK_FALSE(r9.inconclusive);

    sampling::Rng rng(53);
    for (int n = 0; n < 8; ++n) {
        BivarPoly beta = sampling::homogeneous(rng, 2);
        BivarPoly alpha = rotational_derivative(beta) * Rational(1, 2);
        if (alpha.is_zero()) continue;
        auto a = check_form8(alpha);
        CHECK(a.matches);
        // alpha (1 + 3 beta' + beta'^2) with beta' = beta + t r^2 for a rational t
        BivarPoly shifted = beta + BivarPoly::radius_squared() * sampling::rational(rng, 3, 2);
        BivarPoly H = alpha * (BivarPoly(Rational(1)) + shifted * Rational(3) + shifted * shifted);
        auto w = check_form8(H);
        CHECK(w.matches);
        if (w.witness) {
            CHECK(reconstruct(*w.witness) == H);
            CHECK(rotational_derivative(w.witness->beta) == w.witness->alpha * Rational(w.witness->l));
        }
    }
    CHECK_THROWS_AS(check_form8(BivarPoly()), Error);
}

TEST_CASE("form8 rejects inconsistent shifts") {
    // alpha ((xy)^2 + 2 r^4) would need beta = xy + t r^2 with t = 0 and t^2 = 2 at once
    BivarPoly beta = x * y;
    BivarPoly alpha = rotational_derivative(beta) * Rational(1, 2);
    BivarPoly H = alpha * (BivarPoly(Rational(1)) + beta * beta + BivarPoly::radius_squared(2) * Rational(2));
    auto r = check_form8(H);
    CHECK_FALSE(r.matches);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("predicted polynomial commuters") {
    CHECK_FALSE(predicts_polynomial_commuter(counterexample_system().H()));
    CHECK(predicts_polynomial_commuter(P("x^2 - y^2") * P("1 + x^2 + y^2")));
    CHECK(predicts_polynomial_commuter(P("-y - x*y")));
    CHECK_THROWS_AS(predicts_polynomial_commuter(BivarPoly()), Error);
}

TEST_CASE("witnesses reconstruct and matching forms have nontrivial commutants") {
    sampling::Rng rng(54);
    for (int n = 0; n < 10; ++n) {
        unsigned k = 2 * (1 + n % 2);
        std::vector<Rational> a{1, sampling::rational(rng, 3, 2)};
        FactoredSystem s = build_eq2(sampling::homogeneous(rng, k, 3, 2), a);
        auto f7 = check_form7(s.H());
        REQUIRE(f7.matches);
        CHECK(reconstruct(*f7.witness) == s.H());
        PolyVectorField X = s.vector_field();
        CHECK(commutant_nullspace(X, static_cast<unsigned>(X.degree())).dimension() >= 2);
    }
}

TEST_CASE("commutant basis elements respect the top-degree filter") {
    sampling::Rng rng(55);
    for (int n = 0; n < 4; ++n) {
        UniformSystem u(sampling::polynomial(rng, 1, 2, 2, 2));
        PolyVectorField X = u.vector_field();
        auto allowed = admissible_top_degrees(u);
        CommutantBasis b = commutant_nullspace(X, 4);
        for (const auto& f : b.basis) {
            CHECK(lie_bracket(X, f).is_zero());
            // a nonzero top pair of degree n forces Delta(n) = 0
            CHECK(allowed.count(static_cast<unsigned>(f.degree())) == 1);
        }
    }
}
