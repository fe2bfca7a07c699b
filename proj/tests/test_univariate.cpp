#include "isochrone/univariate.hpp"

#include <doctest.h>

#include <cmath>

using namespace isochrone;

namespace {

UniPoly U(std::initializer_list<Rational> c) { return UniPoly(std::vector<Rational>(c)); }
// (t - r) as a polynomial
UniPoly root(const Rational& r) { return U({-r, 1}); }

} // namespace

TEST_CASE("division and gcd") {
    UniPoly a = root(1) * root(2) * root(Rational(1, 3));
    UniPoly b = root(2) * root(-5);
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK(gcd(a, b) == root(2));
    CHECK(gcd(a, U({})) == a.monic());
    CHECK(gcd(U({}), U({})).is_zero());
    CHECK(squarefree_part(root(3) * root(3) * root(-1)).monic() == (root(3) * root(-1)).monic());
}

TEST_CASE("real roots by Sturm isolation") {
    UniPoly p = U({-2, 0, 1}) * root(Rational(1, 3));  // (t^2 - 2)(t - 1/3)
    auto roots = real_roots(p, 1e-13);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-13));
    CHECK(roots[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(roots[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(real_roots(U({1, 0, 1})).empty());
    // double root counted once
    CHECK(real_roots(root(1) * root(1) * root(4)).size() == 2);
    auto pos = isolate_real_roots(p, 0, 10);
    CHECK(pos.size() == 2);
}

TEST_CASE("rational roots") {
    UniPoly p = root(Rational(-3, 7)) * root(Rational(5, 2)) * U({-2, 0, 1}) * root(0);
    auto r = rational_roots(p);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Rational(-3, 7));
    CHECK(r[1] == 0);
    CHECK(r[2] == Rational(5, 2));
    CHECK(rational_roots(U({-2, 0, 1})).empty());
    CHECK(rational_roots(U({7})).empty());
}

TEST_CASE("root bound") {
    UniPoly p = root(100) * root(-3);
    Rational b = root_bound(p);
    CHECK(b >= 100);
}
