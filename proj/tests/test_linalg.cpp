#include "isochrone/linalg.hpp"

#include <doctest.h>

using namespace isochrone;

namespace {

RationalMatrix M(std::size_t r, std::size_t c, std::initializer_list<Rational> v) {
    RationalMatrix m(r, c);
    std::size_t k = 0;
    for (const auto& q : v) {
        m(k / c, k % c) = q;
        ++k;
    }
    return m;
}

bool is_zero(const RationalVector& v) {
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

} // namespace

TEST_CASE("rank") {
    CHECK(rank(M(2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rank(M(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})) == 3);
    CHECK(rank(M(2, 3, {Rational(1, 2), Rational(1, 3), 1, 3, 2, 6})) == 1);
    CHECK(rank(RationalMatrix(3, 4)) == 0);
}

TEST_CASE("nullspace vectors are primitive integer solutions") {
    RationalMatrix m = M(2, 4, {1, 2, 3, 4, 2, 4, 7, 9});
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) {
        CHECK(is_zero(m.multiply(v)));
        for (const auto& q : v) CHECK(q.get_den() == 1);
    }
}

TEST_CASE("linear fields commuting with the rotation") {
    // Y = (p x + q y, r x + s y) with [(-y, x), Y] = 0 reduces to the 4x4 system
    // r + q = 0, s - p = 0 (twice); the solutions are span{(x, y), (-y, x)}.
    RationalMatrix m = M(4, 4, {0, 1, 1, 0,
                                -1, 0, 0, 1,
                                0, 1, 1, 0,
                                -1, 0, 0, 1});
    CHECK(rank(m) == 2);
    CHECK(nullspace(m).size() == 2);
}

TEST_CASE("solve") {
    RationalMatrix m = M(2, 2, {2, 1, 1, 3});
    auto v = solve(m, {3, 5});
    REQUIRE(v);
    CHECK((*v)[0] == Rational(4, 5));
    CHECK((*v)[1] == Rational(7, 5));
    CHECK_FALSE(solve(M(2, 2, {1, 1, 1, 1}), {1, 2}).has_value());
    auto u = solve(M(1, 3, {1, 1, 1}), {3});
    REQUIRE(u);
    CHECK((*u)[0] + (*u)[1] + (*u)[2] == 3);
}
