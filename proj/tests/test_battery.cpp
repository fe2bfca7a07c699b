#include "isochrone/battery.hpp"
#include "isochrone/trig.hpp"

#include <doctest.h>

using namespace isochrone;

TEST_CASE("sine powers restrict to sin k t") {
    for (unsigned k = 1; k <= 7; ++k) CHECK(restrict_to_circle(sine_power(k)) == TrigPoly::sin(k));
}

TEST_CASE("random zero-mean homogeneous polynomials") {
    sampling::Rng rng(61);
    for (unsigned k = 1; k <= 6; ++k) {
        BivarPoly q = sampling::zero_mean_homogeneous(rng, k);
        CHECK(q.is_homogeneous());
        CHECK(q.degree() == static_cast<int>(k));
        CHECK(mean_is_zero(restrict_to_circle(q)));
    }
}

TEST_CASE("mutation control: any sign flip in the cubic fails the battery") {
    for (const char* q : {"-y^3 - 3*x*y^2 + 2*x^2*y", "y^3 + 3*x*y^2 + 2*x^2*y", "y^3 - 3*x*y^2 - 2*x^2*y"}) {
        BatteryInput flipped;
        flipped.Q = parse_poly(q);
        INFO("Q = " << q);
        bool all = true;
        for (const auto& r : run_battery({1, 2, 3, 4, 5, 6, 7, 8}, flipped)) all = all && r.passed;
        CHECK_FALSE(all);
        CHECK_FALSE(run_criterion(1, flipped).passed);
        CHECK_FALSE(run_criterion(4, flipped).passed);
    }
    // y -> -y mirrors F, so the asymptote at pi and rho_b(0) survive this flip
    BatteryInput mirrored;
    mirrored.Q = parse_poly("y^3 + 3*x*y^2 + 2*x^2*y");
    CHECK(run_criterion(5, mirrored).passed);
    CHECK(run_criterion(6, mirrored).passed);
}

TEST_CASE("criterion lines") {
    CriterionResult r{3, "return map periodicity", true, "ok", 0.25, 10.0};
    CHECK(format_line(r).rfind("PASS  [3] return map periodicity", 0) == 0);
    r.passed = false;
    CHECK(format_line(r).rfind("FAIL", 0) == 0);
    CHECK_THROWS_AS(run_criterion(11), Error);
}
