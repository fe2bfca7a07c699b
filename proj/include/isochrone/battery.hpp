#pragma once

#include "isochrone/polynomial.hpp"
#include "isochrone/system.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace isochrone {

/// y^3 - 3 x y^2 + 2 x^2 y, the cubic of the non-reversible counterexample.
BivarPoly counterexample_Q();
/// Q * (1 + x^2 + y^2).
FactoredSystem counterexample_system(const BivarPoly& Q = counterexample_Q());

/// Im((x + i y)^k): restricts to sin(k theta) on the unit circle.
BivarPoly sine_power(unsigned k);

namespace sampling {

using Rng = std::mt19937_64;

/// num/den with |num| <= bound and 1 <= den <= max_den.
Rational rational(Rng& rng, long bound = 5, long max_den = 4);
Rational nonzero_rational(Rng& rng, long bound = 5, long max_den = 4);
BivarPoly homogeneous(Rng& rng, unsigned degree, long bound = 5, long max_den = 4);
/// Random polynomial with terms of total degree in [low, high].
BivarPoly polynomial(Rng& rng, unsigned low, unsigned high, long bound = 5, long max_den = 4);
/// Homogeneous Q of degree k whose mean on the unit circle vanishes.
BivarPoly zero_mean_homogeneous(Rng& rng, unsigned k, long bound = 5, long max_den = 4);
PolyVectorField field(Rng& rng, unsigned max_degree, long bound = 3);

} // namespace sampling

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

struct BatteryInput {
    /// Cubic Q substituted for the counterexample's; a sign flip here must make the battery fail.
    BivarPoly Q = counterexample_Q();
    std::uint64_t seed = 20240917;
};

/// Runs one numbered criterion (1..10). Exceeding the time limit counts as failure.
CriterionResult run_criterion(int id, const BatteryInput& input = {});
std::vector<CriterionResult> run_battery(const std::vector<int>& ids, const BatteryInput& input = {});

/// One "PASS"/"FAIL" line per criterion.
std::string format_line(const CriterionResult& r);

} // namespace isochrone
