#pragma once

#include "isochrone/polynomial.hpp"
#include "isochrone/system.hpp"

#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace isochrone {

/// [X, Y] = (DY) X - (DX) Y.
PolyVectorField lie_bracket(const PolyVectorField& X, const PolyVectorField& Y);

/// 2x2 determinant of the top-degree bracket system for a commuter of degree n:
/// (x H_x + (1-n) H)(y H_y + (1-n) H) - x y H_x H_y, with H the top part of H.
BivarPoly top_degree_determinant(const BivarPoly& top_part, long n);

/// Degrees n of a polynomial commuter's top part allowed by the determinant
/// condition: {1, d+1} where d is the degree of the top homogeneous part of H.
/// Throws ZeroTopPart when H == 0.
std::set<unsigned> admissible_top_degrees(const UniformSystem& s);

struct CommutantBasis {
    unsigned degree_bound = 0;
    bool includes_constants = false;
    std::vector<PolyVectorField> basis;
    bool contains_self = false;

    std::size_t dimension() const noexcept { return basis.size(); }
};

/// Basis of {Y : deg Y <= n_max, [X, Y] = 0} by exact fraction-free
/// elimination over the coefficients of Y. Degree-0 terms are excluded unless
/// `include_constants` is set.
CommutantBasis commutant_nullspace(const PolyVectorField& X, unsigned n_max, bool include_constants = false);

/// True when v lies in the rational span of the given fields.
bool in_span(const std::vector<PolyVectorField>& fields, const PolyVectorField& v);

struct NonPolynomialReport {
    Rational exponent;  // power of (x^2 + y^2) in the radial commuter, k/2
};

/// (x r^k R, y r^k R) for even k; a report of the half-integer power for odd k.
std::variant<PolyVectorField, NonPolynomialReport> radial_commuter(const FactoredSystem& s);

struct Form7Witness {
    BivarPoly P;                  // homogeneous of even degree 2l
    std::vector<Rational> a;      // a_0 = 1
};

struct Form8Witness {
    unsigned l = 0;
    BivarPoly alpha;
    BivarPoly beta;
    std::vector<Rational> a;      // a_0 = 1; zero entries are allowed
};

struct Form7Result {
    bool matches = false;
    std::optional<Form7Witness> witness;
};

struct Form8Result {
    bool matches = false;
    /// No rational choice of the free r^l multiple in beta exists, but irrational ones might.
    bool inconclusive = false;
    std::optional<Form8Witness> witness;
};

/// H = P_{2l} * sum_j a_j (x^2 + y^2)^j. Throws ZeroInput for H == 0.
Form7Result check_form7(const BivarPoly& H);

/// H = alpha * sum_k a_k beta^k with x beta_y - y beta_x = l alpha, l | deg H.
/// Throws ZeroInput for H == 0.
Form8Result check_form8(const BivarPoly& H);

BivarPoly reconstruct(const Form7Witness& w);
BivarPoly reconstruct(const Form8Witness& w);

/// check_form7 or check_form8 matches.
bool predicts_polynomial_commuter(const BivarPoly& H);

} // namespace isochrone
