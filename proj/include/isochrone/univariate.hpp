#pragma once

#include "isochrone/rational.hpp"

#include <vector>

namespace isochrone {

/// Dense univariate polynomial over the rationals, coefficients low to high.
/// Trailing zero coefficients are trimmed; the zero polynomial is empty.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);

    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const Rational& leading() const { return c_.back(); }

    Rational evaluate(const Rational& t) const;
    double evaluate(double t) const;
    int sign_at(const Rational& t) const { return sgn(evaluate(t)); }

    UniPoly derivative() const;
    UniPoly monic() const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    bool operator==(const UniPoly&) const = default;

private:
    void trim();
    std::vector<Rational> c_;
};

struct DivMod {
    UniPoly quotient;
    UniPoly remainder;
};

DivMod divmod(const UniPoly& a, const UniPoly& b);
/// Monic greatest common divisor; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'): same roots, all simple.
UniPoly squarefree_part(const UniPoly& p);

/// Closed interval [lo, hi] holding exactly one root (lo == hi for an exact root).
struct RootInterval {
    Rational lo;
    Rational hi;
};

/// Isolates every distinct real root in the open-closed interval (lo, hi] with
/// Sturm sequences and exact rational bisection.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& lo, const Rational& hi);

/// Shrinks an isolating interval of a squarefree polynomial until hi - lo <= width.
RootInterval refine_root(const UniPoly& squarefree, RootInterval iv, const Rational& width);

/// Cauchy bound: every real root lies in [-bound, bound].
Rational root_bound(const UniPoly& p);

/// All distinct real roots, each refined to width <= tol.
std::vector<double> real_roots(const UniPoly& p, double tol = 1e-12);

/// Distinct rational roots, found exactly.
std::vector<Rational> rational_roots(const UniPoly& p);

} // namespace isochrone
