#pragma once

#include "isochrone/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isochrone {

/// Exponent pair of x^i*y^j.
struct Monomial {
    unsigned i = 0;
    unsigned j = 0;

    unsigned degree() const noexcept { return i + j; }

    bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic order: lower total degree first, then higher power of x first.
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.i > b.i;
    }
};

/// Sparse bivariate polynomial with exact rational coefficients.
///
/// Terms are stored in graded-lex order and zero coefficients are never kept,
/// so equality is structural and the zero polynomial has no terms.
class BivarPoly {
public:
    using Terms = std::map<Monomial, Rational, GradedLex>;

    BivarPoly() = default;
    BivarPoly(const Rational& constant);
    explicit BivarPoly(long constant) : BivarPoly(Rational(constant)) {}

    static BivarPoly x();
    static BivarPoly y();
    static BivarPoly monomial(const Rational& c, unsigned i, unsigned j);
    /// (x^2 + y^2)^power
    static BivarPoly radius_squared(unsigned power = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const noexcept;
    /// Lowest total degree among stored terms; -1 for the zero polynomial.
    int low_degree() const noexcept;
    bool is_homogeneous() const noexcept;

    Rational coeff(unsigned i, unsigned j) const;
    void add_term(const Rational& c, unsigned i, unsigned j);

    /// Terms of total degree d.
    BivarPoly homogeneous_part(unsigned d) const;

    BivarPoly& operator+=(const BivarPoly& other);
    BivarPoly& operator-=(const BivarPoly& other);
    BivarPoly& operator*=(const BivarPoly& other);
    BivarPoly& operator*=(const Rational& c);

    friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
    friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator*(BivarPoly a, const Rational& c) { return a *= c; }
    friend BivarPoly operator*(const Rational& c, BivarPoly a) { return a *= c; }
    BivarPoly operator-() const;

    bool operator==(const BivarPoly& other) const { return terms_ == other.terms_; }

    BivarPoly pow(unsigned e) const;

    double evaluate(double x, double y) const;
    Rational evaluate(const Rational& x, const Rational& y) const;

private:
    Terms terms_;
};

enum class ArithOp { Add, Sub, Mul };

BivarPoly arith(const BivarPoly& a, const BivarPoly& b, ArithOp op);

BivarPoly partial_x(const BivarPoly& p);
BivarPoly partial_y(const BivarPoly& p);
std::pair<BivarPoly, BivarPoly> partials(const BivarPoly& p);

/// x*p_y - y*p_x, the derivative along the rotation field (-y, x).
BivarPoly rotational_derivative(const BivarPoly& p);

struct HomoComponent {
    unsigned degree;
    BivarPoly part;
};
using HomoDecomposition = std::vector<HomoComponent>;

/// Terms grouped by total degree, ascending; empty for the zero polynomial.
HomoDecomposition homogeneous_components(const BivarPoly& p);

/// h(u, v) with u := U and v := V substituted.
BivarPoly compose(const BivarPoly& h, const BivarPoly& U, const BivarPoly& V);

/// Scalar c with a == c*b, if one exists. b must be nonzero.
std::optional<Rational> proportionality(const BivarPoly& a, const BivarPoly& b);

/// Canonical text form, e.g. "2*x^2*y - 3*x*y^2 + y^3"; "0" for zero.
std::string to_string(const BivarPoly& p);

/// Parses the canonical text form. Accepts any sum of products of rational
/// constants, x, y and non-negative integer powers; parentheses are not supported.
BivarPoly parse_poly(std::string_view text);

} // namespace isochrone
