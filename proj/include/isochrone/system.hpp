#pragma once

#include "isochrone/polynomial.hpp"
#include "isochrone/rational.hpp"

#include <optional>
#include <vector>

namespace isochrone {

/// Planar polynomial vector field (P, S): x' = P(x, y), y' = S(x, y).
struct PolyVectorField {
    BivarPoly P;
    BivarPoly S;

    int degree() const noexcept { return std::max(P.degree(), S.degree()); }
    bool is_zero() const noexcept { return P.is_zero() && S.is_zero(); }
    bool operator==(const PolyVectorField&) const = default;
};

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b);
PolyVectorField operator*(const Rational& c, const PolyVectorField& v);

/// Lie derivative X(f) = P f_x + S f_y.
BivarPoly apply(const PolyVectorField& v, const BivarPoly& f);

/// dP/dx + dS/dy.
BivarPoly divergence(const PolyVectorField& v);

/// Data of the generalized family H = q h(x^2 + y^2, p) with q = c (x p_y - y p_x).
struct Thm2Data {
    BivarPoly p;
    Rational c;
    BivarPoly h;  // h(u, v): exponent i on u, j on v
};

/// x' = -y + x H, y' = x + y H with H(0, 0) = 0: every orbit turns with unit angular speed.
class UniformSystem {
public:
    explicit UniformSystem(BivarPoly H);

    const BivarPoly& H() const noexcept { return H_; }
    bool is_rotation() const noexcept { return H_.is_zero(); }
    PolyVectorField vector_field() const;

private:
    BivarPoly H_;
};

/// x' = -y + x Q R, y' = x + y Q R with Q homogeneous of degree k and
/// R = sum_i a_i (x^2 + y^2)^i.
class FactoredSystem {
public:
    const BivarPoly& Q() const noexcept { return Q_; }
    const std::vector<Rational>& radial() const noexcept { return a_; }
    unsigned k() const noexcept { return static_cast<unsigned>(Q_.degree()); }
    /// Index of the last radial coefficient.
    unsigned m() const noexcept { return static_cast<unsigned>(a_.size() - 1); }

    /// sum_i a_i (x^2 + y^2)^i
    BivarPoly radial_factor() const;
    const BivarPoly& H() const noexcept { return H_; }
    UniformSystem uniform() const { return UniformSystem(H_); }
    PolyVectorField vector_field() const { return uniform().vector_field(); }

    /// H == 0 (every a_i vanishes): a pure rotation.
    bool degenerate() const noexcept { return H_.is_zero(); }
    bool radial_is_zero() const;

    /// R(rho) = sum_i a_i rho^(2i)
    double R(double rho) const;

    friend FactoredSystem build_eq2(const BivarPoly& Q, std::vector<Rational> a);

private:
    FactoredSystem() = default;
    BivarPoly Q_;
    std::vector<Rational> a_;
    BivarPoly H_;
};

/// Throws NonHomogeneous (Q zero or not homogeneous, or constant) or EmptyRadial.
FactoredSystem build_eq2(const BivarPoly& Q, std::vector<Rational> a);

/// H = q h(x^2 + y^2, p), q = c * rotational_derivative(p). Throws NonHomogeneous
/// unless p is homogeneous of degree >= 1.
UniformSystem build_thm2(const BivarPoly& p, const Rational& c, const BivarPoly& h);
UniformSystem build_thm2(const Thm2Data& data);

struct DarbouxReport {
    BivarPoly f1, f2;
    BivarPoly K1, K2;
    BivarPoly div;
    bool invariant1_holds = false;
    bool invariant2_holds = false;
    bool identity_holds = false;
    /// mu = f1^e1 * f2^e2
    Rational e1;
    Rational e2;
};

/// Invariants f1 = r^2 and f2 = R with cofactors K1, K2 and the identity
/// (k+2)/2 K1 + K2 == div, all verified exactly. Throws IdentityViolation if any fails.
DarbouxReport darboux_report(const FactoredSystem& s);

/// Positive roots of R(rho), ascending, to `tol`. Throws ZeroRadial when R == 0.
std::vector<double> invariant_circles(const FactoredSystem& s, double tol = 1e-12);

} // namespace isochrone
