#pragma once

#include "isochrone/polynomial.hpp"
#include "isochrone/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace isochrone {

/// One Fourier mode a*cos(j t) + b*sin(j t), j >= 1.
struct Harmonic {
    Rational a;
    Rational b;

    bool operator==(const Harmonic&) const = default;
};

/// Finite Fourier series c0 + sum_j (a_j cos j t + b_j sin j t) with exact
/// rational coefficients. All-zero harmonics are never stored.
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(const Rational& c0) : c0_(c0) {}

    static TrigPoly cos(unsigned j, const Rational& a = 1);
    static TrigPoly sin(unsigned j, const Rational& b = 1);

    const Rational& c0() const noexcept { return c0_; }
    const std::map<unsigned, Harmonic>& harmonics() const noexcept { return h_; }
    Harmonic harmonic(unsigned j) const;

    /// Largest stored harmonic index, 0 for a constant.
    unsigned max_harmonic() const noexcept { return h_.empty() ? 0 : h_.rbegin()->first; }
    bool is_zero() const noexcept { return c0_ == 0 && h_.empty(); }
    bool is_constant() const noexcept { return h_.empty(); }

    /// Adds v*cos(n t) or v*sin(n t); n may be zero or negative.
    void add_cos(long n, const Rational& v);
    void add_sin(long n, const Rational& v);

    double evaluate(double theta) const;
    double evaluate_derivative(double theta) const;
    /// Sum of |c0| and every |a_j| + |b_j|; bounds |t| on the real line.
    double amplitude_bound() const;

    TrigPoly derivative() const;

    TrigPoly& operator+=(const TrigPoly& other);
    TrigPoly& operator-=(const TrigPoly& other);
    TrigPoly& operator*=(const Rational& c);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator*(TrigPoly a, const Rational& c) { return a *= c; }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    bool operator==(const TrigPoly&) const = default;

private:
    Rational c0_ = 0;
    std::map<unsigned, Harmonic> h_;
};

/// q(cos t, sin t) expanded exactly with power-reduction identities.
/// Throws NonHomogeneous when `homogeneous_required` and q is not homogeneous.
TrigPoly restrict_to_circle(const BivarPoly& q, bool homogeneous_required = true);

/// Exact test of the zero-mean condition c0 == 0.
bool mean_is_zero(const TrigPoly& t);

/// F with F(0) = 0 and F' = t. Throws NonzeroMean when c0 != 0.
TrigPoly antiderivative(const TrigPoly& t);

enum class Crossing { Upward, Downward, Touch };

struct TrigZero {
    double theta;
    Crossing crossing;
};

/// Every real zero in [0, 2pi), located to within `tol`: a grid of 64*max_harmonic
/// samples, bisection on sign changes, and touch zeros from critical points.
/// Throws IdenticallyZero for the zero series.
std::vector<TrigZero> zeros_on_period(const TrigPoly& t, double tol = 1e-12);

struct GlobalMaxima {
    double value = 0.0;
    std::vector<double> argmax;  // ascending, in [0, 2pi)
    bool degenerate = false;     // constant input: every angle is a maximum, argmax left empty
    bool tied = false;           // several maxima within the clustering tolerance
};

GlobalMaxima global_maxima(const TrigPoly& t, double cluster_tol = 1e-9);

struct SymmetryAxes {
    bool every_angle = false;    // constant input
    std::vector<double> axes;    // theta* in [0, pi), ascending

    bool any() const noexcept { return every_angle || !axes.empty(); }
};

/// Angles theta* with t(2 theta* - theta) == t(theta); every harmonic
/// a cos(j t) + b sin(j t) must satisfy a sin(j theta*) == b cos(j theta*).
/// Throws IdenticallyZero for the zero series.
SymmetryAxes symmetry_axes(const TrigPoly& t, double angle_tol = 1e-12);

/// Exact axis test for a1 cos t + a3 cos 3t + b1 sin t + b3 sin 3t:
/// a1 b3 (a1^2 - 3 b1^2) == a3 b1 (3 a1^2 - b1^2).
bool degree3_axis_criterion(const Rational& a1, const Rational& a3, const Rational& b1, const Rational& b3);

/// Maps an angle into [0, period).
double wrap_angle(double theta, double period);

} // namespace isochrone
