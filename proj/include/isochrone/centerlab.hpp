#pragma once

#include "isochrone/ode.hpp"
#include "isochrone/system.hpp"
#include "isochrone/trig.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace isochrone {

/// g(rho) = integral from rho_ref to rho of dr / (r^(k+1) R(r)) on one interval
/// of the positive axis free of roots of R.
///
/// On the unbounded interval the tail integral from rho to infinity is
/// evaluated directly after the substitution r = 1/s, which turns it into a
/// proper integral over [0, 1/rho]; g_inf = g(infinity) is finite because the
/// integrand decays like r^(-k-1-2m).
class RadialQuadrature {
public:
    /// The root-free interval of R containing rho. Throws OutsideValidInterval
    /// for rho <= 0 or a root of R, ZeroRadial when R == 0.
    static RadialQuadrature containing(const FactoredSystem& s, double rho);
    /// The unbounded interval beyond the largest positive root of R.
    static RadialQuadrature outer(const FactoredSystem& s);

    unsigned k() const noexcept { return k_; }
    double reference() const noexcept { return ref_; }
    double low() const noexcept { return lo_; }
    double high() const noexcept { return hi_; }
    bool unbounded() const noexcept { return hi_ == std::numeric_limits<double>::infinity(); }
    /// Sign of R on the interval; g increases when positive.
    int sign() const noexcept { return sign_; }
    bool contains(double rho) const noexcept { return rho > lo_ && rho < hi_; }

    double integrand(double r) const;
    double R(double r) const;
    double g(double rho) const;
    /// Integral from rho to infinity; unbounded interval only.
    double tail(double rho) const;
    double g_inf() const { return tail(ref_); }

    /// rho in the interval with g(rho) == target, if one exists.
    std::optional<double> invert(double target) const;
    /// rho with |tail(rho)| == value for value > 0; unbounded interval only.
    double invert_tail(double value) const;

private:
    RadialQuadrature() = default;
    double integrate(double a, double b) const;  // a < b inside the interval

    unsigned k_ = 0;
    unsigned m_ = 0;                 // index of the last nonzero radial coefficient
    std::vector<double> a_;
    double lo_ = 0.0;
    double hi_ = 0.0;
    double ref_ = 1.0;
    double split_ = 1.0;             // tail uses the reciprocal substitution beyond this radius
    double tail_split_ = 0.0;        // tail(split_), cached
    int sign_ = 1;
};

/// dρ/dθ = ρ^(k+1) Q(cos θ, sin θ) R(ρ), split into its angular and radial factors.
struct PolarRhs {
    TrigPoly trig;
    RadialQuadrature radial;
};

PolarRhs polar_rhs(const FactoredSystem& s);

/// Exact zero-mean test of Q on the unit circle.
bool is_center(const FactoredSystem& s);

/// Phi(x, y) = g(rho) - F(theta), constant along orbits inside one root-free annulus.
class ConservedQuantity {
public:
    explicit ConservedQuantity(const FactoredSystem& s);

    /// Throws OutsideValidInterval at the origin or on an invariant circle.
    double operator()(double x, double y) const;
    const TrigPoly& F() const noexcept { return F_; }

private:
    FactoredSystem system_;
    TrigPoly F_;
    std::vector<double> circles_;
    std::vector<RadialQuadrature> pieces_;
};

/// Throws NotACenter when the mean condition fails.
ConservedQuantity conserved_quantity(const FactoredSystem& s);

struct ReturnMapResult {
    bool blew_up = false;
    double rho_end = 0.0;
    double theta_escape = 0.0;
};

/// rho(2 pi) for the polar equation drho/dtheta = rho H(rho cos theta, rho sin theta),
/// integrated from rho(0) = rho0 with an adaptive embedded Runge-Kutta pair.
ReturnMapResult return_map(const UniformSystem& s, double rho0, const OdeSettings& settings = {});

/// The same polar integration, sampled at the given ascending angles in [theta0, theta1].
ScalarTrajectory polar_trajectory(const UniformSystem& s, double theta0, double rho0, double theta1,
                                  std::span<const double> sample_angles, const OdeSettings& settings = {},
                                  bool record_steps = false);

struct BoundarySample {
    double theta;
    std::optional<double> rho;  // nullopt: the boundary escapes to infinity along this ray
};

struct ClassifySettings {
    std::size_t grid = 720;
    double cluster_tol = 1e-9;
    double angle_tol = 1e-12;
};

struct CenterReport {
    bool is_center = false;
    unsigned k = 0;
    unsigned nu = 0;
    std::string type_label;
    std::vector<double> invariant_circles;
    std::vector<double> asymptote_directions;
    std::vector<BoundarySample> boundary_samples;
    bool generic = false;
    bool tied = false;
    /// H == 0 or Q vanishes on the circle: the whole plane is the center region.
    bool unbounded_region = false;
    double max_F = 0.0;
    double g_inf = 0.0;
    ClassifySettings settings;
};

/// B^nu type of the center: nu counts the global maxima of F (of -F when R < 0
/// far out), where the boundary orbit escapes to infinity.
/// Throws NotACenter when the mean condition fails.
CenterReport classify(const FactoredSystem& s, const ClassifySettings& settings = {});

/// Radius of the center-region boundary on the ray at angle theta; nullopt
/// when that ray is an asymptote direction or the whole plane is the region.
std::optional<double> boundary_radius(const FactoredSystem& s, double theta, const ClassifySettings& settings = {});

/// (max f - min f) / |f(start)| along the Cartesian trajectory from `start`
/// over t in [0, t1]. Points the evaluator rejects abort with its error.
double relative_variation(const UniformSystem& s, const std::function<double(double, double)>& f,
                          const PlanarState& start, double t1, const OdeSettings& settings = {});

/// Max |dtheta/dt - 1| over Cartesian trajectories from `samples` random starting
/// points with radius in (0, max_radius]; both the pointwise angular speed of
/// the field and the mean turning rate of each integrated orbit are checked.
double isochronicity_check(const UniformSystem& s, int samples, std::uint64_t seed = 7, double max_radius = 0.3,
                           const OdeSettings& settings = {1e-12, 1e-14});

} // namespace isochrone
