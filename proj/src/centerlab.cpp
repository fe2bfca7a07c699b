#include "isochrone/centerlab.hpp"

#include "isochrone/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace isochrone {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

// Boost compares the unscaled panel error with a scaled tolerance, so short
// intervals never converge; integrate over [0, 1] instead.
template <class F>
double gk_integrate(F&& f, double a, double b) {
    if (a == b) return 0.0;
    const double w = b - a;
    auto unit = [&](double u) { return f(a + w * u); };
    double err = 0.0;
    return w * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(unit, 0.0, 1.0, 12, 1e-13, &err);
}

template <class F>
double solve_bracketed(F&& f, double a, double b) {
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t max_iter = 200;
    auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, tol, max_iter);
    return 0.5 * (lo + hi);
}

bool near_circle(double rho, const std::vector<double>& circles) {
    return std::any_of(circles.begin(), circles.end(),
                       [rho](double c) { return std::abs(rho - c) <= 1e-12 * std::max(1.0, c); });
}

} // namespace

RadialQuadrature RadialQuadrature::containing(const FactoredSystem& s, double rho) {
    if (s.radial_is_zero()) throw Error(Errc::ZeroRadial, "R is identically zero");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw Error(Errc::OutsideValidInterval, "radius must be positive and finite, got " + std::to_string(rho));
    auto circles = invariant_circles(s);
    if (near_circle(rho, circles))
        throw Error(Errc::OutsideValidInterval, "radius " + std::to_string(rho) + " lies on an invariant circle");

    RadialQuadrature q;
    q.k_ = s.k();
    for (const auto& ai : s.radial()) q.a_.push_back(ai.get_d());
    q.m_ = 0;
    for (std::size_t i = 0; i < q.a_.size(); ++i)
        if (s.radial()[i] != 0) q.m_ = static_cast<unsigned>(i);
    q.lo_ = 0.0;
    q.hi_ = inf;
    for (double c : circles) {
        if (c < rho) q.lo_ = c;
        if (c > rho) {
            q.hi_ = c;
            break;
        }
    }
    if (q.unbounded()) {
        q.sign_ = sgn(s.radial()[q.m_]);
        q.ref_ = 1.0 > q.lo_ * (1 + 1e-6) ? 1.0 : 2.0 * q.lo_;
        q.split_ = std::max(1.0, 2.0 * q.lo_);
        q.tail_split_ = q.tail(q.split_);
    } else {
        // 1 is the reference unless it sits on (or next to) an end circle
        const bool one_inside = 1.0 > q.lo_ * (1 + 1e-6) && 1.0 < q.hi_ * (1 - 1e-6);
        q.ref_ = one_inside ? 1.0 : (q.lo_ > 0 ? std::sqrt(q.lo_ * q.hi_) : 0.5 * q.hi_);
        q.sign_ = q.R(q.ref_) > 0 ? 1 : -1;
        q.split_ = q.hi_;
    }
    return q;
}

RadialQuadrature RadialQuadrature::outer(const FactoredSystem& s) {
    if (s.radial_is_zero()) throw Error(Errc::ZeroRadial, "R is identically zero");
    auto circles = invariant_circles(s);
    double probe = circles.empty() ? 1.0 : 2.0 * circles.back() + 1.0;
    return containing(s, probe);
}

double RadialQuadrature::R(double r) const {
    double acc = 0.0, r2 = r * r;
    for (auto it = a_.rbegin(); it != a_.rend(); ++it) acc = acc * r2 + *it;
    return acc;
}

double RadialQuadrature::integrand(double r) const { return 1.0 / (std::pow(r, static_cast<int>(k_) + 1) * R(r)); }

double RadialQuadrature::integrate(double a, double b) const {
    // r = e^t flattens the r^(-k-1) growth near the origin.
    auto f = [this](double t) {
        double r = std::exp(t);
        return 1.0 / (std::pow(r, static_cast<int>(k_)) * R(r));
    };
    return gk_integrate(f, std::log(a), std::log(b));
}

double RadialQuadrature::tail(double rho) const {
    if (!unbounded()) throw Error(Errc::InvalidArgument, "tail integral needs the unbounded interval");
    if (!contains(rho)) throw Error(Errc::OutsideValidInterval, "radius outside the radial interval");
    if (rho >= split_) {
        // r = 1/s: integral over [0, 1/rho] of s^(k+2m-1) / sum_i a_i s^(2(m-i)).
        const int power = static_cast<int>(k_ + 2 * m_) - 1;
        auto f = [this, power](double s) {
            double s2 = s * s, den = 0.0;
            for (unsigned i = 0; i <= m_; ++i) den = den * s2 + a_[i];
            return std::pow(s, power) / den;
        };
        return gk_integrate(f, 0.0, 1.0 / rho);
    }
    return tail_split_ + integrate(rho, split_);
}

double RadialQuadrature::g(double rho) const {
    if (!contains(rho)) throw Error(Errc::OutsideValidInterval, "radius outside the radial interval");
    if (rho == ref_) return 0.0;
    if (unbounded() && rho > split_ && ref_ <= split_) return tail(ref_) - tail(rho);
    return rho > ref_ ? integrate(ref_, rho) : -integrate(rho, ref_);
}

std::optional<double> RadialQuadrature::invert(double target) const {
    const double T = sign_ * target;
    auto G = [this](double r) { return sign_ * g(r); };
    if (T == 0.0) return ref_;
    double a = ref_, b = ref_;
    if (T > 0) {
        if (unbounded()) {
            if (T >= sign_ * g_inf()) return std::nullopt;
            while (G(b) < T) {
                a = b;
                b *= 2.0;
            }
        } else {
            for (int it = 1; G(b) < T; ++it) {
                if (it > 1000) return std::nullopt;
                a = b;
                b = hi_ - (hi_ - ref_) * std::ldexp(1.0, -it);
                if (b >= hi_) return std::nullopt;
            }
        }
    } else {
        for (int it = 1; G(a) > T; ++it) {
            if (it > 1000) return std::nullopt;
            b = a;
            a = lo_ + (ref_ - lo_) * std::ldexp(1.0, -it);
            if (a <= lo_) return std::nullopt;
        }
    }
    if (a == b) return a;
    return solve_bracketed([&](double r) { return G(r) - T; }, a, b);
}

double RadialQuadrature::invert_tail(double value) const {
    if (!(value > 0.0)) return inf;
    auto f = [this, value](double r) { return std::abs(tail(r)) - value; };
    double a = split_, b = split_;
    if (f(split_) > 0) {
        while (f(b) > 0) {
            a = b;
            b *= 2.0;
        }
    } else {
        for (int it = 1; f(a) < 0; ++it) {
            b = a;
            a = lo_ + (split_ - lo_) * std::ldexp(1.0, -it);
            if (it > 1000 || a <= lo_) return a;
        }
    }
    if (a == b) return a;
    // Newton in t = log r; d|tail|/dr = -|integrand|.
    auto h = [&](double t) {
        double r = std::exp(t);
        return std::make_pair(f(r), -std::abs(integrand(r)) * r);
    };
    std::uintmax_t iters = 100;
    double t = boost::math::tools::newton_raphson_iterate(h, 0.5 * (std::log(a) + std::log(b)), std::log(a), std::log(b),
                                                          40, iters);
    return std::exp(t);
}

PolarRhs polar_rhs(const FactoredSystem& s) {
    return {restrict_to_circle(s.Q()), RadialQuadrature::outer(s)};
}

bool is_center(const FactoredSystem& s) { return mean_is_zero(restrict_to_circle(s.Q())); }

ConservedQuantity::ConservedQuantity(const FactoredSystem& s) : system_(s) {
    TrigPoly trig = restrict_to_circle(s.Q());
    if (!mean_is_zero(trig)) throw Error(Errc::NotACenter, "Q has nonzero mean on the unit circle");
    F_ = antiderivative(trig);
    if (s.radial_is_zero()) return;
    circles_ = invariant_circles(s);
    double lo = 0.0;
    for (double c : circles_) {
        pieces_.push_back(RadialQuadrature::containing(s, lo > 0 ? std::sqrt(lo * c) : 0.5 * c));
        lo = c;
    }
    pieces_.push_back(RadialQuadrature::outer(s));
}

double ConservedQuantity::operator()(double x, double y) const {
    const double rho = std::hypot(x, y);
    const double theta = std::atan2(y, x);
    if (pieces_.empty()) return rho;  // pure rotation: circles are the level sets
    if (!(rho > 0.0) || near_circle(rho, circles_))
        throw Error(Errc::OutsideValidInterval, "conserved quantity is undefined at the origin and on invariant circles");
    for (const auto& piece : pieces_)
        if (piece.contains(rho)) return piece.g(rho) - F_.evaluate(theta);
    throw Error(Errc::OutsideValidInterval, "radius outside every radial interval");
}

ConservedQuantity conserved_quantity(const FactoredSystem& s) { return ConservedQuantity(s); }

ScalarTrajectory polar_trajectory(const UniformSystem& s, double theta0, double rho0, double theta1,
                                  std::span<const double> sample_angles, const OdeSettings& settings,
                                  bool record_steps) {
    FastPoly H(s.H());
    auto rhs = [&H](double theta, double rho) { return rho * H(rho * std::cos(theta), rho * std::sin(theta)); };
    return integrate_scalar(rhs, theta0, rho0, theta1, sample_angles, settings, record_steps);
}

ReturnMapResult return_map(const UniformSystem& s, double rho0, const OdeSettings& settings) {
    if (!(rho0 > 0.0)) throw Error(Errc::InvalidArgument, "return map needs rho0 > 0");
    ReturnMapResult out;
    if (s.is_rotation()) {
        out.rho_end = rho0;
        return out;
    }
    auto traj = polar_trajectory(s, 0.0, rho0, two_pi, {}, settings);
    out.blew_up = traj.blew_up;
    out.theta_escape = traj.t_escape;
    out.rho_end = traj.end;
    return out;
}

namespace {

struct Classification {
    GlobalMaxima maxima;
    TrigPoly F_eff;
    std::optional<RadialQuadrature> radial;
    bool unbounded_region = false;
};

Classification prepare(const FactoredSystem& s, const ClassifySettings& settings) {
    TrigPoly trig = restrict_to_circle(s.Q());
    if (!mean_is_zero(trig))
        throw Error(Errc::NotACenter, "Q = " + to_string(s.Q()) + " has mean " + to_string(trig.c0()) + " on the unit circle");
    Classification c;
    if (s.degenerate()) {
        c.unbounded_region = true;
        return c;
    }
    TrigPoly F = antiderivative(trig);
    c.radial = RadialQuadrature::outer(s);
    c.F_eff = F * Rational(c.radial->sign());
    c.maxima = global_maxima(c.F_eff, settings.cluster_tol);
    if (c.maxima.degenerate) c.unbounded_region = true;
    return c;
}

std::optional<double> boundary_at(const Classification& c, double theta) {
    if (c.unbounded_region) return std::nullopt;
    double gap = c.maxima.value - c.F_eff.evaluate(theta);
    if (gap <= 1e-14 * std::max(1.0, c.F_eff.amplitude_bound())) return std::nullopt;
    return c.radial->invert_tail(gap);
}

} // namespace

CenterReport classify(const FactoredSystem& s, const ClassifySettings& settings) {
    Classification c = prepare(s, settings);
    CenterReport r;
    r.is_center = true;
    r.k = s.k();
    r.settings = settings;
    if (!s.radial_is_zero()) r.invariant_circles = invariant_circles(s);
    if (c.unbounded_region) {
        r.unbounded_region = true;
        r.nu = 0;
        r.type_label = "B^0";
        return r;
    }
    r.nu = static_cast<unsigned>(c.maxima.argmax.size());
    r.type_label = "B^" + std::to_string(r.nu);
    r.asymptote_directions = c.maxima.argmax;
    r.max_F = c.maxima.value;
    r.g_inf = c.radial->g_inf();
    const bool odd = r.k % 2 == 1;
    r.generic = odd ? r.nu == 1 : r.nu == 2;
    r.tied = r.nu > (odd ? 1u : 2u);
    for (std::size_t i = 0; i < settings.grid; ++i) {
        double theta = two_pi * static_cast<double>(i) / static_cast<double>(settings.grid);
        r.boundary_samples.push_back({theta, boundary_at(c, theta)});
    }
    if (r.nu > r.k) throw std::logic_error("classification produced nu = " + std::to_string(r.nu) + " > k");
    return r;
}

std::optional<double> boundary_radius(const FactoredSystem& s, double theta, const ClassifySettings& settings) {
    return boundary_at(prepare(s, settings), theta);
}

double relative_variation(const UniformSystem& s, const std::function<double(double, double)>& f,
                          const PlanarState& start, double t1, const OdeSettings& settings) {
    FastPoly H(s.H());
    auto rhs = [&H](const PlanarState& p) {
        double h = H(p[0], p[1]);
        return PlanarState{-p[1] + p[0] * h, p[0] + p[1] * h};
    };
    auto traj = integrate_planar(rhs, start, t1, settings);
    if (traj.blew_up) throw Error(Errc::OutsideValidInterval, "trajectory escaped before the end of the interval");
    const double f0 = f(start[0], start[1]);
    double lo = f0, hi = f0;
    for (const auto& p : traj.states) {
        double v = f(p[0], p[1]);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return (hi - lo) / std::abs(f0);
}

double isochronicity_check(const UniformSystem& s, int samples, std::uint64_t seed, double max_radius,
                           const OdeSettings& settings) {
    FastPoly H(s.H());
    auto rhs = [&H](const PlanarState& p) {
        double h = H(p[0], p[1]);
        return PlanarState{-p[1] + p[0] * h, p[0] + p[1] * h};
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.0, max_radius), angle(0.0, two_pi);
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        double r0 = max_radius - radius(rng);  // (0, max_radius]
        double a0 = angle(rng);
        auto traj = integrate_planar(rhs, {r0 * std::cos(a0), r0 * std::sin(a0)}, two_pi, settings);
        double unwrapped = std::atan2(traj.states.front()[1], traj.states.front()[0]);
        const double start = unwrapped;
        double prev = unwrapped;
        for (const auto& p : traj.states) {
            auto v = rhs(p);
            double r2 = p[0] * p[0] + p[1] * p[1];
            worst = std::max(worst, std::abs((p[0] * v[1] - p[1] * v[0]) / r2 - 1.0));
            double a = std::atan2(p[1], p[0]);
            double d = std::remainder(a - prev, two_pi);
            unwrapped += d;
            prev = a;
        }
        double elapsed = traj.t.back();
        if (elapsed > 0) worst = std::max(worst, std::abs((unwrapped - start) / elapsed - 1.0));
    }
    return worst;
}

} // namespace isochrone
