#include "isochrone/battery.hpp"

#include "isochrone/centerlab.hpp"
#include "isochrone/commutant.hpp"
#include "isochrone/errors.hpp"
#include "isochrone/trig.hpp"

#include <boost/math/tools/roots.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace isochrone {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

BivarPoly X() { return BivarPoly::x(); }
BivarPoly Y() { return BivarPoly::y(); }

} // namespace

BivarPoly counterexample_Q() { return parse_poly("y^3 - 3*x*y^2 + 2*x^2*y"); }

FactoredSystem counterexample_system(const BivarPoly& Q) { return build_eq2(Q, {Rational(1), Rational(1)}); }

BivarPoly sine_power(unsigned k) {
    // (x + i y)^k = sum_j C(k, j) x^(k-j) (i y)^j; odd j give the imaginary part.
    BivarPoly out;
    Integer binom = 1;
    for (unsigned j = 0; j <= k; ++j) {
        if (j % 2 == 1) out.add_term(Rational((j % 4 == 1) ? binom : Integer(-binom)), k - j, j);
        binom = binom * (k - j) / (j + 1);
    }
    return out;
}

namespace sampling {

Rational rational(Rng& rng, long bound, long max_den) {
    std::uniform_int_distribution<long> num(-bound, bound), den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

Rational nonzero_rational(Rng& rng, long bound, long max_den) {
    for (;;) {
        Rational q = rational(rng, bound, max_den);
        if (q != 0) return q;
    }
}

BivarPoly homogeneous(Rng& rng, unsigned degree, long bound, long max_den) {
    BivarPoly p;
    while (p.is_zero())
        for (unsigned j = 0; j <= degree; ++j) p.add_term(rational(rng, bound, max_den), degree - j, j);
    return p;
}

BivarPoly polynomial(Rng& rng, unsigned low, unsigned high, long bound, long max_den) {
    BivarPoly p;
    for (unsigned d = low; d <= high; ++d)
        for (unsigned j = 0; j <= d; ++j) p.add_term(rational(rng, bound, max_den), d - j, j);
    return p;
}

BivarPoly zero_mean_homogeneous(Rng& rng, unsigned k, long bound, long max_den) {
    for (;;) {
        BivarPoly q = homogeneous(rng, k, bound, max_den);
        if (k % 2 == 0) q -= BivarPoly::radius_squared(k / 2) * restrict_to_circle(q).c0();
        if (!q.is_zero()) return q;
    }
}

PolyVectorField field(Rng& rng, unsigned max_degree, long bound) {
    return {polynomial(rng, 0, max_degree, bound, 3), polynomial(rng, 0, max_degree, bound, 3)};
}

} // namespace sampling

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) detail << "; ";
            ok = false;
            detail << what;
        }
    }
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

// Fourier coefficients of f on [0, 2pi) by the N-point trapezoid rule, exact
// for trigonometric polynomials of degree < N/2.
struct Projection {
    double c0 = 0;
    std::vector<double> a, b;
};

Projection project(const std::function<double(double)>& f, unsigned harmonics, unsigned N = 64) {
    Projection p;
    p.a.assign(harmonics + 1, 0.0);
    p.b.assign(harmonics + 1, 0.0);
    for (unsigned n = 0; n < N; ++n) {
        double t = two_pi * n / N, v = f(t);
        p.c0 += v / N;
        for (unsigned j = 1; j <= harmonics; ++j) {
            p.a[j] += 2.0 * v * std::cos(j * t) / N;
            p.b[j] += 2.0 * v * std::sin(j * t) / N;
        }
    }
    return p;
}

// ------------------------------------------------------------------ 1
Check fourier_restriction(const BatteryInput& in) {
    Check c;
    TrigPoly t = restrict_to_circle(in.Q);
    TrigPoly expected = TrigPoly::cos(1, Rational(-3, 4)) + TrigPoly::sin(1, Rational(5, 4)) +
                        TrigPoly::cos(3, Rational(3, 4)) + TrigPoly::sin(3, Rational(1, 4));
    c.require(t == expected, "exact restriction differs from -3/4 cos t + 5/4 sin t + 3/4 cos 3t + 1/4 sin 3t");
    Projection p = project([&](double th) { return in.Q.evaluate(std::cos(th), std::sin(th)); }, 8);
    double err = std::abs(p.c0 - t.c0().get_d());
    for (unsigned j = 1; j <= 8; ++j) {
        Harmonic h = t.harmonic(j);
        err = std::max({err, std::abs(p.a[j] - h.a.get_d()), std::abs(p.b[j] - h.b.get_d())});
    }
    c.require(err <= 1e-12, "quadrature projection differs by " + fmt(err));
    c.detail << (c.ok ? "exact match; projection error " + fmt(err) : "");
    return c;
}

// ------------------------------------------------------------------ 2
Check center_condition(const BatteryInput& in) {
    Check c;
    c.require(mean_is_zero(restrict_to_circle(in.Q)), "zero mean fails for the cubic");
    sampling::Rng rng(in.seed + 2);
    int odd_ok = 0;
    for (int n = 0; n < 50; ++n) {
        unsigned k = 2 * static_cast<unsigned>(rng() % 4) + 1;
        if (mean_is_zero(restrict_to_circle(sampling::homogeneous(rng, k)))) ++odd_ok;
    }
    c.require(odd_ok == 50, std::to_string(50 - odd_ok) + " odd-degree Q with nonzero mean");
    c.require(!mean_is_zero(restrict_to_circle(X() * X())), "x^2 reported with zero mean");
    if (c.ok) c.detail << "cubic and 50/50 random odd Q have zero mean; x^2 has mean 1/2";
    return c;
}

// ------------------------------------------------------------------ 3
Check return_map_periodicity(const BatteryInput& in) {
    Check c;
    const UniformSystem u = counterexample_system(in.Q).uniform();
    double worst = 0.0;
    for (double rho0 : {0.05, 0.1, 0.2, 0.3}) {
        auto r = return_map(u, rho0);
        if (r.blew_up) {
            c.require(false, "blow-up from rho0 = " + fmt(rho0));
            continue;
        }
        worst = std::max(worst, std::abs(r.rho_end - rho0));
    }
    c.require(worst <= 1e-8, "cubic system return-map error " + fmt(worst));
    sampling::Rng rng(in.seed + 3);
    double worst2 = 0.0;
    for (int n = 0; n < 5; ++n) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 4);
        Thm2Data d{sampling::homogeneous(rng, k, 3, 2), sampling::nonzero_rational(rng, 2, 2),
                   sampling::polynomial(rng, 0, 2, 3, 2)};
        auto r = return_map(build_thm2(d), 0.05);
        if (r.blew_up) {
            c.require(false, "generalized system blew up from rho0 = 0.05");
            continue;
        }
        worst2 = std::max(worst2, std::abs(r.rho_end - 0.05));
    }
    c.require(worst2 <= 1e-8, "generalized family return-map error " + fmt(worst2));
    if (c.ok) c.detail << "max |rho(2pi) - rho0|: cubic " << fmt(worst) << ", generalized " << fmt(worst2);
    return c;
}

// ------------------------------------------------------------------ 4
Check first_integral(const BatteryInput& in) {
    Check c;
    const FactoredSystem fs = counterexample_system(in.Q);
    const UniformSystem u = fs.uniform();
    auto I = [](double x, double y) {
        double r2 = x * x + y * y, r = std::sqrt(r2);
        double d = 1 - 3 * r2 - 4 * x * x * x - 3 * x * y * y - 3 * y * y * y - 3 * r2 * r * std::atan(r);
        return r2 * r2 * r2 / (d * d);
    };
    ConservedQuantity phi(fs);
    double worst_I = 0.0, worst_phi = 0.0;
    const double starts[5][2] = {{0.1, 0.3}, {0.15, 1.4}, {0.2, 2.5}, {0.25, 3.6}, {0.3, 4.9}};
    for (const auto& s : starts) {
        PlanarState p0{s[0] * std::cos(s[1]), s[0] * std::sin(s[1])};
        worst_I = std::max(worst_I, relative_variation(u, I, p0, two_pi));
        worst_phi = std::max(worst_phi, relative_variation(u, [&](double x, double y) { return phi(x, y); }, p0, two_pi));
    }
    c.require(worst_I <= 1e-6, "closed-form integral varies by " + fmt(worst_I));
    c.require(worst_phi <= 1e-7, "quadrature integral varies by " + fmt(worst_phi));
    if (c.ok) c.detail << "relative variation: closed form " << fmt(worst_I) << ", quadrature " << fmt(worst_phi);
    return c;
}

// ------------------------------------------------------------------ 5
Check classification(const BatteryInput& in) {
    Check c;
    for (unsigned k = 1; k <= 5; ++k) {
        CenterReport r = classify(build_eq2(sine_power(k), {Rational(1)}));
        c.require(r.nu == k, "sin " + std::to_string(k) + "t gives nu = " + std::to_string(r.nu));
    }
    CenterReport r9 = classify(counterexample_system(in.Q));
    c.require(r9.nu == 1 && r9.type_label == "B^1", "cubic system gives " + r9.type_label);
    c.require(r9.asymptote_directions.size() == 1 && std::abs(r9.asymptote_directions[0] - pi) <= 1e-9,
              "cubic system asymptote is not at pi");
    CenterReport r2 = classify(build_eq2(X() * X() - Y() * Y(), {Rational(1)}));
    c.require(r2.nu == 2, "x^2 - y^2 gives nu = " + std::to_string(r2.nu));
    if (r2.asymptote_directions.size() == 2)
        c.require(std::abs(r2.asymptote_directions[1] - r2.asymptote_directions[0] - pi) <= 1e-9,
                  "x^2 - y^2 asymptotes are not antipodal");
    if (c.ok) c.detail << "sin kt: nu = k for k = 1..5; cubic B^1 at pi; x^2 - y^2 B^2 antipodal";
    return c;
}

// ------------------------------------------------------------------ 6
Check boundary(const BatteryInput& in) {
    Check c;
    const FactoredSystem fs = counterexample_system(in.Q);
    auto rb = boundary_radius(fs, 0.0);
    c.require(rb.has_value(), "boundary radius at theta = 0 is infinite");
    if (!rb) return c;
    // Closed form of the radial integral for R = 1 + r^2 and k = 3.
    auto g = [](double r) { return -1.0 / (3 * r * r * r) + 1.0 / r + std::atan(r); };
    const double target = pi / 2 - 8.0 / 3.0;
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t iters = 200;
    auto [lo, hi] = boost::math::tools::bisect([&](double r) { return g(r) - target; }, 0.1, 2.0, tol, iters);
    const double closed = 0.5 * (lo + hi);
    // Escape-time bisection: orbits started beyond the boundary blow up within one turn.
    const UniformSystem u = fs.uniform();
    double a = 0.05, b = 2.0;
    c.require(!return_map(u, a).blew_up && return_map(u, b).blew_up, "escape bracket [0.05, 2] invalid");
    for (int it = 0; it < 40 && c.ok; ++it) {
        double mid = 0.5 * (a + b);
        (return_map(u, mid).blew_up ? b : a) = mid;
    }
    const double rk = 0.5 * (a + b);
    c.require(std::abs(*rb - closed) <= 1e-9, "quadrature " + fmt(*rb) + " vs closed form " + fmt(closed));
    c.require(std::abs(*rb - rk) <= 1e-4, "quadrature " + fmt(*rb) + " vs escape bisection " + fmt(rk));
    if (c.ok) {
        c.detail.precision(10);
        c.detail << "rho_b(0) = " << *rb << "; closed form " << closed << "; escape bisection " << rk;
    }
    return c;
}

// ------------------------------------------------------------------ 7
Check commutant(const BatteryInput& in) {
    Check c;
    const FactoredSystem fs = counterexample_system(in.Q);
    const UniformSystem u = fs.uniform();
    auto degrees = admissible_top_degrees(u);
    c.require(degrees == std::set<unsigned>{1, 6}, "admissible top degrees differ from {1, 6}");
    CommutantBasis b = commutant_nullspace(u.vector_field(), 6);
    c.require(b.dimension() == 1 && b.contains_self,
              "nullspace at degree 6 has dimension " + std::to_string(b.dimension()) + (b.contains_self ? "" : " without X"));
    const FactoredSystem even = build_eq2(X() * X() - Y() * Y(), {Rational(1)});
    CommutantBasis be = commutant_nullspace(even.vector_field(), 4);
    auto radial = radial_commuter(even);
    bool has_radial = std::holds_alternative<PolyVectorField>(radial) && in_span(be.basis, std::get<PolyVectorField>(radial));
    c.require(be.dimension() >= 2 && has_radial && be.contains_self, "x^2 - y^2 commutant lacks X or the radial commuter");
    if (c.ok)
        c.detail << "degrees {1, 6}; cubic commutant dimension 1 spanned by X; x^2 - y^2 commutant dimension "
                 << be.dimension();
    return c;
}

// ------------------------------------------------------------------ 8
Check reversibility(const BatteryInput& in) {
    Check c;
    SymmetryAxes axes = symmetry_axes(restrict_to_circle(in.Q));
    c.require(!axes.any(), "cubic restriction has a symmetry axis");
    sampling::Rng rng(in.seed + 8);
    int agree = 0, with_axis = 0;
    for (int n = 0; n < 100; ++n) {
        Rational a1, a3, b1, b3;
        if (n % 2 == 0) {
            // Axis at phi with tan(phi/2) rational keeps every coefficient rational.
            Rational t = sampling::rational(rng, 4, 3), A = sampling::rational(rng), B = sampling::rational(rng);
            Rational cs = (1 - t * t) / (1 + t * t), sn = 2 * t / (1 + t * t);
            Rational c3 = 4 * cs * cs * cs - 3 * cs, s3 = 3 * sn - 4 * sn * sn * sn;
            a1 = A * cs, b1 = A * sn, a3 = B * c3, b3 = B * s3;
        } else {
            a1 = sampling::rational(rng), a3 = sampling::rational(rng), b1 = sampling::rational(rng), b3 = sampling::rational(rng);
        }
        TrigPoly t = TrigPoly::cos(1, a1) + TrigPoly::sin(1, b1) + TrigPoly::cos(3, a3) + TrigPoly::sin(3, b3);
        bool phase = t.is_zero() || symmetry_axes(t).any();
        bool exact = degree3_axis_criterion(a1, a3, b1, b3);
        if (phase == exact) ++agree;
        if (exact) ++with_axis;
    }
    c.require(agree == 100, "criterion and phase test disagree on " + std::to_string(100 - agree) + " quadruples");
    const BivarPoly H = counterexample_system(in.Q).H();
    const bool f7 = check_form7(H).matches, f8 = check_form8(H).matches, pred = predicts_polynomial_commuter(H);
    c.require(!f7, "H matches form7");
    c.require(!f8, "H matches form8");
    c.require(!pred, "a polynomial commuter is predicted");
    if (c.ok)
        c.detail << "no axes; 100/100 quadruples agree (" << with_axis << " with an axis); form7, form8 and prediction all false";
    return c;
}

// ------------------------------------------------------------------ 9
Check darboux(const BatteryInput& in) {
    Check c;
    auto verify = [&](const FactoredSystem& s) {
        try {
            DarbouxReport r = darboux_report(s);
            const PolyVectorField v = s.vector_field();
            Rational half(static_cast<long>(s.k()) + 2, 2);
            half.canonicalize();
            return apply(v, r.f1) == r.K1 * r.f1 && apply(v, r.f2) == r.K2 * r.f2 && r.K1 * half + r.K2 == divergence(v);
        } catch (const Error&) {
            return false;
        }
    };
    c.require(verify(counterexample_system(in.Q)), "identities fail for the cubic system");
    sampling::Rng rng(in.seed + 9);
    int good = 0;
    for (int n = 0; n < 30; ++n) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 6);
        std::vector<Rational> a(1 + rng() % 4);
        for (auto& ai : a) ai = sampling::rational(rng);
        if (verify(build_eq2(sampling::homogeneous(rng, k), a))) ++good;
    }
    c.require(good == 30, std::to_string(30 - good) + " random systems violate an identity");
    if (c.ok) c.detail << "X(f1) = K1 f1, X(f2) = K2 f2 and the divergence identity hold for the cubic and 30/30 random systems";
    return c;
}

// ------------------------------------------------------------------ 10
Check properties(const BatteryInput& in) {
    Check c;
    sampling::Rng rng(in.seed + 10);

    int euler = 0;
    for (int n = 0; n < 50; ++n) {
        unsigned d = static_cast<unsigned>(rng() % 9);
        BivarPoly p = sampling::homogeneous(rng, d);
        auto [px, py] = partials(p);
        if (X() * px + Y() * py == p * Rational(d)) ++euler;
    }
    c.require(euler == 50, "Euler identity fails");

    int brackets = 0;
    for (int n = 0; n < 20; ++n) {
        auto f = sampling::field(rng, 3), g = sampling::field(rng, 3), h = sampling::field(rng, 3);
        bool anti = lie_bracket(f, g) == Rational(-1) * lie_bracket(g, f);
        auto jac = lie_bracket(f, lie_bracket(g, h)) + lie_bracket(g, lie_bracket(h, f)) + lie_bracket(h, lie_bracket(f, g));
        if (anti && jac.is_zero()) ++brackets;
    }
    c.require(brackets == 20, "bracket antisymmetry or Jacobi fails");

    int trips = 0;
    for (int n = 0; n < 50; ++n) {
        BivarPoly p = sampling::polynomial(rng, 0, 1 + static_cast<unsigned>(rng() % 8));
        BivarPoly sum;
        bool homogeneous = true;
        for (const auto& comp : homogeneous_components(p)) {
            homogeneous = homogeneous && comp.part.is_homogeneous() && comp.part.degree() == static_cast<int>(comp.degree);
            sum += comp.part;
        }
        if (homogeneous && sum == p) ++trips;
    }
    c.require(trips == 50, "homogeneous decomposition round trip fails");

    double worst = 0.0;
    int nu_ok = 0;
    for (int n = 0; n < 20; ++n) {
        unsigned k = 1 + static_cast<unsigned>(rng() % 5);
        std::vector<Rational> a(1 + rng() % 3);
        for (auto& ai : a) ai = sampling::rational(rng, 3, 2);
        a[0] = sampling::nonzero_rational(rng, 3, 2);
        const FactoredSystem fs = build_eq2(sampling::zero_mean_homogeneous(rng, k, 3, 2), a);
        ClassifySettings cs;
        cs.grid = 64;
        CenterReport cr;
        try {
            cr = classify(fs, cs);
            if (cr.nu <= k && (k % 2 == 1 || cr.nu % 2 == 0)) ++nu_ok;
        } catch (const std::logic_error&) {
            continue;
        }
        double r = 1.0;
        for (const auto& b : cr.boundary_samples)
            if (b.rho) r = std::min(r, *b.rho);
        for (double circle : cr.invariant_circles) r = std::min(r, circle);
        const double rho0 = 0.5 * r;
        RadialQuadrature q = RadialQuadrature::containing(fs, rho0);
        const TrigPoly F = antiderivative(restrict_to_circle(fs.Q()));
        std::vector<double> angles;
        for (int i = 1; i < 16; ++i) angles.push_back(two_pi * i / 16);
        auto traj = polar_trajectory(fs.uniform(), 0.0, rho0, two_pi, angles);
        const double g0 = q.g(rho0);
        std::vector<Sample> rk = traj.samples;
        rk.push_back({two_pi, traj.end});
        for (const auto& s : rk) {
            auto rq = q.invert(g0 + F.evaluate(s.t));
            worst = std::max(worst, rq ? std::abs(*rq - s.value) : INFINITY);
        }
    }
    c.require(worst <= 1e-7, "quadrature and integration differ by " + fmt(worst));
    c.require(nu_ok == 20, std::to_string(20 - nu_ok) + " systems violate nu <= k or even-k parity");
    if (c.ok)
        c.detail << "Euler 50/50, brackets 20/20, round trips 50/50, nu <= k 20/20; quadrature vs integration " << fmt(worst);
    return c;
}

struct Spec {
    const char* name;
    double limit;
    Check (*run)(const BatteryInput&);
};

const Spec criteria[] = {
    {"Fourier restriction", 1.0, fourier_restriction},
    {"center condition", 1.0, center_condition},
    {"return map periodicity", 10.0, return_map_periodicity},
    {"first integral", 10.0, first_integral},
    {"B^nu classification", 5.0, classification},
    {"boundary radius", 10.0, boundary},
    {"commutant", 60.0, commutant},
    {"reversibility and forms", 10.0, reversibility},
    {"Darboux identities", 5.0, darboux},
    {"property suites", 60.0, properties},
};

} // namespace

CriterionResult run_criterion(int id, const BatteryInput& input) {
    if (id < 1 || id > 10) throw Error(Errc::InvalidArgument, "criteria are numbered 1..10");
    const Spec& s = criteria[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = s.name;
    r.limit_seconds = s.limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Check c = s.run(input);
        r.passed = c.ok;
        r.detail = c.detail.str();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds >= r.limit_seconds) {
        r.passed = false;
        r.detail += "; exceeded the " + std::to_string(static_cast<int>(r.limit_seconds)) + " s limit";
    }
    return r;
}

std::vector<CriterionResult> run_battery(const std::vector<int>& ids, const BatteryInput& input) {
    std::vector<CriterionResult> out;
    for (int id : ids) out.push_back(run_criterion(id, input));
    return out;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << " (";
    s.precision(3);
    s << std::fixed << r.seconds << " s): " << r.detail;
    return s.str();
}

} // namespace isochrone
