#include "isochrone/trig.hpp"

#include "isochrone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isochrone {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double wrap_angle(double theta, double period) {
    double w = std::fmod(theta, period);
    if (w < 0) w += period;
    if (w >= period) w -= period;
    return w;
}

TrigPoly TrigPoly::cos(unsigned j, const Rational& a) {
    TrigPoly t;
    t.add_cos(j, a);
    return t;
}

TrigPoly TrigPoly::sin(unsigned j, const Rational& b) {
    TrigPoly t;
    t.add_sin(j, b);
    return t;
}

Harmonic TrigPoly::harmonic(unsigned j) const {
    auto it = h_.find(j);
    return it == h_.end() ? Harmonic{} : it->second;
}

void TrigPoly::add_cos(long n, const Rational& v) {
    if (v == 0) return;
    if (n == 0) {
        c0_ += v;
        return;
    }
    unsigned j = static_cast<unsigned>(std::labs(n));
    auto& h = h_[j];
    h.a += v;
    if (h.a == 0 && h.b == 0) h_.erase(j);
}

void TrigPoly::add_sin(long n, const Rational& v) {
    if (v == 0 || n == 0) return;
    unsigned j = static_cast<unsigned>(std::labs(n));
    auto& h = h_[j];
    if (n > 0)
        h.b += v;
    else
        h.b -= v;
    if (h.a == 0 && h.b == 0) h_.erase(j);
}

double TrigPoly::evaluate(double theta) const {
    double acc = c0_.get_d();
    for (const auto& [j, h] : h_) acc += h.a.get_d() * std::cos(j * theta) + h.b.get_d() * std::sin(j * theta);
    return acc;
}

double TrigPoly::evaluate_derivative(double theta) const {
    double acc = 0.0;
    for (const auto& [j, h] : h_)
        acc += j * (h.b.get_d() * std::cos(j * theta) - h.a.get_d() * std::sin(j * theta));
    return acc;
}

double TrigPoly::amplitude_bound() const {
    double s = std::abs(c0_.get_d());
    for (const auto& [j, h] : h_) s += std::abs(h.a.get_d()) + std::abs(h.b.get_d());
    return s;
}

TrigPoly TrigPoly::derivative() const {
    TrigPoly d;
    for (const auto& [j, h] : h_) {
        d.add_cos(j, h.b * j);
        d.add_sin(j, -h.a * j);
    }
    return d;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
    c0_ += other.c0_;
    for (const auto& [j, h] : other.h_) {
        add_cos(j, h.a);
        add_sin(j, h.b);
    }
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
    c0_ -= other.c0_;
    for (const auto& [j, h] : other.h_) {
        add_cos(j, -h.a);
        add_sin(j, -h.b);
    }
    return *this;
}

TrigPoly& TrigPoly::operator*=(const Rational& c) {
    if (c == 0) {
        *this = TrigPoly{};
        return *this;
    }
    c0_ *= c;
    for (auto& [j, h] : h_) {
        h.a *= c;
        h.b *= c;
    }
    return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    // Treat c0 as the cosine of harmonic 0 and apply product-to-sum identities.
    auto modes = [](const TrigPoly& t) {
        std::vector<std::pair<long, Harmonic>> m;
        if (t.c0_ != 0) m.push_back({0, Harmonic{t.c0_, 0}});
        for (const auto& [j, h] : t.h_) m.push_back({static_cast<long>(j), h});
        return m;
    };
    TrigPoly out;
    const Rational half(1, 2);
    for (const auto& [p, u] : modes(a)) {
        for (const auto& [q, v] : modes(b)) {
            // cos p cos q, sin p sin q, cos p sin q, sin p cos q
            Rational cc = u.a * v.a * half, ss = u.b * v.b * half;
            Rational cs = u.a * v.b * half, sc = u.b * v.a * half;
            out.add_cos(p - q, cc + ss);
            out.add_cos(p + q, cc - ss);
            out.add_sin(p + q, cs + sc);
            out.add_sin(p - q, sc - cs);
        }
    }
    return out;
}

TrigPoly restrict_to_circle(const BivarPoly& q, bool homogeneous_required) {
    if (homogeneous_required && !q.is_zero() && !q.is_homogeneous())
        throw Error(Errc::NonHomogeneous, "restriction requires a homogeneous polynomial, got " + to_string(q));
    std::vector<TrigPoly> cos_pow{TrigPoly(Rational(1))}, sin_pow{TrigPoly(Rational(1))};
    auto power = [](std::vector<TrigPoly>& cache, const TrigPoly& base, unsigned e) -> const TrigPoly& {
        while (cache.size() <= e) cache.push_back(cache.back() * base);
        return cache[e];
    };
    const TrigPoly c = TrigPoly::cos(1), s = TrigPoly::sin(1);
    TrigPoly out;
    for (const auto& [m, coef] : q.terms()) out += (power(cos_pow, c, m.i) * power(sin_pow, s, m.j)) * coef;
    return out;
}

bool mean_is_zero(const TrigPoly& t) { return t.c0() == 0; }

TrigPoly antiderivative(const TrigPoly& t) {
    if (!mean_is_zero(t))
        throw Error(Errc::NonzeroMean, "mean value " + to_string(t.c0()) + " is nonzero; the antiderivative is not periodic");
    TrigPoly F;
    for (const auto& [j, h] : t.harmonics()) {
        Rational jj(j);
        F.add_sin(j, h.a / jj);
        F.add_cos(j, -h.b / jj);
        F.add_cos(0, h.b / jj);
    }
    return F;
}

namespace {

template <class F>
double bisect(F&& f, double lo, double hi, double flo, double tol) {
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (mid == lo && mid == hi) break;
    }
    return 0.5 * (lo + hi);
}

// Sign changes and exact grid zeros of f on [0, 2pi), shared by zero finding
// and critical-point search.
template <class F>
std::vector<TrigZero> scan_crossings(F&& f, unsigned max_harmonic, double scale, double tol) {
    const std::size_t n = 64u * std::max(1u, max_harmonic);
    const double h = two_pi / static_cast<double>(n);
    const double zero_eps = 1e-14 * scale;
    auto sgn_of = [zero_eps](double v) { return std::abs(v) <= zero_eps ? 0 : (v > 0 ? 1 : -1); };

    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) vals[i] = f(h * static_cast<double>(i));
    vals[n] = vals[0];

    std::vector<TrigZero> out;
    for (std::size_t i = 0; i < n; ++i) {
        double t0 = h * static_cast<double>(i);
        int s0 = sgn_of(vals[i]), s1 = sgn_of(vals[i + 1]);
        if (s0 == 0) {
            int before = sgn_of(f(t0 - 0.5 * h)), after = sgn_of(f(t0 + 0.5 * h));
            double root = t0;
            if (before * after < 0) root = bisect(f, t0 - 0.5 * h, t0 + 0.5 * h, f(t0 - 0.5 * h), tol);
            Crossing c = before < 0 && after > 0 ? Crossing::Upward
                       : before > 0 && after < 0 ? Crossing::Downward
                                                 : Crossing::Touch;
            out.push_back({wrap_angle(root, two_pi), c});
        } else if (s1 != 0 && s0 != s1) {
            double root = bisect(f, t0, t0 + h, vals[i], tol);
            out.push_back({wrap_angle(root, two_pi), s0 < 0 ? Crossing::Upward : Crossing::Downward});
        }
    }
    return out;
}

double angular_distance(double a, double b) {
    double d = std::abs(wrap_angle(a - b, two_pi));
    return std::min(d, two_pi - d);
}

} // namespace

std::vector<TrigZero> zeros_on_period(const TrigPoly& t, double tol) {
    if (t.is_zero()) throw Error(Errc::IdenticallyZero, "zeros of the zero trigonometric polynomial");
    if (t.is_constant()) return {};
    const unsigned m = t.max_harmonic();
    const double scale = t.amplitude_bound();
    auto f = [&t](double th) { return t.evaluate(th); };
    auto zeros = scan_crossings(f, m, scale, tol);

    // Touch zeros between grid points sit at critical points where |t| vanishes.
    const double grid = two_pi / (64.0 * m);
    const double touch_eps = 1e-10 * scale;
    auto df = [&t](double th) { return t.evaluate_derivative(th); };
    double dscale = 0;
    for (const auto& [j, h] : t.harmonics()) dscale += j * (std::abs(h.a.get_d()) + std::abs(h.b.get_d()));
    for (const auto& crit : scan_crossings(df, m, dscale, tol)) {
        if (std::abs(t.evaluate(crit.theta)) > touch_eps) continue;
        bool known = std::any_of(zeros.begin(), zeros.end(),
                                 [&](const TrigZero& z) { return angular_distance(z.theta, crit.theta) < grid; });
        if (!known) zeros.push_back({crit.theta, Crossing::Touch});
    }
    std::sort(zeros.begin(), zeros.end(), [](const TrigZero& a, const TrigZero& b) { return a.theta < b.theta; });
    return zeros;
}

GlobalMaxima global_maxima(const TrigPoly& t, double cluster_tol) {
    GlobalMaxima out;
    if (t.is_constant()) {
        out.value = t.c0().get_d();
        out.degenerate = true;
        return out;
    }
    std::vector<std::pair<double, double>> candidates;  // (value, theta)
    for (const auto& z : zeros_on_period(t.derivative()))
        if (z.crossing == Crossing::Downward) candidates.push_back({t.evaluate(z.theta), z.theta});
    if (candidates.empty()) {
        out.degenerate = true;
        return out;
    }
    double best = -HUGE_VAL;
    for (const auto& c : candidates) best = std::max(best, c.first);
    out.value = best;
    for (const auto& [v, th] : candidates)
        if (v >= best - cluster_tol) out.argmax.push_back(th);
    std::sort(out.argmax.begin(), out.argmax.end());
    out.tied = out.argmax.size() > 1;
    return out;
}

SymmetryAxes symmetry_axes(const TrigPoly& t, double angle_tol) {
    if (t.is_zero()) throw Error(Errc::IdenticallyZero, "symmetry axes of the zero trigonometric polynomial");
    SymmetryAxes out;
    if (t.is_constant()) {
        out.every_angle = true;
        return out;
    }
    const auto& [j0, h0] = *t.harmonics().begin();
    const double phase0 = std::atan2(h0.b.get_d(), h0.a.get_d());
    for (unsigned m = 0; m < j0; ++m) {
        double candidate = wrap_angle((phase0 + m * std::numbers::pi) / j0, std::numbers::pi);
        bool ok = true;
        for (const auto& [j, h] : t.harmonics()) {
            double a = h.a.get_d(), b = h.b.get_d();
            double amp = std::hypot(a, b);
            double residual = a * std::sin(j * candidate) - b * std::cos(j * candidate);
            if (std::abs(residual) > amp * (j * angle_tol + 8 * std::numeric_limits<double>::epsilon())) {
                ok = false;
                break;
            }
        }
        if (ok) out.axes.push_back(candidate);
    }
    std::sort(out.axes.begin(), out.axes.end());
    return out;
}

bool degree3_axis_criterion(const Rational& a1, const Rational& a3, const Rational& b1, const Rational& b3) {
    Rational lhs = a1 * b3 * (a1 * a1 - 3 * b1 * b1);
    Rational rhs = a3 * b1 * (3 * a1 * a1 - b1 * b1);
    return lhs == rhs;
}

} // namespace isochrone
