#include "isochrone/ode.hpp"

#include "isochrone/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

namespace isochrone {

namespace odeint = boost::numeric::odeint;

FastPoly::FastPoly(const BivarPoly& p) {
    for (const auto& [m, c] : p.terms()) {
        terms_.push_back({c.get_d(), m.i, m.j});
        max_i_ = std::max(max_i_, m.i);
        max_j_ = std::max(max_j_, m.j);
    }
}

double FastPoly::operator()(double x, double y) const {
    if (terms_.empty()) return 0.0;
    constexpr unsigned small = 32;
    std::array<double, small> xs_buf, ys_buf;
    std::vector<double> xs_heap, ys_heap;
    double* xs = xs_buf.data();
    double* ys = ys_buf.data();
    if (max_i_ >= small || max_j_ >= small) {
        xs_heap.resize(max_i_ + 1);
        ys_heap.resize(max_j_ + 1);
        xs = xs_heap.data();
        ys = ys_heap.data();
    }
    xs[0] = 1.0;
    for (unsigned k = 1; k <= max_i_; ++k) xs[k] = xs[k - 1] * x;
    ys[0] = 1.0;
    for (unsigned k = 1; k <= max_j_; ++k) ys[k] = ys[k - 1] * y;
    double acc = 0.0;
    for (const auto& t : terms_) acc += t.c * xs[t.i] * ys[t.j];
    return acc;
}

namespace {

template <class State>
bool finite_state(const State& s) {
    return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
}

template <class State>
double state_norm(const State& s) {
    double m = 0.0;
    for (double v : s) m = std::max(m, std::abs(v));
    return m;
}

// Advances (t, x) towards t_target with the controlled stepper. Returns false
// on escape (ceiling exceeded, non-finite state, or step-size collapse).
template <class State, class System, class Stepper, class OnStep>
bool advance(Stepper& stepper, System&& sys, State& x, double& t, double& dt, double t_target,
             const OdeSettings& settings, std::size_t& steps, OnStep&& on_step) {
    while (t < t_target) {
        if (++steps > settings.max_steps) throw Error(Errc::InvalidArgument, "integrator exceeded the step budget");
        double remaining = t_target - t;
        double trial = std::min({dt, remaining, settings.max_step});
        if (trial < 1e-15 * std::max(1.0, std::abs(t))) return false;
        State x_try = x;
        double t_try = t;
        double dt_try = trial;
        auto res = stepper.try_step(sys, x_try, t_try, dt_try);
        if (res == odeint::fail) {
            dt = dt_try;
            continue;
        }
        if (!finite_state(x_try)) {
            stepper.reset();
            dt = 0.5 * trial;
            continue;
        }
        x = x_try;
        // Land exactly on the target to avoid round-off drift.
        t = trial == remaining ? t_target : t_try;
        dt = dt_try;
        on_step(t, x);
        if (state_norm(x) > settings.ceiling) return false;
    }
    return true;
}

} // namespace

ScalarTrajectory integrate_scalar(const ScalarRhs& f, double t0, double u0, double t1,
                                  std::span<const double> sample_times, const OdeSettings& settings,
                                  bool record_steps) {
    using State = std::array<double, 1>;
    auto sys = [&f](const State& x, State& dxdt, double t) { dxdt[0] = f(t, x[0]); };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(settings.abs_tol, settings.rel_tol);

    ScalarTrajectory out;
    State x{u0};
    double t = t0;
    double dt = settings.initial_step;
    std::size_t steps = 0;
    auto on_step = [&](double tt, const State& xx) {
        if (record_steps) out.steps.push_back({tt, xx[0]});
    };
    if (record_steps) out.steps.push_back({t0, u0});

    std::vector<double> targets(sample_times.begin(), sample_times.end());
    targets.push_back(t1);
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const double target = targets[k];
        if (target < t) {
            if (k + 1 < targets.size()) out.samples.push_back({t, x[0]});
            continue;
        }
        if (!advance(stepper, sys, x, t, dt, target, settings, steps, on_step)) {
            out.blew_up = true;
            out.t_escape = t;
            out.t_end = t;
            out.end = x[0];
            return out;
        }
        if (k + 1 < targets.size()) out.samples.push_back({t, x[0]});
    }
    out.t_end = t;
    out.end = x[0];
    return out;
}

PlanarTrajectory integrate_planar(const PlanarRhs& f, const PlanarState& x0, double t1, const OdeSettings& settings) {
    auto sys = [&f](const PlanarState& x, PlanarState& dxdt, double) { dxdt = f(x); };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<PlanarState>>(settings.abs_tol, settings.rel_tol);
    PlanarTrajectory out;
    PlanarState x = x0;
    double t = 0.0, dt = settings.initial_step;
    std::size_t steps = 0;
    out.t.push_back(0.0);
    out.states.push_back(x0);
    auto on_step = [&](double tt, const PlanarState& xx) {
        out.t.push_back(tt);
        out.states.push_back(xx);
    };
    out.blew_up = !advance(stepper, sys, x, t, dt, t1, settings, steps, on_step);
    return out;
}

} // namespace isochrone
