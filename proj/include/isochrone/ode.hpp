#pragma once

#include "isochrone/polynomial.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace isochrone {

/// Floating copy of a BivarPoly for hot loops.
class FastPoly {
public:
    FastPoly() = default;
    explicit FastPoly(const BivarPoly& p);

    double operator()(double x, double y) const;
    bool is_zero() const noexcept { return terms_.empty(); }

private:
    struct Term {
        double c;
        unsigned i, j;
    };
    std::vector<Term> terms_;
    unsigned max_i_ = 0, max_j_ = 0;
};

/// Integrator settings: Dormand-Prince 5(4) with adaptive step control.
struct OdeSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double ceiling = 1e6;        // |state| above this counts as escape to infinity
    double initial_step = 1e-3;
    double max_step = 0.05;
    std::size_t max_steps = 2'000'000;
};

struct Sample {
    double t;
    double value;
};

struct ScalarTrajectory {
    bool blew_up = false;
    double t_escape = 0.0;       // meaningful when blew_up
    double t_end = 0.0;
    double end = 0.0;            // state at t_end
    std::vector<Sample> samples; // requested sample times reached before any escape
    std::vector<Sample> steps;   // every accepted step when requested
};

using ScalarRhs = std::function<double(double t, double u)>;

/// Integrates u' = f(t, u) from (t0, u0) to t1 (t1 > t0), stopping early when
/// |u| exceeds the ceiling. `sample_times` must be ascending within [t0, t1].
ScalarTrajectory integrate_scalar(const ScalarRhs& f, double t0, double u0, double t1,
                                  std::span<const double> sample_times, const OdeSettings& settings,
                                  bool record_steps = false);

using PlanarState = std::array<double, 2>;

struct PlanarTrajectory {
    bool blew_up = false;
    std::vector<double> t;
    std::vector<PlanarState> states;  // every accepted step, starting with the initial state
};

using PlanarRhs = std::function<PlanarState(const PlanarState&)>;

/// Integrates an autonomous planar system over [0, t1], recording every accepted step.
PlanarTrajectory integrate_planar(const PlanarRhs& f, const PlanarState& x0, double t1, const OdeSettings& settings);

} // namespace isochrone
