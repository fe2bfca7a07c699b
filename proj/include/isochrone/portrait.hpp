#pragma once

#include "isochrone/centerlab.hpp"
#include "isochrone/spec_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isochrone {

struct PortraitOptions {
    std::size_t trajectories = 24;
    double range = 0.0;  // 0: chosen from the boundary radii
    std::uint64_t seed = 7;
    std::size_t samples_per_turn = 256;
    Settings settings;
};

/// Seed from ISOCHRONE_SEED when set and numeric, `fallback` otherwise.
std::uint64_t portrait_seed(std::uint64_t fallback);

struct PortraitTrajectory {
    double theta0 = 0.0;
    double rho0 = 0.0;
    bool escaped = false;
    std::vector<Sample> polar;  // (theta, rho), theta unwrapped and ascending
};

struct Portrait {
    double range = 1.0;
    std::vector<PortraitTrajectory> trajectories;
    std::vector<double> invariant_circles;
    std::vector<double> asymptote_directions;
    std::vector<BoundarySample> boundary;
    bool classified = false;
};

/// Orbits are traced in the polar form drho/dtheta = rho H, starting from
/// seeded random points with radius in (0, range]; trajectories run in parallel.
Portrait compute_portrait(const SystemSpec& spec, const PortraitOptions& options);

/// Self-contained SVG 1.1 with fixed colors: orbits, the dashed center-region
/// boundary, invariant circles and asymptote rays.
std::string render_svg(const Portrait& p);

/// RFC 4180 CSV with one row per sampled (theta, rho) of each orbit.
std::string render_csv(const Portrait& p);

} // namespace isochrone
