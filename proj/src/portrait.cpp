#include "isochrone/portrait.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

namespace isochrone {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Samples of rho(theta) on [theta0, theta0 + span] going forward, or
// backward when span < 0, until escape.
std::vector<Sample> trace(const UniformSystem& u, double theta0, double rho0, double span, std::size_t samples,
                          const OdeSettings& ode) {
    FastPoly H(u.H());
    const double dir = span < 0 ? -1.0 : 1.0;
    auto rhs = [&](double phi, double rho) {
        double theta = theta0 + dir * phi;
        return dir * rho * H(rho * std::cos(theta), rho * std::sin(theta));
    };
    std::vector<double> at;
    for (std::size_t i = 1; i < samples; ++i) at.push_back(std::abs(span) * static_cast<double>(i) / static_cast<double>(samples));
    auto traj = integrate_scalar(rhs, 0.0, rho0, std::abs(span), at, ode);
    std::vector<Sample> out{{theta0, rho0}};
    for (const auto& s : traj.samples) out.push_back({theta0 + dir * s.t, s.value});
    if (!traj.blew_up) out.push_back({theta0 + span, traj.end});
    return out;
}

PortraitTrajectory orbit(const UniformSystem& u, double theta0, double rho0, std::size_t samples, const OdeSettings& ode) {
    PortraitTrajectory t;
    t.theta0 = theta0;
    t.rho0 = rho0;
    auto forward = trace(u, theta0, rho0, two_pi, samples, ode);
    t.escaped = forward.size() < samples + 1;
    if (t.escaped) {
        auto backward = trace(u, theta0, rho0, -two_pi, samples, ode);
        std::reverse(backward.begin(), backward.end());
        backward.pop_back();  // the shared starting point
        t.polar = std::move(backward);
    }
    t.polar.insert(t.polar.end(), forward.begin(), forward.end());
    return t;
}

double auto_range(const Portrait& p) {
    double r = 0.0;
    for (const auto& b : p.boundary)
        if (b.rho) r = std::max(r, *b.rho);
    for (double c : p.invariant_circles) r = std::max(r, c);
    if (r == 0.0) return 1.0;
    return std::min(1.5 * r, 1e3);
}

} // namespace

std::uint64_t portrait_seed(std::uint64_t fallback) {
    const char* env = std::getenv("ISOCHRONE_SEED");
    if (!env || !*env) return fallback;
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    return ec == std::errc() && ptr == end ? v : fallback;
}

Portrait compute_portrait(const SystemSpec& spec, const PortraitOptions& options) {
    Portrait p;
    const UniformSystem u = spec.uniform();
    if (auto fs = spec.factored(); fs && is_center(*fs)) {
        ClassifySettings cs;
        cs.grid = options.settings.grid;
        CenterReport cr = classify(*fs, cs);
        p.classified = true;
        p.invariant_circles = cr.invariant_circles;
        p.asymptote_directions = cr.asymptote_directions;
        p.boundary = cr.boundary_samples;
    }
    p.range = options.range > 0 ? options.range : auto_range(p);

    OdeSettings ode = options.settings.ode;
    ode.ceiling = std::min(ode.ceiling, 4.0 * p.range);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<double, double>> starts;
    for (std::size_t i = 0; i < options.trajectories; ++i) {
        double rho0 = p.range * (1.0 - unit(rng));
        double theta0 = two_pi * unit(rng);
        starts.emplace_back(theta0, rho0);
    }
    std::vector<std::future<PortraitTrajectory>> jobs;
    for (const auto& [theta0, rho0] : starts)
        jobs.push_back(std::async(std::launch::async, [&u, theta0, rho0, &options, ode] {
            return orbit(u, theta0, rho0, options.samples_per_turn, ode);
        }));
    for (auto& j : jobs) p.trajectories.push_back(j.get());
    return p;
}

std::string render_svg(const Portrait& p) {
    const double R = p.range;
    const double w = R * 0.004;
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\""
      << num(-R) << ' ' << num(-R) << ' ' << num(2 * R) << ' ' << num(2 * R) << "\">\n"
      << "<rect x=\"" << num(-R) << "\" y=\"" << num(-R) << "\" width=\"" << num(2 * R) << "\" height=\"" << num(2 * R)
      << "\" fill=\"#ffffff\"/>\n"
      << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\">\n";

    s << "<g id=\"axes\" stroke=\"#cccccc\" stroke-width=\"" << num(w) << "\">\n"
      << "<line x1=\"" << num(-R) << "\" y1=\"0\" x2=\"" << num(R) << "\" y2=\"0\"/>\n"
      << "<line x1=\"0\" y1=\"" << num(-R) << "\" x2=\"0\" y2=\"" << num(R) << "\"/>\n</g>\n";

    s << "<g id=\"trajectories\" stroke=\"#1f77b4\" stroke-width=\"" << num(w) << "\">\n";
    for (const auto& t : p.trajectories) {
        s << "<polyline points=\"";
        for (std::size_t i = 0; i < t.polar.size(); ++i) {
            const auto& q = t.polar[i];
            s << (i ? " " : "") << num(q.value * std::cos(q.t)) << ',' << num(q.value * std::sin(q.t));
        }
        s << "\"/>\n";
    }
    s << "</g>\n";

    s << "<g id=\"invariant-circles\" stroke=\"#2ca02c\" stroke-width=\"" << num(2 * w) << "\">\n";
    for (double c : p.invariant_circles) s << "<circle cx=\"0\" cy=\"0\" r=\"" << num(c) << "\"/>\n";
    s << "</g>\n";

    // Boundary pieces between asymptote directions, clipped at 3R.
    s << "<g id=\"boundary\" stroke=\"#d62728\" stroke-width=\"" << num(2 * w) << "\" stroke-dasharray=\"" << num(8 * w)
      << ',' << num(5 * w) << "\">\n";
    std::vector<std::vector<std::pair<double, double>>> pieces(1);
    for (const auto& b : p.boundary) {
        if (!b.rho || *b.rho > 3 * R) {
            if (!pieces.back().empty()) pieces.emplace_back();
            continue;
        }
        pieces.back().emplace_back(*b.rho * std::cos(b.theta), *b.rho * std::sin(b.theta));
    }
    // Close the curve across theta = 0 when it is bounded there.
    if (pieces.size() > 1 && !p.boundary.empty() && p.boundary.front().rho && p.boundary.back().rho &&
        !pieces.front().empty() && !pieces.back().empty()) {
        pieces.back().insert(pieces.back().end(), pieces.front().begin(), pieces.front().end());
        pieces.erase(pieces.begin());
    } else if (pieces.size() == 1 && !pieces.front().empty()) {
        pieces.front().push_back(pieces.front().front());
    }
    for (const auto& piece : pieces) {
        if (piece.size() < 2) continue;
        s << "<polyline points=\"";
        for (std::size_t i = 0; i < piece.size(); ++i) s << (i ? " " : "") << num(piece[i].first) << ',' << num(piece[i].second);
        s << "\"/>\n";
    }
    s << "</g>\n";

    s << "<g id=\"asymptotes\" stroke=\"#ff7f0e\" stroke-width=\"" << num(2 * w) << "\">\n";
    for (double a : p.asymptote_directions)
        s << "<line x1=\"0\" y1=\"0\" x2=\"" << num(1.5 * R * std::cos(a)) << "\" y2=\"" << num(1.5 * R * std::sin(a)) << "\"/>\n";
    s << "</g>\n";

    s << "<circle cx=\"0\" cy=\"0\" r=\"" << num(3 * w) << "\" fill=\"#000000\" stroke=\"none\"/>\n";
    s << "</g>\n</svg>\n";
    return s.str();
}

std::string render_csv(const Portrait& p) {
    std::ostringstream s;
    s << "trajectory,theta0,rho0,escaped,theta,rho\r\n";
    for (std::size_t i = 0; i < p.trajectories.size(); ++i) {
        const auto& t = p.trajectories[i];
        for (const auto& q : t.polar)
            s << i << ',' << num(t.theta0) << ',' << num(t.rho0) << ',' << (t.escaped ? "true" : "false") << ','
              << num(q.t) << ',' << num(q.value) << "\r\n";
    }
    return s.str();
}

} // namespace isochrone
