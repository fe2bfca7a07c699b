#include "isochrone/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isochrone {

ordered_json to_json(const Rational& q) { return to_string(q); }
ordered_json to_json(const BivarPoly& p) { return to_string(p); }
ordered_json to_json(const PolyVectorField& v) { return {{"P", to_string(v.P)}, {"S", to_string(v.S)}}; }

ordered_json to_json(const TrigPoly& t) {
    ordered_json h = ordered_json::array();
    for (const auto& [j, c] : t.harmonics()) h.push_back({j, to_string(c.a), to_string(c.b)});
    return {{"c0", to_string(t.c0())}, {"harmonics", h}};
}

namespace {

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json rationals(const std::vector<Rational>& v) {
    ordered_json out = ordered_json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

ordered_json ode_tolerances(const OdeSettings& s) {
    return {{"rel_tol", s.rel_tol}, {"abs_tol", s.abs_tol}, {"ceiling", s.ceiling}};
}

} // namespace

ordered_json to_json(const CenterReport& r) {
    ordered_json samples = ordered_json::array();
    for (const auto& b : r.boundary_samples) samples.push_back({b.theta, optional_number(b.rho)});
    return {
        {"is_center", r.is_center},
        {"k", r.k},
        {"nu", r.nu},
        {"type", r.type_label},
        {"generic", r.generic},
        {"tied", r.tied},
        {"unbounded_region", r.unbounded_region},
        {"invariant_circles", r.invariant_circles},
        {"asymptote_directions", r.asymptote_directions},
        {"max_F", r.max_F},
        {"g_inf", r.g_inf},
        {"boundary_samples", samples},
        {"tolerance", {{"grid", r.settings.grid}, {"cluster_tol", r.settings.cluster_tol}, {"angle_tol", r.settings.angle_tol}}},
    };
}

ordered_json to_json(const DarbouxReport& r) {
    return {
        {"f1", to_string(r.f1)},
        {"f2", to_string(r.f2)},
        {"K1", to_string(r.K1)},
        {"K2", to_string(r.K2)},
        {"divergence", to_string(r.div)},
        {"invariant1_holds", r.invariant1_holds},
        {"invariant2_holds", r.invariant2_holds},
        {"identity_holds", r.identity_holds},
        {"mu_exponents", {to_string(r.e1), to_string(r.e2)}},
    };
}

ordered_json to_json(const CommutantBasis& b) {
    ordered_json basis = ordered_json::array();
    for (const auto& f : b.basis) basis.push_back(to_json(f));
    return {
        {"degree_bound", b.degree_bound},
        {"includes_constants", b.includes_constants},
        {"dimension", b.dimension()},
        {"contains_self", b.contains_self},
        {"basis", basis},
    };
}

ordered_json to_json(const Form7Result& r) {
    ordered_json out = {{"matches", r.matches}};
    if (r.witness) out["witness"] = {{"P", to_string(r.witness->P)}, {"a", rationals(r.witness->a)}};
    return out;
}

ordered_json to_json(const Form8Result& r) {
    ordered_json out = {{"matches", r.matches}, {"inconclusive", r.inconclusive}};
    if (r.witness)
        out["witness"] = {{"l", r.witness->l},
                          {"alpha", to_string(r.witness->alpha)},
                          {"beta", to_string(r.witness->beta)},
                          {"a", rationals(r.witness->a)}};
    return out;
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

ordered_json system_echo(const SystemSpec& spec, const UniformSystem& u) {
    ordered_json out;
    switch (spec.form) {
    case SpecForm::Factored:
        out["form"] = "factored";
        out["Q"] = to_string(spec.Q);
        out["a"] = rationals(spec.a);
        break;
    case SpecForm::RawH:
        out["form"] = "H";
        break;
    case SpecForm::Thm2:
        out["form"] = "thm2";
        out["p"] = to_string(spec.thm2.p);
        out["c"] = to_string(spec.thm2.c);
        out["h"] = to_string(spec.thm2.h);
        break;
    }
    out["H"] = to_string(u.H());
    out["vector_field"] = to_json(u.vector_field());
    return out;
}

ordered_json return_map_section(const UniformSystem& u, const OdeSettings& ode) {
    ordered_json rows = ordered_json::array();
    for (double rho0 : {0.05, 0.1}) {
        auto r = return_map(u, rho0, ode);
        if (r.blew_up)
            rows.push_back({{"rho0", rho0}, {"blew_up", true}, {"theta_escape", r.theta_escape}});
        else
            rows.push_back({{"rho0", rho0}, {"blew_up", false}, {"deviation", std::abs(r.rho_end - rho0)}});
    }
    return {{"samples", rows}, {"tolerance", ode_tolerances(ode)}};
}

// Starting radius well inside the center region for drift statistics.
double interior_radius(const CenterReport& c) {
    double r = 1.0;
    for (const auto& b : c.boundary_samples)
        if (b.rho) r = std::min(r, *b.rho);
    for (double circle : c.invariant_circles) r = std::min(r, circle);
    return 0.5 * r;
}

ordered_json drift_section(const FactoredSystem& fs, const CenterReport& c, const OdeSettings& ode) {
    ConservedQuantity phi(fs);
    const UniformSystem u = fs.uniform();
    const double r0 = interior_radius(c);
    double worst = 0.0;
    int n = 0;
    for (double theta0 : {0.0, 0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi}) {
        worst = std::max(worst, relative_variation(u, [&phi](double x, double y) { return phi(x, y); },
                                                   {r0 * std::cos(theta0), r0 * std::sin(theta0)}, two_pi, ode));
        ++n;
    }
    return {{"statistic", "max relative variation of g(rho) - F(theta) over one period"},
            {"start_radius", r0},
            {"trajectories", n},
            {"max_relative_variation", worst},
            {"tolerance", ode_tolerances(ode)}};
}

} // namespace

Analysis analyze(const SystemSpec& spec, const Settings& settings) {
    Analysis out;
    ordered_json& rep = out.report;
    const UniformSystem u = spec.uniform();
    const std::optional<FactoredSystem> fs = spec.factored();
    const PolyVectorField X = u.vector_field();

    rep["report_version"] = report_version;
    rep["system"] = system_echo(spec, u);
    rep["settings"] = {{"ode", ode_tolerances(settings.ode)},
                       {"root_tol", settings.root_tol},
                       {"grid", settings.grid},
                       {"seed", settings.seed}};

    OdeSettings tight = settings.ode;
    tight.rel_tol = std::min(settings.ode.rel_tol, 1e-12);
    tight.abs_tol = std::min(settings.ode.abs_tol, 1e-14);
    rep["isochronicity"] = {
        {"max_deviation", isochronicity_check(u, settings.isochronicity_samples, settings.seed, 0.3, tight)},
        {"samples", settings.isochronicity_samples},
        {"max_radius", 0.3},
        {"tolerance", ode_tolerances(tight)},
    };

    bool center_known = false, center = false, reversible_known = false, reversible = false;
    if (fs) {
        TrigPoly trig = restrict_to_circle(fs->Q());
        center_known = true;
        center = mean_is_zero(trig);
        rep["is_center"] = center;
        rep["circle_restriction"] = to_json(trig);
        if (!fs->radial_is_zero()) rep["invariant_circles"] = {{"radii", invariant_circles(*fs, settings.root_tol)},
                                                               {"tolerance", settings.root_tol}};
        rep["darboux"] = to_json(darboux_report(*fs));
        if (!trig.is_zero()) {
            SymmetryAxes axes = symmetry_axes(trig);
            reversible_known = true;
            reversible = axes.any();
            ordered_json rev = {{"reversible", reversible}, {"every_angle", axes.every_angle}, {"axes", axes.axes},
                                {"tolerance", {{"angle_tol", 1e-12}}}};
            bool cubic = trig.max_harmonic() <= 3 && trig.c0() == 0 && trig.harmonic(2) == Harmonic{};
            if (cubic) {
                Harmonic h1 = trig.harmonic(1), h3 = trig.harmonic(3);
                rev["degree3_criterion"] = degree3_axis_criterion(h1.a, h3.a, h1.b, h3.b);
            }
            rep["reversibility"] = rev;
        } else {
            reversible_known = true;
            reversible = true;
            rep["reversibility"] = {{"reversible", true}, {"every_angle", true}, {"axes", ordered_json::array()}};
        }
        if (center) {
            rep["first_integral"] = {{"F", to_json(antiderivative(trig))}};
            ClassifySettings cs;
            cs.grid = settings.grid;
            CenterReport cr = classify(*fs, cs);
            rep["classification"] = to_json(cr);
            if (!fs->degenerate()) rep["conserved_quantity"] = drift_section(*fs, cr, settings.ode);
        } else {
            rep["classification"] = {{"skipped", "the zero-mean condition fails: the origin is not a center"}};
            out.exit_code = 2;
        }
        auto rc = radial_commuter(*fs);
        if (auto* f = std::get_if<PolyVectorField>(&rc))
            rep["radial_commuter"] = {{"polynomial", true}, {"field", to_json(*f)}};
        else
            rep["radial_commuter"] = {{"polynomial", false},
                                      {"exponent", to_string(std::get<NonPolynomialReport>(rc).exponent)}};
    } else {
        rep["is_center"] = nullptr;
        rep["classification"] = {{"skipped", "classification needs the factored (Q, a) form"}};
        rep["return_map"] = return_map_section(u, settings.ode);
    }

    bool dim_one_self = false, form7 = false, form8 = false;
    if (!u.is_rotation()) {
        const unsigned bound = settings.commutant_degree ? settings.commutant_degree : static_cast<unsigned>(X.degree());
        auto degrees = admissible_top_degrees(u);
        CommutantBasis basis = commutant_nullspace(X, bound);
        dim_one_self = basis.dimension() == 1 && basis.contains_self;
        ordered_json com = {{"admissible_top_degrees", degrees}};
        com.update(to_json(basis));
        rep["commutant"] = com;
        Form7Result f7 = check_form7(u.H());
        Form8Result f8 = check_form8(u.H());
        form7 = f7.matches;
        form8 = f8.matches;
        rep["forms"] = {{"form7", to_json(f7)},
                        {"form8", to_json(f8)},
                        {"predicts_polynomial_commuter", form7 || form8}};
    } else {
        rep["commutant"] = {{"skipped", "H is identically zero: the linear rotation"}};
    }

    const bool counterexample = center_known && center && reversible_known && !reversible && dim_one_self && !form7 && !form8;
    rep["counterexample"] = counterexample;
    if (counterexample)
        rep["banner"] = "isochronous center, not reversible, and every polynomial commuting field "
                        "up to the degree bound is a multiple of the system itself";
    return out;
}

} // namespace isochrone
