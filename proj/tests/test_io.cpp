#include "isochrone/battery.hpp"
#include "isochrone/portrait.hpp"
#include "isochrone/report.hpp"
#include "isochrone/spec_io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <numbers>

using namespace isochrone;

namespace {

const std::string data_dir = ISOCHRONE_TEST_DATA;
BivarPoly P(const char* s) { return parse_poly(s); }

Settings defaults() { return resolve_settings({}, {}); }

} // namespace

TEST_CASE("spec files in both syntaxes") {
    SystemSpec t = load_spec(data_dir + "/counterexample.toml");
    CHECK(t.form == SpecForm::Factored);
    CHECK(t.Q == counterexample_Q());
    CHECK(t.a == std::vector<Rational>{1, 1});
    CHECK(t.settings.grid == std::size_t{720});

    SystemSpec j = load_spec(data_dir + "/even_quadratic.json");
    CHECK(j.Q == P("x^2 - y^2"));
    CHECK(j.a == std::vector<Rational>{1});

    SystemSpec g = load_spec(data_dir + "/generalized.toml");
    CHECK(g.form == SpecForm::Thm2);
    CHECK(g.uniform().H() == P("x^2 - y^2") * P("1 + 1/2*x*y"));

    SystemSpec h = parse_spec(R"({"H": [["1/2", 2, 1], [-1, 0, 3]]})");
    CHECK(h.form == SpecForm::RawH);
    CHECK(h.H == P("1/2*x^2*y - y^3"));
    REQUIRE(h.factored());
    CHECK(h.factored()->k() == 3);
    CHECK_FALSE(parse_spec("H = \"x + y^2\"").factored().has_value());
}

TEST_CASE("parse errors report where they happened") {
    try {
        load_spec(data_dir + "/malformed.toml");
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(e.line() >= 3);
        CHECK(e.column() >= 1);
    }
    try {
        parse_spec("{\n  \"Q\": \"y\",\n  \"a\": [1,,]\n}", "x.json");
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    auto message = [](const std::string& text) {
        try {
            parse_spec(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("Q = \"y\"\na = [\"1\", \"one\"]").find("a[1]") != std::string::npos);
    CHECK(message("Q = \"y\"").find("radial") != std::string::npos);
    CHECK(message("Q = \"x + y^2\"\na = [1]").find("homogeneous") != std::string::npos);
    CHECK(message("H = \"1 + x\"").find("origin") != std::string::npos);
    CHECK(message("Q = \"y\"\nH = \"x\"\na = [1]").find("exactly one") != std::string::npos);
    CHECK(message("Q = [[1, -1, 0]]\na = [1]").find("Q[0][1]") != std::string::npos);
    CHECK(message("Q = \"y\"\na = [1]\n[settings]\nspeed = 3").find("unknown") != std::string::npos);
    CHECK(message("Q = \"y\"\na = [\"1/0\"]").find("a[0]") != std::string::npos);
}

TEST_CASE("settings precedence: flags over file over defaults") {
    Settings d = defaults();
    CHECK(d.ode.rel_tol == 1e-10);
    CHECK(d.root_tol == 1e-12);
    CHECK(d.grid == 720);
    SettingsOverrides file, flags;
    file.grid = 90;
    file.rel_tol = 1e-8;
    flags.rel_tol = 1e-9;
    Settings s = resolve_settings(file, flags);
    CHECK(s.grid == 90);
    CHECK(s.ode.rel_tol == 1e-9);
    CHECK(s.ode.abs_tol == 1e-12);
}

TEST_CASE("analysis report for the counterexample") {
    SystemSpec spec = load_spec(data_dir + "/counterexample.toml");
    Settings s = defaults();
    s.grid = 90;
    Analysis a = analyze(spec, s);
    const auto& r = a.report;
    CHECK(a.exit_code == 0);
    CHECK(r["report_version"] == 1);
    CHECK(r["is_center"] == true);
    CHECK(r["classification"]["nu"] == 1);
    CHECK(r["classification"]["type"] == "B^1");
    CHECK(r["reversibility"]["reversible"] == false);
    CHECK(r["reversibility"]["degree3_criterion"] == false);
    CHECK(r["commutant"]["dimension"] == 1);
    CHECK(r["commutant"]["contains_self"] == true);
    CHECK(r["commutant"]["admissible_top_degrees"] == ordered_json::array({1, 6}));
    CHECK(r["forms"]["form7"]["matches"] == false);
    CHECK(r["forms"]["form8"]["matches"] == false);
    CHECK(r["darboux"]["identity_holds"] == true);
    CHECK(r["darboux"]["mu_exponents"] == ordered_json::array({"5/2", "1"}));
    CHECK(r["radial_commuter"]["exponent"] == "3/2");
    CHECK(r["circle_restriction"]["c0"] == "0");
    CHECK(r["circle_restriction"]["harmonics"][0] == ordered_json::array({1, "-3/4", "5/4"}));
    CHECK(r["system"]["H"] == to_string(counterexample_system().H()));
    CHECK(r["counterexample"] == true);
    CHECK(r["conserved_quantity"]["max_relative_variation"].get<double>() <= 1e-7);
    CHECK(r["isochronicity"]["max_deviation"].get<double>() <= 1e-9);
    CHECK(r["classification"].contains("tolerance"));
}

TEST_CASE("reports are byte-stable") {
    SystemSpec spec = load_spec(data_dir + "/even_quadratic.json");
    Settings s = defaults();
    s.grid = 60;
    std::string first = analyze(spec, s).report.dump(2);
    std::string second = analyze(spec, s).report.dump(2);
    CHECK(first == second);
    Analysis a = analyze(spec, s);
    CHECK(a.report["classification"]["nu"] == 2);
    CHECK(a.report["counterexample"] == false);
    CHECK(a.report["forms"]["form7"]["matches"] == true);
    CHECK(a.report["commutant"]["dimension"].get<int>() >= 2);
    CHECK(a.report["radial_commuter"]["polynomial"] == true);
}

TEST_CASE("non-centers and other forms") {
    Analysis a = analyze(load_spec(data_dir + "/not_center.json"), defaults());
    CHECK(a.exit_code == 2);
    CHECK(a.report["is_center"] == false);
    CHECK(a.report["classification"].contains("skipped"));

    Analysis g = analyze(load_spec(data_dir + "/generalized.toml"), defaults());
    CHECK(g.exit_code == 0);
    CHECK(g.report["is_center"].is_null());
    for (const auto& row : g.report["return_map"]["samples"]) CHECK(row["deviation"].get<double>() <= 1e-8);

    Analysis rot = analyze(parse_spec("Q = \"x\"\na = [0]"), defaults());
    CHECK(rot.exit_code == 0);
    CHECK(rot.report["classification"]["nu"] == 0);
    CHECK(rot.report["commutant"].contains("skipped"));
}

TEST_CASE("portraits") {
    SystemSpec spec = load_spec(data_dir + "/counterexample.toml");
    PortraitOptions opt;
    opt.trajectories = 6;
    opt.settings.grid = 180;
    Portrait p = compute_portrait(spec, opt);
    CHECK(p.classified);
    CHECK(p.trajectories.size() == 6);
    REQUIRE(p.asymptote_directions.size() == 1);
    CHECK(p.asymptote_directions[0] == doctest::Approx(std::numbers::pi));
    std::string svg = render_svg(p);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("id=\"asymptotes\"") != std::string::npos);
    CHECK(svg.find("<line x1=\"0\" y1=\"0\"") != std::string::npos);
    CHECK(render_svg(compute_portrait(spec, opt)) == svg);

    std::string csv = render_csv(p);
    CHECK(csv.rfind("trajectory,theta0,rho0,escaped,theta,rho\r\n", 0) == 0);
    CHECK(csv.find("\n") == csv.find("\r\n") + 1);

    PortraitOptions other = opt;
    other.seed = opt.seed + 1;
    CHECK(render_csv(compute_portrait(spec, other)) != csv);

    Portrait rot = compute_portrait(parse_spec("Q = \"x\"\na = [0]"), opt);
    CHECK(rot.asymptote_directions.empty());
    for (const auto& t : rot.trajectories) {
        CHECK_FALSE(t.escaped);
        for (const auto& q : t.polar) CHECK(q.value == doctest::Approx(t.rho0));
    }

    Portrait s2 = compute_portrait(parse_spec("Q = \"2*x*y\"\na = [1]"), opt);
    REQUIRE(s2.asymptote_directions.size() == 2);
    CHECK(s2.asymptote_directions[1] - s2.asymptote_directions[0] == doctest::Approx(std::numbers::pi));
}

TEST_CASE("environment seed override") {
    ::setenv("ISOCHRONE_SEED", "99", 1);
    CHECK(portrait_seed(7) == 99);
    ::setenv("ISOCHRONE_SEED", "nope", 1);
    CHECK(portrait_seed(7) == 7);
    ::unsetenv("ISOCHRONE_SEED");
    CHECK(portrait_seed(7) == 7);
}
