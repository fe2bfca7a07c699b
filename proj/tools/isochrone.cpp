#include "isochrone/battery.hpp"
#include "isochrone/portrait.hpp"
#include "isochrone/report.hpp"
#include "isochrone/spec_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace isochrone;

namespace {

struct Flags {
    std::optional<double> rel_tol, abs_tol, ceiling, root_tol;
    std::optional<std::size_t> grid;
    std::optional<unsigned> commutant_degree;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rel-tol", rel_tol, "integrator relative tolerance");
        cmd->add_option("--abs-tol", abs_tol, "integrator absolute tolerance");
        cmd->add_option("--ceiling", ceiling, "radius treated as escape to infinity");
        cmd->add_option("--root-tol", root_tol, "root isolation tolerance");
        cmd->add_option("--grid", grid, "boundary sampling grid size");
        cmd->add_option("--commutant-degree", commutant_degree, "degree bound of the commutant search");
    }

    SettingsOverrides overrides() const {
        SettingsOverrides o;
        o.rel_tol = rel_tol;
        o.abs_tol = abs_tol;
        o.ceiling = ceiling;
        o.root_tol = root_tol;
        o.grid = grid;
        o.commutant_degree = commutant_degree;
        return o;
    }
};

int write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "isochrone: cannot write " << path << '\n';
        return 1;
    }
    return 0;
}

int run_analyze(const std::string& spec_path, const std::string& out_path, const Flags& flags) {
    SystemSpec spec = load_spec(spec_path);
    Settings settings = resolve_settings(spec.settings, flags.overrides());
    Analysis a = analyze(spec, settings);
    if (int rc = write_output(out_path, a.report.dump(2) + "\n")) return rc;
    if (a.exit_code == 2) std::cerr << "isochrone: not a center (zero-mean condition fails); classification skipped\n";
    return a.exit_code;
}

int run_portrait(const std::string& spec_path, const std::string& out_path, const std::string& format,
                 std::size_t trajectories, double range, std::optional<std::uint64_t> seed, const Flags& flags) {
    SystemSpec spec = load_spec(spec_path);
    PortraitOptions opt;
    opt.settings = resolve_settings(spec.settings, flags.overrides());
    opt.trajectories = trajectories;
    opt.range = range;
    opt.seed = portrait_seed(seed.value_or(opt.settings.seed));
    Portrait p = compute_portrait(spec, opt);
    return write_output(out_path, format == "csv" ? render_csv(p) : render_svg(p));
}

int run_verify(bool as_json) {
    auto results = run_battery({1, 2, 3, 4, 5, 6, 7, 8});
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    if (as_json) {
        ordered_json out = {{"report_version", report_version}, {"passed", all}, {"criteria", ordered_json::array()}};
        for (const auto& r : results)
            out["criteria"].push_back(
                {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds}, {"detail", r.detail}});
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& r : results) std::cout << format_line(r) << '\n';
        std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analysis of uniformly isochronous planar polynomial systems"};
    app.require_subcommand(1);

    Flags analyze_flags, portrait_flags;
    std::string spec_path, out_path = "-";

    auto* analyze = app.add_subcommand("analyze", "full JSON report for a system spec (TOML or JSON)");
    analyze->add_option("spec", spec_path, "system spec file")->required();
    analyze->add_option("--out,-o", out_path, "report path, - for stdout");
    analyze_flags.attach(analyze);

    std::string format = "svg";
    std::size_t trajectories = 24;
    double range = 0.0;
    std::optional<std::uint64_t> seed;
    auto* portrait = app.add_subcommand("portrait", "phase portrait as SVG or CSV");
    portrait->add_option("spec", spec_path, "system spec file")->required();
    portrait->add_option("--out,-o", out_path, "output path, - for stdout");
    portrait->add_option("--format", format, "svg or csv")->check(CLI::IsMember({"svg", "csv"}));
    portrait->add_option("--trajectories", trajectories, "number of orbits")->check(CLI::Range(1, 10000));
    portrait->add_option("--range", range, "half-width of the plotted window; 0 picks it from the boundary")
        ->check(CLI::NonNegativeNumber);
    portrait->add_option("--seed", seed, "sampling seed (ISOCHRONE_SEED overrides)");
    portrait_flags.attach(portrait);

    bool as_json = false;
    auto* verify = app.add_subcommand("paper-verify", "reproduce every claim about the non-reversible counterexample");
    verify->add_flag("--json", as_json, "machine-readable results");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*analyze) return run_analyze(spec_path, out_path, analyze_flags);
        if (*portrait) return run_portrait(spec_path, out_path, format, trajectories, range, seed, portrait_flags);
        if (*verify) return run_verify(as_json);
    } catch (const ParseError& e) {
        std::cerr << "isochrone: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "isochrone: " << e.what() << '\n';
        return e.code() == Errc::NotACenter ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "isochrone: internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
