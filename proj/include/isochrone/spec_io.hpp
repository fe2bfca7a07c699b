#pragma once

#include "isochrone/centerlab.hpp"
#include "isochrone/errors.hpp"
#include "isochrone/ode.hpp"
#include "isochrone/system.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace isochrone {

/// Malformed input. `line` and `column` are 1-based; 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Optional numeric overrides, as read from a spec file or the command line.
struct SettingsOverrides {
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<double> ceiling;
    std::optional<double> root_tol;
    std::optional<std::size_t> grid;
    std::optional<unsigned> commutant_degree;
    std::optional<std::uint64_t> seed;
};

struct Settings {
    OdeSettings ode;
    double root_tol = 1e-12;
    std::size_t grid = 720;
    unsigned commutant_degree = 0;  // 0: the degree of the vector field
    std::uint64_t seed = 7;
    int isochronicity_samples = 10;
};

/// Later overrides win: resolve_settings(file, flags) gives flags precedence.
Settings resolve_settings(const SettingsOverrides& from_file, const SettingsOverrides& from_flags);

enum class SpecForm { Factored, RawH, Thm2 };

struct SystemSpec {
    SpecForm form = SpecForm::Factored;
    BivarPoly Q;
    std::vector<Rational> a;
    BivarPoly H;
    Thm2Data thm2;
    SettingsOverrides settings;

    UniformSystem uniform() const;
    /// The (Q, a) factorization: given directly, or Q = H, a = (1) for a homogeneous raw H.
    std::optional<FactoredSystem> factored() const;
};

/// Schema: {"Q": poly, "a": [rational...]} | {"H": poly} | {"thm2": {"p": poly, "c": rational, "h": poly}},
/// plus an optional "settings" table. A poly is a canonical string or a list of
/// [coefficient, i, j] triples; rationals are integers or "num/den" strings.
SystemSpec spec_from_json(const nlohmann::json& doc);

/// TOML unless the text is a JSON object or `source_name` ends in ".json".
SystemSpec parse_spec(std::string_view text, std::string_view source_name = "");
SystemSpec load_spec(const std::filesystem::path& path);

} // namespace isochrone
