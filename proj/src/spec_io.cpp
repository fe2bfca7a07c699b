#include "isochrone/spec_io.hpp"

#include <toml.hpp>

#include <fstream>
#include <sstream>

namespace isochrone {

using nlohmann::json;

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(Errc::Parse, line > 0 ? message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                  : message),
      line_(line), column_(column) {}

Settings resolve_settings(const SettingsOverrides& from_file, const SettingsOverrides& from_flags) {
    Settings s;
    for (const SettingsOverrides* o : {&from_file, &from_flags}) {
        if (o->rel_tol) s.ode.rel_tol = *o->rel_tol;
        if (o->abs_tol) s.ode.abs_tol = *o->abs_tol;
        if (o->ceiling) s.ode.ceiling = *o->ceiling;
        if (o->root_tol) s.root_tol = *o->root_tol;
        if (o->grid) s.grid = *o->grid;
        if (o->commutant_degree) s.commutant_degree = *o->commutant_degree;
        if (o->seed) s.seed = *o->seed;
    }
    return s;
}

UniformSystem SystemSpec::uniform() const {
    switch (form) {
    case SpecForm::Factored: return build_eq2(Q, a).uniform();
    case SpecForm::RawH: return UniformSystem(H);
    case SpecForm::Thm2: return build_thm2(thm2);
    }
    return UniformSystem(H);
}

std::optional<FactoredSystem> SystemSpec::factored() const {
    if (form == SpecForm::Factored) return build_eq2(Q, a);
    if (form == SpecForm::RawH && !H.is_zero() && H.is_homogeneous()) return build_eq2(H, {Rational(1)});
    return std::nullopt;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

// Message of a nested error without its "Code: " prefix.
std::string bare(const Error& e) {
    std::string m = e.what();
    std::string code(to_string(e.code()));
    return m.rfind(code + ": ", 0) == 0 ? m.substr(code.size() + 2) : m;
}

Rational rational_at(const json& v, const std::string& where) {
    try {
        if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_float()) return parse_rational(v.dump());
    } catch (const Error& e) {
        fail(where, bare(e));
    }
    fail(where, "expected an integer or a \"num/den\" string");
}

unsigned exponent_at(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(where, "expected a nonnegative integer exponent");
    return static_cast<unsigned>(v.get<long long>());
}

BivarPoly poly_at(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_poly(v.get<std::string>());
        } catch (const Error& e) {
            fail(where, bare(e));
        }
    }
    if (!v.is_array()) fail(where, "expected a polynomial string or a list of [coefficient, i, j] terms");
    BivarPoly p;
    for (std::size_t n = 0; n < v.size(); ++n) {
        const std::string at = where + "[" + std::to_string(n) + "]";
        const json& t = v[n];
        if (!t.is_array() || t.size() != 3) fail(at, "expected [coefficient, i, j]");
        p.add_term(rational_at(t[0], at + "[0]"), exponent_at(t[1], at + "[1]"), exponent_at(t[2], at + "[2]"));
    }
    return p;
}

template <class T>
std::optional<T> optional_number(const json& table, const char* key, const std::string& where) {
    if (!table.contains(key)) return std::nullopt;
    const json& v = table.at(key);
    if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number() || !(v.get<double>() > 0)) fail(where + "." + key, "expected a positive number");
        return v.get<double>();
    } else {
        if (!v.is_number_integer() || v.get<long long>() < 0) fail(where + "." + key, "expected a nonnegative integer");
        return static_cast<T>(v.get<long long>());
    }
}

SettingsOverrides settings_at(const json& v) {
    if (!v.is_object()) fail("settings", "expected a table");
    static const char* known[] = {"rel_tol", "abs_tol", "ceiling", "root_tol", "grid", "commutant_degree", "seed"};
    for (const auto& [key, _] : v.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) fail("settings." + key, "unknown setting");
    SettingsOverrides o;
    o.rel_tol = optional_number<double>(v, "rel_tol", "settings");
    o.abs_tol = optional_number<double>(v, "abs_tol", "settings");
    o.ceiling = optional_number<double>(v, "ceiling", "settings");
    o.root_tol = optional_number<double>(v, "root_tol", "settings");
    o.grid = optional_number<std::size_t>(v, "grid", "settings");
    o.commutant_degree = optional_number<unsigned>(v, "commutant_degree", "settings");
    o.seed = optional_number<std::uint64_t>(v, "seed", "settings");
    if (o.grid && *o.grid == 0) fail("settings.grid", "must be positive");
    return o;
}

json from_toml(const toml::node& node) {
    if (auto t = node.as_table()) {
        json out = json::object();
        for (const auto& [k, v] : *t) out[std::string(k.str())] = from_toml(v);
        return out;
    }
    if (auto a = node.as_array()) {
        json out = json::array();
        for (const auto& v : *a) out.push_back(from_toml(v));
        return out;
    }
    if (auto s = node.as_string()) return s->get();
    if (auto i = node.as_integer()) return i->get();
    if (auto f = node.as_floating_point()) return f->get();
    if (auto b = node.as_boolean()) return b->get();
    const auto& src = node.source().begin;
    throw ParseError("unsupported TOML value (dates and times are not accepted)", src.line, src.column);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

bool looks_like_json(std::string_view text, std::string_view source_name) {
    if (source_name.size() >= 5 && source_name.substr(source_name.size() - 5) == ".json") return true;
    auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string_view::npos && text[first] == '{';
}

} // namespace

SystemSpec spec_from_json(const json& doc) {
    if (!doc.is_object()) fail("spec", "expected a table at the top level");
    for (const auto& [key, _] : doc.items())
        if (key != "Q" && key != "a" && key != "H" && key != "thm2" && key != "settings") fail(key, "unknown key");
    const int forms = int(doc.contains("Q")) + int(doc.contains("H")) + int(doc.contains("thm2"));
    if (forms != 1) fail("spec", "exactly one of Q (with a), H or thm2 must be given");

    SystemSpec spec;
    if (doc.contains("Q")) {
        spec.form = SpecForm::Factored;
        spec.Q = poly_at(doc.at("Q"), "Q");
        if (!doc.contains("a")) fail("a", "radial coefficients are required with Q");
        const json& a = doc.at("a");
        if (!a.is_array()) fail("a", "expected a list of rationals");
        for (std::size_t i = 0; i < a.size(); ++i) spec.a.push_back(rational_at(a[i], "a[" + std::to_string(i) + "]"));
        if (spec.Q.is_zero() || !spec.Q.is_homogeneous() || spec.Q.degree() < 1) fail("Q", "must be a nonzero homogeneous polynomial of degree >= 1");
        if (spec.a.empty()) fail("a", "must not be empty");
    } else if (doc.contains("H")) {
        if (doc.contains("a")) fail("a", "only valid together with Q");
        spec.form = SpecForm::RawH;
        spec.H = poly_at(doc.at("H"), "H");
        if (spec.H.coeff(0, 0) != 0) fail("H", "must vanish at the origin");
    } else {
        if (doc.contains("a")) fail("a", "only valid together with Q");
        spec.form = SpecForm::Thm2;
        const json& t = doc.at("thm2");
        if (!t.is_object()) fail("thm2", "expected a table with p, c and h");
        for (const char* key : {"p", "c", "h"})
            if (!t.contains(key)) fail(std::string("thm2.") + key, "missing");
        spec.thm2.p = poly_at(t.at("p"), "thm2.p");
        spec.thm2.c = rational_at(t.at("c"), "thm2.c");
        spec.thm2.h = poly_at(t.at("h"), "thm2.h");
        if (spec.thm2.p.is_zero() || !spec.thm2.p.is_homogeneous() || spec.thm2.p.degree() < 1)
            fail("thm2.p", "must be a nonzero homogeneous polynomial of degree >= 1");
    }
    if (doc.contains("settings")) spec.settings = settings_at(doc.at("settings"));
    return spec;
}

SystemSpec parse_spec(std::string_view text, std::string_view source_name) {
    json doc;
    if (looks_like_json(text, source_name)) {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
            std::string msg = e.what();
            throw ParseError("malformed JSON: " + msg.substr(msg.find(']') + 2), line, column);
        }
    } else {
        try {
            doc = from_toml(toml::parse(text, source_name));
        } catch (const toml::parse_error& e) {
            const auto& at = e.source().begin;
            throw ParseError("malformed TOML: " + std::string(e.description()), at.line, at.column);
        }
    }
    return spec_from_json(doc);
}

SystemSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), path.string());
}

} // namespace isochrone
