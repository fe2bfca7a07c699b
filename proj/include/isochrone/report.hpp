#pragma once

#include "isochrone/centerlab.hpp"
#include "isochrone/commutant.hpp"
#include "isochrone/spec_io.hpp"
#include "isochrone/system.hpp"
#include "isochrone/trig.hpp"

#include <json.hpp>

namespace isochrone {

using ordered_json = nlohmann::ordered_json;

inline constexpr int report_version = 1;

ordered_json to_json(const Rational& q);
ordered_json to_json(const BivarPoly& p);
ordered_json to_json(const PolyVectorField& v);
/// {"c0": "num/den", "harmonics": [[j, "a_j", "b_j"], ...]}
ordered_json to_json(const TrigPoly& t);
ordered_json to_json(const CenterReport& r);
ordered_json to_json(const DarbouxReport& r);
ordered_json to_json(const CommutantBasis& b);
ordered_json to_json(const Form7Result& r);
ordered_json to_json(const Form8Result& r);

struct Analysis {
    ordered_json report;
    /// 0, or 2 when the spec asks for classification of a system without a center.
    int exit_code = 0;
};

/// Runs every analysis that applies to the spec's form. Classification,
/// Darboux data and reversibility need the factored (Q, a) form.
Analysis analyze(const SystemSpec& spec, const Settings& settings);

} // namespace isochrone
