#include "isochrone/commutant.hpp"

#include "isochrone/errors.hpp"
#include "isochrone/linalg.hpp"
#include "isochrone/univariate.hpp"

#include <algorithm>
#include <map>

namespace isochrone {

PolyVectorField lie_bracket(const PolyVectorField& X, const PolyVectorField& Y) {
    auto [x1x, x1y] = partials(X.P);
    auto [x2x, x2y] = partials(X.S);
    auto [y1x, y1y] = partials(Y.P);
    auto [y2x, y2y] = partials(Y.S);
    return {y1x * X.P + y1y * X.S - (x1x * Y.P + x1y * Y.S),
            y2x * X.P + y2y * X.S - (x2x * Y.P + x2y * Y.S)};
}

BivarPoly top_degree_determinant(const BivarPoly& top_part, long n) {
    const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();
    auto [hx, hy] = partials(top_part);
    const Rational shift(1 - n);
    return (x * hx + top_part * shift) * (y * hy + top_part * shift) - x * y * hx * hy;
}

std::set<unsigned> admissible_top_degrees(const UniformSystem& s) {
    if (s.H().is_zero()) throw Error(Errc::ZeroTopPart, "H is identically zero");
    const unsigned d = static_cast<unsigned>(s.H().degree());
    return {1u, d + 1};
}

namespace {

// Coefficient of monomial `m` in component `comp` (0: P, 1: S).
struct Slot {
    unsigned comp;
    Monomial m;
};

struct SlotLess {
    bool operator()(const Slot& a, const Slot& b) const {
        if (a.comp != b.comp) return a.comp < b.comp;
        GradedLex lex;
        if (lex(a.m, b.m)) return true;
        if (lex(b.m, a.m)) return false;
        return false;
    }
};

using SlotIndex = std::map<Slot, std::size_t, SlotLess>;

void index_field(const PolyVectorField& v, SlotIndex& rows) {
    for (const auto& [m, c] : v.P.terms()) rows.try_emplace(Slot{0, m}, 0);
    for (const auto& [m, c] : v.S.terms()) rows.try_emplace(Slot{1, m}, 0);
}

void number(SlotIndex& rows) {
    std::size_t k = 0;
    for (auto& [slot, idx] : rows) idx = k++;
}

void fill_column(RationalMatrix& mat, std::size_t col, const PolyVectorField& v, const SlotIndex& rows) {
    for (const auto& [m, c] : v.P.terms()) mat(rows.at(Slot{0, m}), col) = c;
    for (const auto& [m, c] : v.S.terms()) mat(rows.at(Slot{1, m}), col) = c;
}

} // namespace

bool in_span(const std::vector<PolyVectorField>& fields, const PolyVectorField& v) {
    if (v.is_zero()) return true;
    SlotIndex rows;
    for (const auto& f : fields) index_field(f, rows);
    index_field(v, rows);
    number(rows);
    RationalMatrix without(rows.size(), fields.size()), with(rows.size(), fields.size() + 1);
    for (std::size_t c = 0; c < fields.size(); ++c) {
        fill_column(without, c, fields[c], rows);
        fill_column(with, c, fields[c], rows);
    }
    fill_column(with, fields.size(), v, rows);
    return rank(without) == rank(with);
}

CommutantBasis commutant_nullspace(const PolyVectorField& X, unsigned n_max, bool include_constants) {
    if (n_max < 1) throw Error(Errc::InvalidArgument, "degree bound must be at least 1");
    std::vector<Slot> unknowns;
    for (unsigned comp = 0; comp < 2; ++comp)
        for (unsigned d = include_constants ? 0 : 1; d <= n_max; ++d)
            for (unsigned j = 0; j <= d; ++j) unknowns.push_back({comp, Monomial{d - j, j}});

    std::vector<PolyVectorField> images;
    images.reserve(unknowns.size());
    SlotIndex rows;
    for (const auto& u : unknowns) {
        PolyVectorField Y;
        (u.comp == 0 ? Y.P : Y.S) = BivarPoly::monomial(1, u.m.i, u.m.j);
        images.push_back(lie_bracket(X, Y));
        index_field(images.back(), rows);
    }
    number(rows);
    RationalMatrix mat(rows.size(), unknowns.size());
    for (std::size_t c = 0; c < unknowns.size(); ++c) fill_column(mat, c, images[c], rows);

    CommutantBasis out;
    out.degree_bound = n_max;
    out.includes_constants = include_constants;
    for (const auto& v : nullspace(mat)) {
        PolyVectorField Y;
        for (std::size_t c = 0; c < unknowns.size(); ++c) {
            if (v[c] == 0) continue;
            (unknowns[c].comp == 0 ? Y.P : Y.S).add_term(v[c], unknowns[c].m.i, unknowns[c].m.j);
        }
        if (!lie_bracket(X, Y).is_zero())
            throw Error(Errc::IdentityViolation, "nullspace vector does not commute with the field");
        out.basis.push_back(std::move(Y));
    }
    const bool x_admissible = X.degree() >= 0 && static_cast<unsigned>(X.degree()) <= n_max &&
                              (include_constants || (X.P.coeff(0, 0) == 0 && X.S.coeff(0, 0) == 0));
    out.contains_self = x_admissible && !X.is_zero() && in_span(out.basis, X);
    return out;
}

std::variant<PolyVectorField, NonPolynomialReport> radial_commuter(const FactoredSystem& s) {
    const unsigned k = s.k();
    if (k % 2 == 1) {
        Rational e(k, 2);
        e.canonicalize();
        return NonPolynomialReport{e};
    }
    BivarPoly scale = BivarPoly::radius_squared(k / 2) * s.radial_factor();
    return PolyVectorField{BivarPoly::x() * scale, BivarPoly::y() * scale};
}

BivarPoly reconstruct(const Form7Witness& w) {
    BivarPoly sum;
    for (std::size_t j = 0; j < w.a.size(); ++j) sum += BivarPoly::radius_squared(static_cast<unsigned>(j)) * w.a[j];
    return w.P * sum;
}

BivarPoly reconstruct(const Form8Witness& w) {
    BivarPoly sum;
    BivarPoly power(Rational(1));
    for (const auto& ak : w.a) {
        sum += power * ak;
        power *= w.beta;
    }
    return w.alpha * sum;
}

Form7Result check_form7(const BivarPoly& H) {
    if (H.is_zero()) throw Error(Errc::ZeroInput, "check_form7 needs a nonzero H");
    Form7Result out;
    auto comps = homogeneous_components(H);
    const unsigned low = comps.front().degree;
    if (low % 2 != 0) return out;
    Form7Witness w;
    w.P = comps.front().part;
    w.a = {Rational(1)};
    for (std::size_t c = 1; c < comps.size(); ++c) {
        unsigned gap = comps[c].degree - low;
        if (gap % 2 != 0) return out;
        unsigned j = gap / 2;
        auto ratio = proportionality(comps[c].part, BivarPoly::radius_squared(j) * w.P);
        if (!ratio) return out;
        if (w.a.size() <= j) w.a.resize(j + 1);
        w.a[j] = *ratio;
    }
    if (reconstruct(w) != H) return out;
    out.matches = true;
    out.witness = std::move(w);
    return out;
}

namespace {

// Some homogeneous beta of degree l with x beta_y - y beta_x == rhs, if any.
std::optional<BivarPoly> solve_rotation(const BivarPoly& rhs, unsigned l) {
    // Basis x^(l-t) y^t, t = 0..l; rows indexed the same way.
    RationalMatrix A(l + 1, l + 1);
    for (unsigned t = 0; t <= l; ++t) {
        BivarPoly image = rotational_derivative(BivarPoly::monomial(1, l - t, t));
        for (const auto& [m, c] : image.terms()) A(m.j, t) = c;
    }
    RationalVector b(l + 1);
    for (const auto& [m, c] : rhs.terms()) b[m.j] = c;
    auto sol = solve(A, b);
    if (!sol) return std::nullopt;
    BivarPoly beta;
    for (unsigned t = 0; t <= l; ++t) beta.add_term((*sol)[t], l - t, t);
    return beta;
}

Rational binomial(unsigned n, unsigned k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return Rational(out);
}

// G_k == a_k alpha (beta0 + t r^l)^k, expressed as polynomials in t.
struct PowerTarget {
    unsigned k;
    BivarPoly G;
    std::map<Monomial, UniPoly, GradedLex> C;  // coefficient of each monomial of alpha (beta0 + t r^l)^k
    Monomial pivot;                             // where G is nonzero
};

PowerTarget build_target(unsigned k, const BivarPoly& G, const BivarPoly& alpha, const BivarPoly& beta0, unsigned l) {
    PowerTarget pt{k, G, {}, G.terms().begin()->first};
    std::map<Monomial, std::vector<Rational>, GradedLex> coeffs;
    const BivarPoly rl = BivarPoly::radius_squared(l / 2);
    for (unsigned e = 0; e <= k; ++e) {
        // With l odd only e = 0 contributes; rl is then unused (t is pinned to 0).
        if (l % 2 == 1 && e > 0) break;
        BivarPoly D = alpha * beta0.pow(k - e) * rl.pow(e) * binomial(k, e);
        for (const auto& [m, c] : D.terms()) {
            auto& v = coeffs[m];
            if (v.size() <= e) v.resize(e + 1);
            v[e] += c;
        }
    }
    for (auto& [m, v] : coeffs) pt.C.emplace(m, UniPoly(v));
    return pt;
}

UniPoly coefficient_in_t(const PowerTarget& pt, const Monomial& m) {
    auto it = pt.C.find(m);
    return it == pt.C.end() ? UniPoly{} : it->second;
}

} // namespace

Form8Result check_form8(const BivarPoly& H) {
    if (H.is_zero()) throw Error(Errc::ZeroInput, "check_form8 needs a nonzero H");
    Form8Result out;
    const unsigned n = static_cast<unsigned>(H.degree());
    if (n == 0) return out;
    auto comps = homogeneous_components(H);

    for (unsigned l = 1; l <= n; ++l) {
        if (n % l != 0) continue;
        bool on_grid = std::all_of(comps.begin(), comps.end(), [l](const HomoComponent& c) { return c.degree % l == 0; });
        if (!on_grid) continue;
        BivarPoly alpha = H.homogeneous_part(l);
        if (alpha.is_zero()) continue;
        auto beta0 = solve_rotation(alpha * Rational(l), l);
        if (!beta0) continue;

        std::vector<PowerTarget> targets;
        for (unsigned k = 1; k < n / l; ++k) {
            BivarPoly G = H.homogeneous_part((k + 1) * l);
            if (!G.is_zero()) targets.push_back(build_target(k, G, alpha, *beta0, l));
        }

        // Polynomial constraints on t: g0 C_mu(t) - G_mu C_pivot(t) == 0.
        std::vector<UniPoly> constraints;
        for (const auto& pt : targets) {
            const Rational g0 = pt.G.coeff(pt.pivot.i, pt.pivot.j);
            const UniPoly c0 = coefficient_in_t(pt, pt.pivot);
            std::vector<Monomial> support;
            for (const auto& [m, c] : pt.G.terms()) support.push_back(m);
            for (const auto& [m, c] : pt.C) support.push_back(m);
            for (const auto& m : support) {
                UniPoly eq = UniPoly({g0}) * coefficient_in_t(pt, m) - UniPoly({pt.G.coeff(m.i, m.j)}) * c0;
                if (!eq.is_zero()) constraints.push_back(std::move(eq));
            }
        }

        auto admissible = [&](const Rational& t) {
            for (const auto& pt : targets)
                if (coefficient_in_t(pt, pt.pivot).evaluate(t) == 0) return false;
            for (const auto& c : constraints)
                if (c.evaluate(t) != 0) return false;
            return true;
        };

        std::vector<Rational> candidates;
        bool irrational_possible = false;
        if (l % 2 == 1 || constraints.empty()) {
            for (long t = 0; t < 8 && candidates.empty(); ++t)
                if (admissible(Rational(t))) candidates.push_back(Rational(t));
            if (l % 2 == 1) candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                                            [](const Rational& t) { return t != 0; }),
                                             candidates.end());
        } else {
            UniPoly g = constraints.front();
            for (std::size_t c = 1; c < constraints.size(); ++c) g = gcd(g, constraints[c]);
            if (g.degree() > 0) {
                for (const auto& t : rational_roots(g))
                    if (admissible(t)) candidates.push_back(t);
                if (candidates.empty() && !real_roots(g).empty()) irrational_possible = true;
            }
        }
        if (candidates.empty()) {
            out.inconclusive = out.inconclusive || irrational_possible;
            continue;
        }

        const Rational t = candidates.front();
        Form8Witness w;
        w.l = l;
        w.alpha = alpha;
        w.beta = *beta0 + BivarPoly::radius_squared(l / 2) * (l % 2 == 0 ? t : Rational(0));
        w.a.assign(n / l, Rational(0));
        w.a[0] = 1;
        for (const auto& pt : targets)
            w.a[pt.k] = pt.G.coeff(pt.pivot.i, pt.pivot.j) / coefficient_in_t(pt, pt.pivot).evaluate(t);
        if (reconstruct(w) != H) continue;
        out.matches = true;
        out.inconclusive = false;
        out.witness = std::move(w);
        return out;
    }
    return out;
}

bool predicts_polynomial_commuter(const BivarPoly& H) {
    if (H.is_zero()) throw Error(Errc::ZeroInput, "H is identically zero");
    return check_form7(H).matches || check_form8(H).matches;
}

} // namespace isochrone
