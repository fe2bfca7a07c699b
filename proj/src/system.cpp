#include "isochrone/system.hpp"

#include "isochrone/errors.hpp"
#include "isochrone/univariate.hpp"

#include <algorithm>
#include <cmath>

namespace isochrone {

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) { return {a.P + b.P, a.S + b.S}; }
PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) { return {a.P - b.P, a.S - b.S}; }
PolyVectorField operator*(const Rational& c, const PolyVectorField& v) { return {v.P * c, v.S * c}; }

BivarPoly apply(const PolyVectorField& v, const BivarPoly& f) { return v.P * partial_x(f) + v.S * partial_y(f); }

BivarPoly divergence(const PolyVectorField& v) { return partial_x(v.P) + partial_y(v.S); }

UniformSystem::UniformSystem(BivarPoly H) : H_(std::move(H)) {
    if (H_.coeff(0, 0) != 0)
        throw Error(Errc::InvalidArgument, "H must vanish at the origin, got constant term " + to_string(H_.coeff(0, 0)));
}

PolyVectorField UniformSystem::vector_field() const {
    const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();
    return {-y + x * H_, x + y * H_};
}

BivarPoly FactoredSystem::radial_factor() const {
    BivarPoly out;
    BivarPoly r2 = BivarPoly::radius_squared();
    BivarPoly power(Rational(1));
    for (const auto& ai : a_) {
        out += power * ai;
        power *= r2;
    }
    return out;
}

bool FactoredSystem::radial_is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& v) { return v == 0; });
}

double FactoredSystem::R(double rho) const {
    double acc = 0.0, r2 = rho * rho;
    for (auto it = a_.rbegin(); it != a_.rend(); ++it) acc = acc * r2 + it->get_d();
    return acc;
}

FactoredSystem build_eq2(const BivarPoly& Q, std::vector<Rational> a) {
    if (Q.is_zero()) throw Error(Errc::NonHomogeneous, "Q must be a nonzero homogeneous polynomial");
    if (!Q.is_homogeneous()) throw Error(Errc::NonHomogeneous, "Q is not homogeneous: " + to_string(Q));
    if (Q.degree() < 1) throw Error(Errc::NonHomogeneous, "Q must have degree k >= 1");
    if (a.empty()) throw Error(Errc::EmptyRadial, "radial coefficient list a_0..a_m is empty");
    FactoredSystem s;
    s.Q_ = Q;
    s.a_ = std::move(a);
    s.H_ = s.Q_ * s.radial_factor();
    return s;
}

UniformSystem build_thm2(const BivarPoly& p, const Rational& c, const BivarPoly& h) {
    if (p.is_zero() || !p.is_homogeneous() || p.degree() < 1)
        throw Error(Errc::NonHomogeneous, "p must be homogeneous of degree >= 1, got " + to_string(p));
    BivarPoly q = rotational_derivative(p) * c;
    return UniformSystem(q * compose(h, BivarPoly::radius_squared(), p));
}

UniformSystem build_thm2(const Thm2Data& data) { return build_thm2(data.p, data.c, data.h); }

DarbouxReport darboux_report(const FactoredSystem& s) {
    DarbouxReport r;
    const PolyVectorField X = s.vector_field();
    const BivarPoly r2 = BivarPoly::radius_squared();
    r.f1 = r2;
    r.f2 = s.radial_factor();

    BivarPoly weighted;  // sum_i i a_i r^(2i)
    BivarPoly power(Rational(1));
    for (std::size_t i = 0; i < s.radial().size(); ++i) {
        weighted += power * (s.radial()[i] * static_cast<unsigned long>(i));
        power *= r2;
    }
    r.K1 = s.Q() * r.f2 * Rational(2);
    r.K2 = s.Q() * weighted * Rational(2);
    r.div = divergence(X);

    r.invariant1_holds = apply(X, r.f1) == r.K1 * r.f1;
    r.invariant2_holds = apply(X, r.f2) == r.K2 * r.f2;
    r.e1 = Rational(s.k() + 2, 2);
    r.e1.canonicalize();
    r.e2 = 1;
    r.identity_holds = r.K1 * r.e1 + r.K2 == r.div;
    if (!(r.invariant1_holds && r.invariant2_holds && r.identity_holds))
        throw Error(Errc::IdentityViolation, "Darboux identities failed for H = " + to_string(s.H()));
    return r;
}

std::vector<double> invariant_circles(const FactoredSystem& s, double tol) {
    if (s.radial_is_zero()) throw Error(Errc::ZeroRadial, "R is identically zero");
    // u = rho^2 turns R into a polynomial in u; positive u-roots give the radii.
    UniPoly Ru(s.radial());
    if (Ru.degree() == 0) return {};
    UniPoly sf = squarefree_part(Ru);
    std::vector<double> radii;
    for (auto iv : isolate_real_roots(sf, Rational(0), root_bound(sf))) {
        Rational width = from_double(tol);
        while (true) {
            iv = refine_root(sf, iv, width);
            double rlo = std::sqrt(iv.lo.get_d()), rhi = std::sqrt(iv.hi.get_d());
            if (rhi - rlo <= tol * std::max(1.0, rhi)) {
                radii.push_back(0.5 * (rlo + rhi));
                break;
            }
            width /= 1024;
        }
    }
    return radii;
}

} // namespace isochrone
