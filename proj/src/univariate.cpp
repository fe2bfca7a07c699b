#include "isochrone/univariate.hpp"

#include "isochrone/errors.hpp"

#include <algorithm>
#include <cmath>

namespace isochrone {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::evaluate(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double UniPoly::evaluate(double t) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
    return acc;
}

UniPoly UniPoly::derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<unsigned long>(k));
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> out = c_;
    Rational lc = leading();
    for (auto& v : out) v /= lc;
    return UniPoly(std::move(out));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] += b.c_[k];
    return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] -= b.c_[k];
    return UniPoly(std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(out));
}

DivMod divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    int db = b.degree();
    int dq = a.degree() - db;
    if (dq < 0) return {UniPoly{}, a};
    std::vector<Rational> quo(static_cast<std::size_t>(dq) + 1);
    const Rational& lb = b.leading();
    for (int k = dq; k >= 0; --k) {
        Rational f = rem[static_cast<std::size_t>(k + db)] / lb;
        quo[static_cast<std::size_t>(k)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly u = a, v = b;
    while (!v.is_zero()) {
        UniPoly r = divmod(u, v).remainder;
        u = std::move(v);
        v = std::move(r);
    }
    return u.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.degree() <= 0) return p;
    UniPoly g = gcd(p, p.derivative());
    return divmod(p, g).quotient.monic();
}

Rational root_bound(const UniPoly& p) {
    if (p.degree() <= 0) return 1;
    Rational m = 0;
    for (int k = 0; k < p.degree(); ++k) m = std::max<Rational>(m, abs(p.coeffs()[static_cast<std::size_t>(k)] / p.leading()));
    return m + 1;
}

namespace {

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        UniPoly r = divmod(chain[chain.size() - 2], chain.back()).remainder;
        if (r.is_zero()) break;
        chain.push_back(UniPoly{} - r);
    }
    if (chain.back().is_zero()) chain.pop_back();
    return chain;
}

int sign_variations(const std::vector<UniPoly>& chain, const Rational& t) {
    int variations = 0;
    int last = 0;
    for (const auto& q : chain) {
        int s = q.sign_at(t);
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

// Distinct roots in (lo, hi].
int count_roots(const std::vector<UniPoly>& chain, const Rational& lo, const Rational& hi) {
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

void isolate(const std::vector<UniPoly>& chain, const Rational& lo, const Rational& hi, int count,
             std::vector<RootInterval>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.push_back({lo, hi});
        return;
    }
    Rational mid = (lo + hi) / 2;
    int left = count_roots(chain, lo, mid);
    isolate(chain, lo, mid, left, out);
    isolate(chain, mid, hi, count - left, out);
}

// Shrinks (lo, hi] holding one root of squarefree p until hi - lo <= width.
RootInterval refine(const UniPoly& p, const std::vector<UniPoly>& chain, RootInterval iv, const Rational& width) {
    if (p.sign_at(iv.hi) == 0) return {iv.hi, iv.hi};
    while (iv.hi - iv.lo > width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        int sm = p.sign_at(mid);
        if (sm == 0) return {mid, mid};
        if (count_roots(chain, iv.lo, mid) == 1)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

} // namespace

RootInterval refine_root(const UniPoly& squarefree, RootInterval iv, const Rational& width) {
    if (iv.lo == iv.hi) return iv;
    return refine(squarefree, sturm_chain(squarefree), iv, width);
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw Error(Errc::IdenticallyZero, "root isolation of the zero polynomial");
    if (p.degree() == 0 || hi <= lo) return {};
    UniPoly sf = squarefree_part(p);
    auto chain = sturm_chain(sf);
    std::vector<RootInterval> out;
    isolate(chain, lo, hi, count_roots(chain, lo, hi), out);
    for (auto& iv : out) {
        if (sf.sign_at(iv.hi) == 0) iv.lo = iv.hi;
    }
    return out;
}

std::vector<double> real_roots(const UniPoly& p, double tol) {
    if (p.is_zero()) throw Error(Errc::IdenticallyZero, "root isolation of the zero polynomial");
    if (p.degree() == 0) return {};
    UniPoly sf = squarefree_part(p);
    auto chain = sturm_chain(sf);
    Rational bound = root_bound(sf);
    std::vector<double> roots;
    for (const auto& iv : isolate_real_roots(sf, -bound - 1, bound)) {
        RootInterval r = refine(sf, chain, iv, from_double(tol));
        roots.push_back(to_double((r.lo + r.hi) / 2));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<Rational> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error(Errc::IdenticallyZero, "rational roots of the zero polynomial");
    if (p.degree() == 0) return {};
    UniPoly sf = squarefree_part(p);
    // Clear denominators; a rational root n/d of a primitive integer polynomial has d | lc.
    Integer den_lcm = 1;
    for (const auto& c : sf.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    Integer lc = abs(Integer(sf.leading() * den_lcm));

    auto chain = sturm_chain(sf);
    Rational bound = root_bound(sf);
    Rational width = Rational(1, 4) / Rational(lc);
    std::vector<Rational> out;
    for (const auto& iv : isolate_real_roots(sf, -bound - 1, bound)) {
        RootInterval r = refine(sf, chain, iv, width);
        if (r.lo == r.hi) {
            out.push_back(r.lo);
            continue;
        }
        Rational scaled_mid = (r.lo + r.hi) / 2 * Rational(lc);
        Integer n;
        mpz_fdiv_q(n.get_mpz_t(), scaled_mid.get_num_mpz_t(), scaled_mid.get_den_mpz_t());
        for (Integer cand = n - 1; cand <= n + 2; ++cand) {
            Rational q(cand, lc);
            q.canonicalize();
            if (q > r.lo && q <= r.hi && sf.sign_at(q) == 0) {
                out.push_back(q);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace isochrone
