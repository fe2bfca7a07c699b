#include "isochrone/polynomial.hpp"

#include "isochrone/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace isochrone {

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(Errc::Parse, "empty rational literal");
    if (s.front() == '+') s.erase(s.begin());

    auto valid_int = [](std::string_view t) {
        if (!t.empty() && t.front() == '-') t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    Rational q;
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (negative) whole.erase(whole.begin());
        if (whole.empty()) whole = "0";
        if (!valid_int(whole) || (!frac.empty() && !valid_int(frac)) || frac.find('-') != std::string::npos)
            throw Error(Errc::Parse, "malformed decimal literal '" + std::string(text) + "'");
        Integer num(whole + frac, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        q = Rational(num, den);
        if (negative) q = -q;
    } else if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den.front() == '-')
            throw Error(Errc::Parse, "malformed rational literal '" + std::string(text) + "'");
        Integer d(den, 10);
        if (d == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
        q = Rational(Integer(num, 10), d);
    } else {
        if (!valid_int(s)) throw Error(Errc::Parse, "malformed rational literal '" + std::string(text) + "'");
        q = Rational(Integer(s, 10));
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational from_double(double v) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "non-finite value");
    return Rational(v);
}

BivarPoly::BivarPoly(const Rational& constant) {
    if (constant != 0) terms_.emplace(Monomial{0, 0}, constant);
}

BivarPoly BivarPoly::x() { return monomial(1, 1, 0); }
BivarPoly BivarPoly::y() { return monomial(1, 0, 1); }

BivarPoly BivarPoly::monomial(const Rational& c, unsigned i, unsigned j) {
    BivarPoly p;
    p.add_term(c, i, j);
    return p;
}

BivarPoly BivarPoly::radius_squared(unsigned power) {
    return (monomial(1, 2, 0) + monomial(1, 0, 2)).pow(power);
}

int BivarPoly::degree() const noexcept {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.degree());
}

int BivarPoly::low_degree() const noexcept {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.begin()->first.degree());
}

bool BivarPoly::is_homogeneous() const noexcept { return degree() == low_degree(); }

Rational BivarPoly::coeff(unsigned i, unsigned j) const {
    auto it = terms_.find(Monomial{i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

void BivarPoly::add_term(const Rational& c, unsigned i, unsigned j) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BivarPoly BivarPoly::homogeneous_part(unsigned d) const {
    BivarPoly out;
    for (const auto& [m, c] : terms_)
        if (m.degree() == d) out.terms_.emplace_hint(out.terms_.end(), m, c);
    return out;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(c, m.i, m.j);
    return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(-c, m.i, m.j);
    return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ca * cb, ma.i + mb.i, ma.j + mb.j);
    return out;
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& other) {
    *this = *this * other;
    return *this;
}

BivarPoly& BivarPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
}

BivarPoly BivarPoly::operator-() const {
    BivarPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

BivarPoly BivarPoly::pow(unsigned e) const {
    BivarPoly result(Rational(1));
    BivarPoly base = *this;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return result;
}

double BivarPoly::evaluate(double x, double y) const {
    if (terms_.empty()) return 0.0;
    // Horner in y over rows of fixed y-power, each row Horner in x.
    unsigned max_j = 0;
    for (const auto& [m, c] : terms_) max_j = std::max(max_j, m.j);
    std::vector<std::vector<std::pair<unsigned, double>>> rows(max_j + 1);
    for (const auto& [m, c] : terms_) rows[m.j].emplace_back(m.i, c.get_d());

    auto horner_x = [x](std::vector<std::pair<unsigned, double>>& row) {
        if (row.empty()) return 0.0;
        std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first > b.first; });
        double acc = 0.0;
        unsigned power = row.front().first;
        for (const auto& [i, c] : row) {
            while (power > i) {
                acc *= x;
                --power;
            }
            acc += c;
        }
        for (; power > 0; --power) acc *= x;
        return acc;
    };

    double acc = 0.0;
    for (unsigned j = max_j + 1; j-- > 0;) {
        acc = acc * y + horner_x(rows[j]);
    }
    return acc;
}

Rational BivarPoly::evaluate(const Rational& x, const Rational& y) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (unsigned k = 0; k < m.i; ++k) t *= x;
        for (unsigned k = 0; k < m.j; ++k) t *= y;
        acc += t;
    }
    return acc;
}

BivarPoly arith(const BivarPoly& a, const BivarPoly& b, ArithOp op) {
    switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    }
    return {};
}

BivarPoly partial_x(const BivarPoly& p) {
    BivarPoly out;
    for (const auto& [m, c] : p.terms())
        if (m.i > 0) out.add_term(c * m.i, m.i - 1, m.j);
    return out;
}

BivarPoly partial_y(const BivarPoly& p) {
    BivarPoly out;
    for (const auto& [m, c] : p.terms())
        if (m.j > 0) out.add_term(c * m.j, m.i, m.j - 1);
    return out;
}

std::pair<BivarPoly, BivarPoly> partials(const BivarPoly& p) { return {partial_x(p), partial_y(p)}; }

BivarPoly rotational_derivative(const BivarPoly& p) {
    BivarPoly out;
    for (const auto& [m, c] : p.terms()) {
        if (m.j > 0) out.add_term(c * m.j, m.i + 1, m.j - 1);
        if (m.i > 0) out.add_term(-c * m.i, m.i - 1, m.j + 1);
    }
    return out;
}

HomoDecomposition homogeneous_components(const BivarPoly& p) {
    HomoDecomposition out;
    for (const auto& [m, c] : p.terms()) {
        if (out.empty() || out.back().degree != m.degree()) out.push_back({m.degree(), BivarPoly{}});
        out.back().part.add_term(c, m.i, m.j);
    }
    return out;
}

BivarPoly compose(const BivarPoly& h, const BivarPoly& U, const BivarPoly& V) {
    BivarPoly out;
    std::map<unsigned, BivarPoly> u_pows, v_pows;
    auto power_of = [](std::map<unsigned, BivarPoly>& cache, const BivarPoly& base, unsigned e) -> const BivarPoly& {
        auto it = cache.find(e);
        if (it == cache.end()) it = cache.emplace(e, base.pow(e)).first;
        return it->second;
    };
    for (const auto& [m, c] : h.terms()) out += c * (power_of(u_pows, U, m.i) * power_of(v_pows, V, m.j));
    return out;
}

std::optional<Rational> proportionality(const BivarPoly& a, const BivarPoly& b) {
    if (b.is_zero()) throw Error(Errc::InvalidArgument, "proportionality against the zero polynomial");
    if (a.is_zero()) return Rational(0);
    if (a.size() != b.size()) return std::nullopt;
    const auto& [m0, c0] = *b.terms().begin();
    Rational ratio = a.coeff(m0.i, m0.j) / c0;
    if (ratio == 0) return std::nullopt;
    if (a == b * ratio) return ratio;
    return std::nullopt;
}

std::string to_string(const BivarPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool has_var = m.i > 0 || m.j > 0;
        bool wrote = false;
        if (mag != 1 || !has_var) {
            os << mag.get_str();
            wrote = true;
        }
        auto var = [&](char name, unsigned e) {
            if (e == 0) return;
            if (wrote) os << '*';
            os << name;
            if (e > 1) os << '^' << e;
            wrote = true;
        };
        var('x', m.i);
        var('y', m.j);
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    BivarPoly parse() {
        skip_ws();
        if (at_end()) fail("empty polynomial");
        BivarPoly out;
        bool first = true;
        while (!at_end()) {
            int s = 1;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                s = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            skip_ws();
            out += parse_term() * Rational(s);
            skip_ws();
        }
        return out;
    }

private:
    BivarPoly parse_term() {
        BivarPoly term(Rational(1));
        bool need_factor = true;
        while (true) {
            skip_ws();
            if (at_end()) break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                term *= parse_number();
            } else if (c == 'x' || c == 'y') {
                ++pos_;
                unsigned e = parse_exponent();
                term *= (c == 'x' ? BivarPoly::monomial(1, e, 0) : BivarPoly::monomial(1, 0, e));
            } else if (need_factor) {
                fail(std::string("unexpected character '") + c + "'");
            } else {
                break;
            }
            need_factor = false;
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                need_factor = true;
                continue;
            }
            break;
        }
        if (need_factor) fail("dangling '*'");
        return term;
    }

    Rational parse_number() {
        std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '/')) ++pos_;
        return parse_rational(text_.substr(start, pos_ - start));
    }

    unsigned parse_exponent() {
        skip_ws();
        if (at_end() || peek() != '^') return 1;
        ++pos_;
        skip_ws();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected exponent after '^'");
        return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::Parse, msg + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

BivarPoly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

} // namespace isochrone
