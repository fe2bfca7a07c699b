#include "isochrone/linalg.hpp"

#include "isochrone/errors.hpp"

#include <algorithm>

namespace isochrone {

RationalVector RationalMatrix::multiply(const RationalVector& v) const {
    if (v.size() != cols_) throw Error(Errc::InvalidArgument, "matrix-vector size mismatch");
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
    return out;
}

Echelon fraction_free_echelon(const RationalMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Integer>> a(nr, std::vector<Integer>(nc));
    for (std::size_t r = 0; r < nr; ++r) {
        Integer den = 1;
        for (std::size_t c = 0; c < nc; ++c)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < nc; ++c) a[r][c] = Integer(m(r, c) * den);
    }

    Echelon e;
    e.cols = nc;
    Integer prev = 1;
    std::size_t k = 0;
    for (std::size_t col = 0; col < nc && k < nr; ++col) {
        std::size_t piv = k;
        while (piv < nr && a[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(a[k], a[piv]);
        for (std::size_t i = k + 1; i < nr; ++i) {
            for (std::size_t j = col + 1; j < nc; ++j) {
                Integer t = a[k][col] * a[i][j] - a[i][col] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[k][col];
        e.pivot_columns.push_back(col);
        ++k;
    }
    a.resize(k);
    e.rows = std::move(a);
    return e;
}

std::size_t rank(const RationalMatrix& m) { return fraction_free_echelon(m).rank(); }

namespace {

void make_primitive(RationalVector& v) {
    Integer den = 1;
    for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    Integer g = 0;
    for (auto& x : v) {
        x *= den;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    if (g == 0) return;
    int lead = 0;
    for (const auto& x : v)
        if (x != 0) {
            lead = sgn(x);
            break;
        }
    Rational scale(lead < 0 ? Integer(-1) : Integer(1), g);
    scale.canonicalize();
    for (auto& x : v) x *= scale;
}

// Back substitution on the echelon rows with the given values of free variables.
void back_substitute(const Echelon& e, RationalVector& v, const std::vector<Integer>* rhs) {
    for (std::size_t r = e.rank(); r-- > 0;) {
        std::size_t pc = e.pivot_columns[r];
        Rational acc = rhs ? Rational((*rhs)[r]) : Rational(0);
        for (std::size_t j = pc + 1; j < e.cols; ++j)
            if (e.rows[r][j] != 0 && v[j] != 0) acc -= Rational(e.rows[r][j]) * v[j];
        v[pc] = acc / Rational(e.rows[r][pc]);
    }
}

} // namespace

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
    Echelon e = fraction_free_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto pc : e.pivot_columns) is_pivot[pc] = true;

    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(m.cols());
        v[f] = 1;
        back_substitute(e, v, nullptr);
        make_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
    if (b.size() != m.rows()) throw Error(Errc::InvalidArgument, "right-hand side size mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    Echelon e = fraction_free_echelon(aug);
    if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols()) return std::nullopt;

    Echelon lhs;
    lhs.cols = m.cols();
    lhs.pivot_columns = e.pivot_columns;
    std::vector<Integer> rhs;
    for (auto& row : e.rows) {
        rhs.push_back(row.back());
        lhs.rows.emplace_back(row.begin(), row.end() - 1);
    }
    RationalVector v(m.cols());
    back_substitute(lhs, v, &rhs);
    return v;
}

} // namespace isochrone
