#pragma once

#include "isochrone/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace isochrone {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector multiply(const RationalVector& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Row echelon form from Bareiss fraction-free elimination. Rows are scaled to
/// integers first, so every intermediate entry stays an integer minor.
struct Echelon {
    std::vector<std::vector<Integer>> rows;   // the `rank` nonzero rows
    std::vector<std::size_t> pivot_columns;   // ascending
    std::size_t cols = 0;

    std::size_t rank() const noexcept { return pivot_columns.size(); }
};

Echelon fraction_free_echelon(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column, each scaled to a
/// primitive integer vector with positive leading entry.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Some solution of m v = b (free variables set to zero), if the system is consistent.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

} // namespace isochrone
