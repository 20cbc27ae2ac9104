#pragma once

// Exact linear algebra over Q: incremental echelon bases with coordinate
// tracking, reduced row echelon form and null spaces.

#include <optional>
#include <span>
#include <vector>

#include "wfa/matrix.hpp"
#include "wfa/semiring.hpp"

namespace wfa::linalg {

using Q = mpq_class;
using QVector = std::vector<Q>;
using QMatrix = Matrix<Q>;

inline std::optional<std::size_t> first_nonzero(std::span<const Q> v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            return i;
    return std::nullopt;
}

/// Independent vectors of fixed dimension, kept alongside a reduced echelon
/// form whose rows remember their expression in the original vectors.
/// Pivots are the first nonzero entry of each residual, so the outcome is a
/// deterministic function of the insertion order.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dimension) : dimension_(dimension) {}

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return vectors_.size(); }
    const std::vector<QVector>& vectors() const { return vectors_; }

    struct Reduction {
        QVector residual;      // v minus its projection along the span
        QVector coefficients;  // v - residual = sum_i coefficients[i] * vectors()[i]
        bool in_span() const { return !first_nonzero(residual).has_value(); }
    };

    Reduction reduce(std::span<const Q> v) const {
        if (v.size() != dimension_)
            throw shape_error("vector of length " + std::to_string(v.size()) +
                              " reduced against basis of dimension " + std::to_string(dimension_));
        Reduction r{QVector(v.begin(), v.end()), QVector(vectors_.size(), Q(0))};
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Q factor = r.residual[pivots_[k]];
            if (sgn(factor) == 0)
                continue;
            // rows_[k] has a 1 in its pivot column and 0 in every other pivot column.
            for (std::size_t j = pivots_[k]; j < dimension_; ++j)
                if (sgn(rows_[k][j]) != 0)
                    r.residual[j] -= factor * rows_[k][j];
            for (std::size_t i = 0; i < transforms_[k].size(); ++i)
                if (sgn(transforms_[k][i]) != 0)
                    r.coefficients[i] += factor * transforms_[k][i];
        }
        return r;
    }

    /// Adds `v` if it is independent of the current vectors; returns whether it was added.
    bool insert(std::span<const Q> v) {
        auto r = reduce(v);
        auto pivot = first_nonzero(r.residual);
        if (!pivot)
            return false;
        const std::size_t n = vectors_.size();
        // New echelon row: residual = v - sum coefficients_i * vectors_i.
        QVector transform(n + 1, Q(0));
        for (std::size_t i = 0; i < n; ++i)
            transform[i] = -r.coefficients[i];
        transform[n] = 1;
        const Q inv = 1 / r.residual[*pivot];
        for (auto& x : r.residual)
            x *= inv;
        for (auto& x : transform)
            x *= inv;
        // Clear the new pivot column from the existing rows.
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Q factor = rows_[k][*pivot];
            if (sgn(factor) == 0)
                continue;
            for (std::size_t j = 0; j < dimension_; ++j)
                rows_[k][j] -= factor * r.residual[j];
            transforms_[k].resize(n + 1, Q(0));
            for (std::size_t i = 0; i <= n; ++i)
                transforms_[k][i] -= factor * transform[i];
        }
        for (auto& t : transforms_)
            t.resize(n + 1, Q(0));
        rows_.push_back(std::move(r.residual));
        transforms_.push_back(std::move(transform));
        pivots_.push_back(*pivot);
        vectors_.emplace_back(v.begin(), v.end());
        return true;
    }

    /// Coordinates of `v` in vectors(), or nullopt when v is outside the span.
    std::optional<QVector> coordinates(std::span<const Q> v) const {
        auto r = reduce(v);
        if (!r.in_span())
            return std::nullopt;
        return std::move(r.coefficients);
    }

private:
    std::size_t dimension_;
    std::vector<QVector> vectors_;
    std::vector<QVector> rows_;
    std::vector<QVector> transforms_;
    std::vector<std::size_t> pivots_;
};

struct RowEchelon {
    QMatrix reduced;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form by Gauss-Jordan elimination, choosing as pivot
/// the first row (from the top) with a nonzero entry in the current column.
inline RowEchelon rref(QMatrix m) {
    RowEchelon out;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < m.rows() && sgn(m(pivot, col)) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != lead_row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(pivot, j), m(lead_row, j));
        const Q inv = 1 / m(lead_row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            m(lead_row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == lead_row || sgn(m(i, col)) == 0)
                continue;
            const Q factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= factor * m(lead_row, j);
        }
        out.pivot_columns.push_back(col);
        ++lead_row;
    }
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivot_columns.size(); }

/// Basis of {x : m * x = 0} read off the reduced row echelon form, one
/// vector per free column in increasing column order.
inline std::vector<QVector> null_space(const QMatrix& m) {
    const auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns)
        is_pivot[c] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        QVector x(m.cols(), Q(0));
        x[free] = 1;
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r)
            x[e.pivot_columns[r]] = -e.reduced(r, free);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Basis of the left null space {x : x * m = 0}.
inline std::vector<QVector> left_null_space(const QMatrix& m) { return null_space(transpose(m)); }

/// Inverse of a square matrix, or nullopt if singular.
inline std::optional<QMatrix> inverse(const QMatrix& m) {
    if (m.rows() != m.cols())
        throw shape_error("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    QMatrix aug(n, 2 * n, Q(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto e = rref(std::move(aug));
    if (e.pivot_columns.size() < n || (n > 0 && e.pivot_columns[n - 1] != n - 1))
        return std::nullopt;
    QMatrix inv(n, n, Q(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

} // namespace wfa::linalg
