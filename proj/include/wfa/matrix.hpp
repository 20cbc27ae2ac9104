#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wfa/errors.hpp"
#include "wfa/semiring.hpp"

namespace wfa {

/// Dense row-major matrix. Arithmetic lives in free functions templated on
/// the semiring, since the element type alone does not fix the operations
/// (mpz_class serves both N and Z).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols, T{});
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw shape_error("row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(cols));
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::vector<T> row_vector(std::size_t i) const {
        auto r = row(i);
        return {r.begin(), r.end()};
    }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c.push_back((*this)(i, j));
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <Semiring S>
using SMatrix = Matrix<typename S::value_type>;

/// Row vector over S; an element of the free semimodule S^n.
template <Semiring S>
using StateVector = std::vector<typename S::value_type>;

template <Semiring S>
SMatrix<S> zero_matrix(std::size_t rows, std::size_t cols) {
    return SMatrix<S>(rows, cols, S::zero());
}

template <Semiring S>
SMatrix<S> identity_matrix(std::size_t n) {
    auto m = zero_matrix<S>(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = S::one();
    return m;
}

template <Semiring S>
StateVector<S> zero_vector(std::size_t n) {
    return StateVector<S>(n, S::zero());
}

template <Semiring S>
StateVector<S> unit_vector(std::size_t n, std::size_t k) {
    auto v = zero_vector<S>(n);
    v.at(k) = S::one();
    return v;
}

template <Semiring S>
bool is_zero(std::span<const typename S::value_type> v) {
    const auto z = S::zero();
    for (const auto& x : v)
        if (!(x == z))
            return false;
    return true;
}

template <Semiring S>
SMatrix<S> multiply(const SMatrix<S>& a, const SMatrix<S>& b) {
    if (a.cols() != b.rows())
        throw shape_error("matrix product " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
    auto c = zero_matrix<S>(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (aik == S::zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = S::add(c(i, j), S::mul(aik, b(k, j)));
        }
    return c;
}

/// v · M for a row vector v.
template <Semiring S>
StateVector<S> row_times(std::span<const typename S::value_type> v, const SMatrix<S>& m) {
    if (v.size() != m.rows())
        throw shape_error("vector of length " + std::to_string(v.size()) + " times " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
    auto out = zero_vector<S>(m.cols());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == S::zero())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[j] = S::add(out[j], S::mul(v[k], m(k, j)));
    }
    return out;
}

/// M · c for a column vector c.
template <Semiring S>
std::vector<typename S::value_type> times_column(const SMatrix<S>& m,
                                                 std::span<const typename S::value_type> c) {
    if (c.size() != m.cols())
        throw shape_error(std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          " matrix times column of length " + std::to_string(c.size()));
    auto out = zero_vector<S>(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i] = S::add(out[i], S::mul(m(i, j), c[j]));
    return out;
}

/// Row vector times column vector.
template <Semiring S>
typename S::value_type dot(std::span<const typename S::value_type> a,
                           std::span<const typename S::value_type> b) {
    if (a.size() != b.size())
        throw shape_error("dot product of lengths " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()));
    auto acc = S::zero();
    for (std::size_t i = 0; i < a.size(); ++i)
        acc = S::add(acc, S::mul(a[i], b[i]));
    return acc;
}

template <Semiring S>
StateVector<S> scale(const typename S::value_type& alpha, std::span<const typename S::value_type> v) {
    StateVector<S> out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(S::mul(alpha, x));
    return out;
}

template <Semiring S>
StateVector<S> add_vectors(std::span<const typename S::value_type> a,
                           std::span<const typename S::value_type> b) {
    if (a.size() != b.size())
        throw shape_error("vector sum of lengths " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()));
    StateVector<S> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(S::add(a[i], b[i]));
    return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
    Matrix<T> t(m.cols(), m.rows(), T{});
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t(j, i) = m(i, j);
    return t;
}

/// Entry-wise image of a matrix under a map of element types.
template <class U, class T, class F>
Matrix<U> map_entries(const Matrix<T>& m, F&& f) {
    Matrix<U> out(m.rows(), m.cols(), U{});
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = f(m(i, j));
    return out;
}

} // namespace wfa
