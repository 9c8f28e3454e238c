#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qmix/errors.hpp"

namespace qmix {

/// Dense row-major complex matrix. The library only ever deals with small
/// dimensions, so there is no blocking, sparsity or expression machinery.
template <typename T = double>
class basic_matrix {
public:
    using real_type = T;
    using value_type = std::complex<T>;

    basic_matrix() = default;

    basic_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static basic_matrix identity(std::size_t n) {
        basic_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = value_type(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    value_type& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    const value_type& operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    basic_matrix& operator+=(const basic_matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    basic_matrix& operator-=(const basic_matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    basic_matrix& operator*=(const value_type& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend basic_matrix operator+(basic_matrix a, const basic_matrix& b) { return a += b; }
    friend basic_matrix operator-(basic_matrix a, const basic_matrix& b) { return a -= b; }
    friend basic_matrix operator*(basic_matrix a, const value_type& s) { return a *= s; }
    friend basic_matrix operator*(const value_type& s, basic_matrix a) { return a *= s; }

    friend basic_matrix operator*(const basic_matrix& a, const basic_matrix& b) {
        if (a.cols_ != b.rows_)
            throw dimension_mismatch("matrix product: inner dimensions differ");
        basic_matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const value_type aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend std::vector<value_type> operator*(const basic_matrix& a,
                                             const std::vector<value_type>& v) {
        if (a.cols_ != v.size())
            throw dimension_mismatch("matrix-vector product: dimensions differ");
        std::vector<value_type> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            value_type acc{};
            for (std::size_t j = 0; j < a.cols_; ++j) acc += a(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    basic_matrix adjoint() const {
        basic_matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    value_type trace() const {
        assert(square());
        value_type acc{};
        for (std::size_t i = 0; i < rows_; ++i) acc += (*this)(i, i);
        return acc;
    }

    T frobenius_norm() const {
        T acc{};
        for (const auto& x : data_) acc += std::norm(x);
        return std::sqrt(acc);
    }

    T max_abs() const {
        T m{};
        for (const auto& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    bool is_hermitian(T tolerance) const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tolerance)
                    return false;
        return true;
    }

private:
    void check_same_shape(const basic_matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw dimension_mismatch("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

using cmatrix = basic_matrix<double>;

/// Max-entry distance, the metric used for operator equality checks.
template <typename T>
T max_abs_diff(const basic_matrix<T>& a, const basic_matrix<T>& b) {
    return (a - b).max_abs();
}

/// Kronecker product with subsystem-1-major index convention:
/// out(i1*rb + i2, j1*cb + j2) = a(i1, j1) * b(i2, j2).
template <typename T>
basic_matrix<T> kron(const basic_matrix<T>& a, const basic_matrix<T>& b) {
    basic_matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const auto aij = a(i1, j1);
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    out(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
        }
    return out;
}

}  // namespace qmix
