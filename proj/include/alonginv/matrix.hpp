#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "alonginv/common.hpp"

namespace alonginv {

using cx = std::complex<double>;

/// Dense row-major matrix. The complex instantiation `cmatrix` is the
/// ambient *-algebra element for everything in this library.
template <typename T>
class dense_matrix {
public:
    dense_matrix() = default;

    dense_matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    dense_matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("entry count does not match rows*cols");
    }

    dense_matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static dense_matrix identity(std::size_t n) {
        dense_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& entries() const noexcept { return data_; }
    std::vector<T>& entries() noexcept { return data_; }

    dense_matrix& operator+=(const dense_matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    dense_matrix& operator-=(const dense_matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    dense_matrix& operator*=(const T& s) {
        for (auto& e : data_) e *= s;
        return *this;
    }

    friend dense_matrix operator+(dense_matrix a, const dense_matrix& b) { return a += b; }
    friend dense_matrix operator-(dense_matrix a, const dense_matrix& b) { return a -= b; }
    friend dense_matrix operator*(dense_matrix a, const T& s) { return a *= s; }
    friend dense_matrix operator*(const T& s, dense_matrix a) { return a *= s; }
    friend dense_matrix operator-(dense_matrix a) {
        for (auto& e : a.data_) e = -e;
        return a;
    }

    friend dense_matrix operator*(const dense_matrix& a, const dense_matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        dense_matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const dense_matrix& a, const dense_matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_same_shape(const dense_matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using cmatrix = dense_matrix<cx>;

template <typename T>
dense_matrix<T> transpose(const dense_matrix<T>& m) {
    dense_matrix<T> r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

/// Conjugate transpose; the involution * of the ambient algebra.
inline cmatrix adjoint(const cmatrix& m) {
    cmatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline cmatrix zeros(std::size_t rows, std::size_t cols) { return cmatrix(rows, cols); }

inline cmatrix diag_matrix(const std::vector<cx>& d) {
    cmatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

inline cmatrix diag_matrix(const std::vector<double>& d) {
    cmatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

template <typename T>
dense_matrix<T> hcat(const dense_matrix<T>& a, const dense_matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
    dense_matrix<T> r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

template <typename T>
dense_matrix<T> vcat(const dense_matrix<T>& a, const dense_matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat column mismatch");
    dense_matrix<T> r(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
    return r;
}

inline double max_abs(const cmatrix& m) {
    double r = 0.0;
    for (const auto& e : m.entries()) r = std::max(r, std::abs(e));
    return r;
}

inline double fro_norm(const cmatrix& m) {
    double s = 0.0;
    for (const auto& e : m.entries()) s += std::norm(e);
    return std::sqrt(s);
}

inline cx trace(const cmatrix& m) {
    cx t = 0.0;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

inline bool all_finite(const cmatrix& m) {
    for (const auto& e : m.entries())
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

inline void require_finite(const cmatrix& m, const char* what) {
    if (!all_finite(m))
        throw error(errc::precondition_violated, std::string(what) + ": non-finite entries");
}

inline bool is_hermitian(const cmatrix& m, double tol_abs) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol_abs) return false;
    return true;
}

} // namespace alonginv
