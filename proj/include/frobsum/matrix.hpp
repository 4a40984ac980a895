#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace frobsum {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Dense matrix over an exact scalar type (long long, BigInt or BigRational).
/// Row-major storage; shapes are checked on every binary operation.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix&) const = default;

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& x = at(i, k);
                if (x == T(0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }

    Matrix scaled(const T& s) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
        return r;
    }

    T trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
        T t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    /// Kronecker product; row/column blocks follow this matrix.
    Matrix kron(const Matrix& o) const {
        Matrix r(rows_ * o.rows_, cols_ * o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const T& x = at(i, j);
                if (x == T(0)) continue;
                for (std::size_t k = 0; k < o.rows_; ++k)
                    for (std::size_t l = 0; l < o.cols_; ++l)
                        r.at(i * o.rows_ + k, j * o.cols_ + l) = x * o.at(k, l);
            }
        return r;
    }

    Matrix pow(unsigned long long e) const {
        if (rows_ != cols_) throw std::invalid_argument("power of non-square matrix");
        Matrix base = *this;
        Matrix acc = identity(rows_);
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

namespace detail {
inline BigRational to_big_rational(long long v) { return BigRational(v); }
inline BigRational to_big_rational(const BigInt& v) { return BigRational(v); }
inline const BigRational& to_big_rational(const BigRational& v) { return v; }
}  // namespace detail

/// Exact invertibility test (rank over the rationals).
template <typename T>
bool is_invertible(const Matrix<T>& m) {
    if (m.rows() != m.cols()) return false;
    const std::size_t n = m.rows();
    std::vector<std::vector<BigRational>> a(n, std::vector<BigRational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = detail::to_big_rational(m.at(i, j));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(a[piv], a[col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a[i][col] == 0) continue;
            BigRational f = a[i][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    return true;
}

/// Kronecker product of a list of matrices, left factor most significant.
template <typename T>
Matrix<T> kron_all(const std::vector<const Matrix<T>*>& ms) {
    if (ms.empty()) return Matrix<T>::identity(1);
    Matrix<T> acc = *ms[0];
    for (std::size_t i = 1; i < ms.size(); ++i) acc = acc.kron(*ms[i]);
    return acc;
}

}  // namespace frobsum
