#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"

namespace rigidity {

// Dense row-major matrix over an exact scalar. Vectors are columns; a matrix
// acts on the left via apply().
template <typename T>
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("matrix literal: ragged rows");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix&) const = default;

    Matrix operator+(const Matrix& rhs) const {
        check_same_shape(rhs, "+");
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + rhs.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& rhs) const {
        check_same_shape(rhs, "-");
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - rhs.data_[i];
        return r;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
        Matrix r(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += a * rhs(k, j);
            }
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw DimensionMismatch("matrix apply: vector length differs");
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    std::vector<T> row_vec(std::size_t i) const {
        std::vector<T> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_row(std::size_t i, const std::vector<T>& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    bool is_square() const { return rows_ == cols_; }

    bool is_identity() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? T(1) : T(0))) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) os << ", ";
            os << '[';
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) os << ", ";
                os << (*this)(i, j);
            }
            os << ']';
        }
        os << ']';
        return os.str();
    }

private:
    void check_same_shape(const Matrix& rhs, const char* op) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw DimensionMismatch(std::string("matrix ") + op + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

inline Int trace(const IntMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("trace: matrix not square");
    Int t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// Bareiss fraction-free elimination; every division is exact.
inline Int det(const IntMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

// Gauss-Jordan reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
        const Rat inv = Rat(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rat f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rational_rank(const IntMatrix& m) {
    RatMatrix r = to_rational(m);
    return rref_in_place(r).size();
}

inline IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("inverse: matrix not square");
    const Int d = det(m);
    if (d != 1 && d != -1)
        throw NotUnimodular("matrix has determinant " + d.str() + ", expected +1 or -1");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = Rat(m(i, j));
        aug(i, n + i) = 1;
    }
    rref_in_place(aug);
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& x = aug(i, n + j);
            if (boost::multiprecision::denominator(x) != 1)
                throw std::logic_error("unimodular inverse not integral");
            inv(i, j) = boost::multiprecision::numerator(x);
        }
    return inv;
}

// Integer power; negative exponents require a unimodular base.
inline IntMatrix pow(const IntMatrix& m, long long e) {
    if (!m.is_square()) throw DimensionMismatch("pow: matrix not square");
    IntMatrix base = e >= 0 ? m : unimodular_inverse(m);
    unsigned long long k = e >= 0 ? static_cast<unsigned long long>(e)
                                  : static_cast<unsigned long long>(-(e + 1)) + 1ULL;
    IntMatrix r = IntMatrix::identity(m.rows());
    while (k) {
        if (k & 1ULL) r = r * base;
        k >>= 1ULL;
        if (k) base = base * base;
    }
    return r;
}

}  // namespace rigidity
