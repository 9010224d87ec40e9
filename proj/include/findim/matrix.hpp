#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <findim/errors.hpp>
#include <findim/rational.hpp>

namespace findim {

// Dense matrix of exact rationals, row-major. Matrices are plain values:
// cheap to copy at engine scale and safe to share read-only across threads.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw Error("ragged initializer for Matrix");
            for (long long v : row) entries_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (e != 0) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator+(const Matrix& other) const {
        require_same_shape(other, "+");
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + other.entries_[i];
        return r;
    }

    Matrix operator-(const Matrix& other) const {
        require_same_shape(other, "-");
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - other.entries_[i];
        return r;
    }

    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = -entries_[i];
        return r;
    }

    Matrix operator*(const Matrix& other) const {
        if (cols_ != other.rows_)
            throw Error("matrix product shape mismatch: " + shape() + " * " + other.shape());
        Matrix r(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j) {
                    const Rational& b = other(k, j);
                    if (b == 0) continue;
                    r(i, j) += a * b;
                }
            }
        }
        return r;
    }

    Matrix scaled(const Rational& s) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * s;
        return r;
    }

    Matrix column(std::size_t j) const {
        Matrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }

    // Columns of this matrix restricted to the given column indices, in order.
    Matrix select_columns(const std::vector<std::size_t>& indices) const {
        Matrix r(rows_, indices.size());
        for (std::size_t j = 0; j < indices.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) r(i, j) = (*this)(i, indices[j]);
        return r;
    }

    Matrix select_rows(const std::vector<std::size_t>& indices) const {
        Matrix r(indices.size(), cols_);
        for (std::size_t i = 0; i < indices.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(indices[i], j);
        return r;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void require_same_shape(const Matrix& other, const char* op) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw Error(std::string("matrix shape mismatch for '") + op + "': " + shape() + " vs " +
                        other.shape());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw Error("hstack row mismatch: " + a.shape() + " | " + b.shape());
    Matrix r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

} // namespace findim
