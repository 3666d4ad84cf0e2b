// Copyright 2026 The ndup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ndup/errors.h"

namespace ndup {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major matrix. Small (a few dozen rows at most) by intent.
template <typename T>
class Matrix {
   public:
    using value_type = T;

    Matrix() = default;
    Matrix(size_t rows, size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    }

    /// Builds from nested rows; all rows must have the same length.
    Matrix(std::initializer_list<std::initializer_list<T>> rows) : rows_(rows.size()) {
        cols_ = rows.size() ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows) {
            if (r.size() != cols_) {
                throw DimensionMismatch("ragged matrix literal");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t k = 0; k < n; k++) {
            m(k, k) = T{1};
        }
        return m;
    }

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    T &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const T &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }

    std::span<const T> row(size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<T> row(size_t r) {
        return {data_.data() + r * cols_, cols_};
    }
    const std::vector<T> &data() const {
        return data_;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (size_t r = 0; r < rows_; r++) {
            for (size_t c = 0; c < cols_; c++) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    Matrix &operator+=(const Matrix &other) {
        require_same_shape(other);
        for (size_t k = 0; k < data_.size(); k++) {
            data_[k] += other.data_[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &other) {
        require_same_shape(other);
        for (size_t k = 0; k < data_.size(); k++) {
            data_[k] -= other.data_[k];
        }
        return *this;
    }
    Matrix &operator*=(T scale) {
        for (auto &v : data_) {
            v *= scale;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) {
        return a += b;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        return a -= b;
    }
    friend Matrix operator*(T s, Matrix a) {
        return a *= s;
    }
    friend Matrix operator*(Matrix a, T s) {
        return a *= s;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw DimensionMismatch(
                "cannot multiply " + a.shape_str() + " by " + b.shape_str());
        }
        Matrix out(a.rows_, b.cols_);
        for (size_t r = 0; r < a.rows_; r++) {
            for (size_t k = 0; k < a.cols_; k++) {
                T v = a(r, k);
                if (v == T{}) {
                    continue;
                }
                for (size_t c = 0; c < b.cols_; c++) {
                    out(r, c) += v * b(k, c);
                }
            }
        }
        return out;
    }
    bool operator==(const Matrix &other) const = default;

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

   private:
    void require_same_shape(const Matrix &other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw DimensionMismatch("shape " + shape_str() + " vs " + other.shape_str());
        }
    }

    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

ComplexMatrix to_complex(const RealMatrix &m);
ComplexMatrix adjoint(const ComplexMatrix &m);

/// Largest absolute entry; 0 for an empty matrix.
double max_abs(const RealMatrix &m);
double max_abs(const ComplexMatrix &m);
double max_abs_diff(const RealMatrix &a, const RealMatrix &b);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

bool all_finite(const RealMatrix &m);
bool all_finite(const ComplexMatrix &m);

/// Block-diagonal direct sum [[a, 0], [0, b]].
RealMatrix direct_sum(const RealMatrix &a, const RealMatrix &b);

RealVector operator*(const RealMatrix &m, std::span<const double> v);
/// Row vector times matrix: (vᵀ·m)ᵀ.
RealVector left_multiply(std::span<const double> v, const RealMatrix &m);
double dot(std::span<const double> a, std::span<const double> b);
/// aᵀ·m·b.
double bilinear(std::span<const double> a, const RealMatrix &m, std::span<const double> b);

}  // namespace ndup
