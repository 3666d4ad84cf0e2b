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

#include "ndup/matrix.h"

namespace ndup {

ComplexMatrix to_complex(const RealMatrix &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix &m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out(c, r) = std::conj(m(r, c));
        }
    }
    return out;
}

double max_abs(const RealMatrix &m) {
    double best = 0;
    for (double v : m.data()) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

double max_abs(const ComplexMatrix &m) {
    double best = 0;
    for (const Complex &v : m.data()) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

double max_abs_diff(const RealMatrix &a, const RealMatrix &b) {
    return max_abs(a - b);
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return max_abs(a - b);
}

bool all_finite(const RealMatrix &m) {
    return std::all_of(m.data().begin(), m.data().end(), [](double v) { return std::isfinite(v); });
}

bool all_finite(const ComplexMatrix &m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const Complex &v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

RealMatrix direct_sum(const RealMatrix &a, const RealMatrix &b) {
    RealMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            out(r, c) = a(r, c);
        }
    }
    for (size_t r = 0; r < b.rows(); r++) {
        for (size_t c = 0; c < b.cols(); c++) {
            out(a.rows() + r, a.cols() + c) = b(r, c);
        }
    }
    return out;
}

RealVector operator*(const RealMatrix &m, std::span<const double> v) {
    if (m.cols() != v.size()) {
        throw DimensionMismatch("matrix " + m.shape_str() + " times vector of length " + std::to_string(v.size()));
    }
    RealVector out(m.rows(), 0.0);
    for (size_t r = 0; r < m.rows(); r++) {
        out[r] = dot(m.row(r), v);
    }
    return out;
}

RealVector left_multiply(std::span<const double> v, const RealMatrix &m) {
    if (m.rows() != v.size()) {
        throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " times matrix " + m.shape_str());
    }
    RealVector out(m.cols(), 0.0);
    for (size_t r = 0; r < m.rows(); r++) {
        if (v[r] == 0) {
            continue;
        }
        for (size_t c = 0; c < m.cols(); c++) {
            out[c] += v[r] * m(r, c);
        }
    }
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("dot of lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    double total = 0;
    for (size_t k = 0; k < a.size(); k++) {
        total += a[k] * b[k];
    }
    return total;
}

double bilinear(std::span<const double> a, const RealMatrix &m, std::span<const double> b) {
    return dot(a, m * b);
}

}  // namespace ndup
