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

#include "ndup/hermitian.h"

#include <limits>
#include <numeric>

namespace ndup {

namespace {

void require_square(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionMismatch("expected a square matrix, got " + m.shape_str());
    }
    if (m.rows() == 0) {
        throw DimensionMismatch("expected a non-empty matrix");
    }
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double total = 0;
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            if (r != c) {
                total += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(total);
}

double frobenius_norm(const ComplexMatrix &a) {
    double total = 0;
    for (const Complex &v : a.data()) {
        total += std::norm(v);
    }
    return std::sqrt(total);
}

// Zeroes a(p, q) with the unitary G = D * P, where D rephases column q so the
// entry becomes real and P is the classical real Jacobi rotation.
void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, size_t p, size_t q) {
    Complex apq = a(p, q);
    double mag = std::abs(apq);
    if (mag == 0) {
        return;
    }
    Complex phase = apq / mag;
    double app = a(p, p).real();
    double aqq = a(q, q).real();
    double theta = (aqq - app) / (2 * mag);
    double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
    double c = 1 / std::sqrt(t * t + 1);
    double s = t * c;
    Complex gqp = -s * std::conj(phase);
    Complex gqq = c * std::conj(phase);

    size_t n = a.rows();
    for (size_t k = 0; k < n; k++) {
        Complex akp = a(k, p);
        Complex akq = a(k, q);
        a(k, p) = akp * c + akq * gqp;
        a(k, q) = akp * s + akq * gqq;
    }
    for (size_t k = 0; k < n; k++) {
        Complex apk = a(p, k);
        Complex aqk = a(q, k);
        a(p, k) = c * apk + std::conj(gqp) * aqk;
        a(q, k) = s * apk + std::conj(gqq) * aqk;
    }
    for (size_t k = 0; k < n; k++) {
        Complex vkp = v(k, p);
        Complex vkq = v(k, q);
        v(k, p) = vkp * c + vkq * gqp;
        v(k, q) = vkp * s + vkq * gqq;
    }
    a(p, q) = 0;
    a(q, p) = 0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

double hermitian_defect(const ComplexMatrix &m) {
    require_square(m);
    double worst = 0;
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = r; c < m.cols(); c++) {
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return worst / std::max(1.0, max_abs(m));
}

void require_hermitian(const ComplexMatrix &m) {
    require_square(m);
    if (!all_finite(m)) {
        throw NonFinite("matrix has non-finite entries");
    }
    double defect = hermitian_defect(m);
    if (defect > kHermitianTolerance) {
        throw NonHermitianInput("matrix is not Hermitian (relative defect " + std::to_string(defect) + ")");
    }
}

Eigensystem hermitian_eigensystem(const ComplexMatrix &m) {
    require_hermitian(m);
    size_t n = m.rows();
    ComplexMatrix a = m;
    for (size_t k = 0; k < n; k++) {
        a(k, k) = a(k, k).real();
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; sweep++) {
        if (off_diagonal_norm(a) <= 1e-16 * scale) {
            break;
        }
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                jacobi_rotate(a, v, p, q);
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return a(x, x).real() < a(y, y).real(); });

    Eigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (size_t k = 0; k < n; k++) {
        out.values[k] = a(order[k], order[k]).real();
        for (size_t r = 0; r < n; r++) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    return hermitian_eigensystem(m).values;
}

PsdVerdict is_positive_semidefinite(const ComplexMatrix &m, double tol) {
    auto values = hermitian_eigenvalues(m);
    PsdVerdict verdict;
    verdict.min_eigenvalue = values.front();
    verdict.threshold = tol * std::max(1.0, max_abs(m));
    verdict.psd = verdict.min_eigenvalue >= -verdict.threshold;
    return verdict;
}

Complex determinant(const ComplexMatrix &m) {
    require_square(m);
    if (!all_finite(m)) {
        throw NonFinite("matrix has non-finite entries");
    }
    size_t n = m.rows();
    if (n == 1) {
        return m(0, 0);
    }
    if (n == 2) {
        return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    }
    if (n == 3) {
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    ComplexMatrix lu = m;
    Complex det = 1;
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; r++) {
            if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) {
                pivot = r;
            }
        }
        if (lu(pivot, col) == Complex{}) {
            return 0;
        }
        if (pivot != col) {
            for (size_t c = 0; c < n; c++) {
                std::swap(lu(pivot, c), lu(col, c));
            }
            det = -det;
        }
        det *= lu(col, col);
        for (size_t r = col + 1; r < n; r++) {
            Complex factor = lu(r, col) / lu(col, col);
            for (size_t c = col; c < n; c++) {
                lu(r, c) -= factor * lu(col, c);
            }
        }
    }
    return det;
}

double determinant(const RealMatrix &m) {
    return determinant(to_complex(m)).real();
}

}  // namespace ndup
