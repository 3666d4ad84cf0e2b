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

#include <vector>

#include "ndup/matrix.h"

namespace ndup {

/// Relative tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;
/// Default relative tolerance of the positive-semidefinite test.
inline constexpr double kPsdTolerance = 1e-9;

/// max|M - M†| / max(1, max|M|).
double hermitian_defect(const ComplexMatrix &m);

/// Throws NonFinite, DimensionMismatch (non-square) or NonHermitianInput.
void require_hermitian(const ComplexMatrix &m);

struct Eigensystem {
    /// Ascending.
    std::vector<double> values;
    /// Column k is the unit eigenvector of values[k].
    ComplexMatrix vectors;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
Eigensystem hermitian_eigensystem(const ComplexMatrix &m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

struct PsdVerdict {
    bool psd = false;
    double min_eigenvalue = 0;
    /// The absolute threshold the minimum eigenvalue was compared against (negated).
    double threshold = 0;
};

/// psd iff min eigenvalue >= -tol * max(1, max|M|).
PsdVerdict is_positive_semidefinite(const ComplexMatrix &m, double tol = kPsdTolerance);

/// Cofactor expansion up to 3x3, LU with partial pivoting above.
Complex determinant(const ComplexMatrix &m);
double determinant(const RealMatrix &m);

}  // namespace ndup
