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

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ndup/matrix.h"

namespace ndup {

/// The unscaled symplectic unit J = [[0, I], [-I, 0]] on n modes, ordering (x_1..x_n, p_1..p_n).
RealMatrix standard_symplectic_unit(size_t modes);

/// A constant commutation form [Z_a, Z_b] = i * matrix(a, b).
///
/// The form is a direct sum of standard blocks: each block of k modes is ordered
/// (x_1..x_k, p_1..p_k) and contributes gamma * J_k. A single block is the usual
/// (x..., p...) convention; two blocks describe an object followed by a probe.
class SymplecticForm {
   public:
    static SymplecticForm standard(size_t modes, double gamma);
    static SymplecticForm blocks(std::vector<size_t> block_modes, double gamma);

    size_t modes() const;
    size_t dim() const {
        return 2 * modes();
    }
    double gamma() const {
        return gamma_;
    }
    const std::vector<size_t> &block_modes() const {
        return block_modes_;
    }
    /// gamma * J in this form's ordering.
    const RealMatrix &matrix() const {
        return matrix_;
    }
    /// J in this form's ordering.
    RealMatrix unit() const;
    /// Permutation P with P * unit() * Pᵀ = standard_symplectic_unit(modes()).
    RealMatrix permutation_to_standard() const;
    /// (position index, conjugate index) for each mode, in this form's ordering.
    std::vector<std::pair<size_t, size_t>> conjugate_pairs() const;

    bool operator==(const SymplecticForm &other) const = default;

   private:
    SymplecticForm(std::vector<size_t> block_modes, double gamma);

    std::vector<size_t> block_modes_;
    double gamma_ = 0;
    RealMatrix matrix_;
};

/// max|S J Sᵀ - J| <= tol with J = form.unit(). Throws DimensionMismatch.
bool is_symplectic(const RealMatrix &s, const SymplecticForm &form, double tol = 1e-9);
double symplectic_defect(const RealMatrix &s, const SymplecticForm &form);

/// Rotation of one canonical pair by angle: (x, p) -> (cos x + sin p, -sin x + cos p).
RealMatrix phase_rotation(double angle);

/// Deterministic random element of Sp(2n, R) for the standard form.
///
/// Built as a product of single-mode rotations, single-mode squeezers, symmetric
/// position shears and two-mode beam-splitter mixings, each symplectic on its own.
RealMatrix random_symplectic(size_t modes, uint64_t seed);
RealMatrix random_symplectic(size_t modes, std::mt19937_64 &rng);
/// Same construction, transported to the ordering of an arbitrary block form.
RealMatrix random_symplectic(const SymplecticForm &form, std::mt19937_64 &rng);

}  // namespace ndup
