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
#include <vector>

#include "json.hpp"
#include "ndup/hermitian.h"
#include "ndup/symplectic.h"

namespace ndup {

/// First and symmetrized second central moments of a set of phase-space operators.
///
/// sigma(a, b) = <{dZ_a, dZ_b}> with {A, B} = (AB + BA) / 2, so the diagonal holds
/// plain variances. The commutation form fixes the operator ordering and gamma.
struct CovarianceState {
    SymplecticForm form = SymplecticForm::standard(1, 1);
    RealVector mean;
    RealMatrix sigma;

    /// Validates shapes, finiteness, symmetry and non-negative variances.
    static CovarianceState make(SymplecticForm form, RealVector mean, RealMatrix sigma);
    /// Zero-mean state with the given covariance.
    static CovarianceState centered(SymplecticForm form, RealMatrix sigma);
    /// Minimum-uncertainty vacuum, sigma = (gamma / 2) I.
    static CovarianceState vacuum(SymplecticForm form);

    size_t modes() const {
        return form.modes();
    }
    /// sigma + (i / 2) * form.matrix(), the matrix whose positivity is the physicality test.
    ComplexMatrix uncertainty_matrix() const;

    bool operator==(const CovarianceState &other) const = default;
};

struct RsupVerdict {
    bool physical = false;
    double min_eigenvalue = 0;
};

RsupVerdict rsup_check(const CovarianceState &state, double tol = kPsdTolerance);

struct RobertsonPair {
    size_t position = 0;
    size_t conjugate = 0;
    /// Product of standard deviations.
    double product = 0;
    /// |<[A, B]>| / 2.
    double bound = 0;
    bool holds = false;
};

std::vector<RobertsonPair> robertson_check(const CovarianceState &state, double tol = 1e-12);

/// (gamma / 2) * S * Sᵀ; saturates the matrix uncertainty relation exactly.
RealMatrix pure_covariance(const RealMatrix &s, double gamma);

/// (gamma / 2) S Sᵀ + P with S random symplectic and P a random PSD perturbation.
CovarianceState random_valid_covariance(size_t modes, double gamma, uint64_t seed);
CovarianceState random_valid_covariance(const SymplecticForm &form, std::mt19937_64 &rng);

/// Congruence by a symplectic matrix; throws NotSymplectic.
CovarianceState transform_covariance(const CovarianceState &state, const RealMatrix &s);

/// Uncorrelated joint state; the result's form is the block sum of the two forms.
CovarianceState product_state(const CovarianceState &first, const CovarianceState &second);

/// {n, gamma, mean, sigma (row-major)}; "blocks" is written only for multi-block forms.
nlohmann::json to_json(const CovarianceState &state);
CovarianceState covariance_from_json(const nlohmann::json &doc);

nlohmann::json to_json(const RealMatrix &m);
RealMatrix real_matrix_from_json(const nlohmann::json &rows);

}  // namespace ndup
