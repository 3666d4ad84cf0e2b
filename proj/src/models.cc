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

#include "ndup/models.h"

namespace ndup {

JointPhaseSpace quadrature_space() {
    return JointPhaseSpace::make(1, 1, kQuadratureGamma, {"X_a", "Y_a", "X_b", "Y_b"});
}

RealMatrix bae_transfer(double gain) {
    return RealMatrix{
        {1, 0, 0, 0},
        {0, 1, 0, -gain},
        {gain, 0, 1, 0},
        {0, 0, 0, 1},
    };
}

LinearInteraction bae_interaction(double gain) {
    if (gain == 0 || !std::isfinite(gain)) {
        throw ConfigError("gain must be finite and nonzero");
    }
    return build_interaction(bae_transfer(gain), quadrature_space(), {{0, 0, 1 / gain, 0}}, {0}, {1});
}

RealMatrix transducer_transfer() {
    return RealMatrix{
        {1, 0, -1, 0},
        {0, 0, 0, -1},
        {1, 0, 0, 0},
        {0, 1, 0, 1},
    };
}

LinearInteraction transducer_interaction() {
    return build_interaction(transducer_transfer(), quadrature_space(), {{0, 0, 1, 0}}, {0}, {1});
}

LinearInteraction identity_interaction(RealVector meter_selector, bool validate_outputs) {
    InteractionChecks checks;
    checks.output_commutativity = validate_outputs;
    return build_interaction(
        RealMatrix::identity(4), quadrature_space(), {std::move(meter_selector)}, {0}, {1}, checks);
}

CovarianceState correlated_reference_probe() {
    return CovarianceState::centered(
        SymplecticForm::standard(1, kQuadratureGamma), RealMatrix{{0.25, 0.5}, {0.5, 0.25}});
}

CovarianceState quadrature_vacuum() {
    return CovarianceState::vacuum(SymplecticForm::standard(1, kQuadratureGamma));
}

RandomModel random_linear_model(std::mt19937_64 &rng, int max_attempts) {
    JointPhaseSpace space = quadrature_space();
    std::normal_distribution<double> normal(0, 1);
    std::bernoulli_distribution probe_only(0.75);

    for (int attempt = 1; attempt <= max_attempts; attempt++) {
        RealMatrix transfer = random_symplectic(space.form, rng);
        RealVector selector(4, 0.0);
        if (probe_only(rng)) {
            selector[2] = normal(rng);
            selector[3] = normal(rng);
        } else {
            for (double &v : selector) {
                v = normal(rng);
            }
        }
        try {
            LinearInteraction ix = build_interaction(std::move(transfer), space, {selector}, {0}, {1});
            CovarianceState object = random_valid_covariance(SymplecticForm::standard(1, kQuadratureGamma), rng);
            CovarianceState probe = random_valid_covariance(SymplecticForm::standard(1, kQuadratureGamma), rng);
            return {std::move(ix), product_state(object, probe), attempt};
        } catch (const OutputsDoNotCommute &) {
            continue;
        }
    }
    throw Error("no commuting random model found in " + std::to_string(max_attempts) + " attempts");
}

}  // namespace ndup
