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

#include <random>

#include "ndup/measurement.h"

namespace ndup {

/// Commutation constant of quadrature pairs, [X, Y] = i / 2.
inline constexpr double kQuadratureGamma = 0.5;

/// Object (X_a, Y_a) and probe (X_b, Y_b) quadratures.
JointPhaseSpace quadrature_space();

/// Backaction-evading amplifier: X_b picks up G X_a and Y_a picks up -G Y_b.
RealMatrix bae_transfer(double gain);
/// Measures X_a with the rescaled meter X_b / G; disturbs Y_a.
LinearInteraction bae_interaction(double gain);

/// Noiseless quadrature transducer with meter X_b.
RealMatrix transducer_transfer();
LinearInteraction transducer_interaction();

/// T = I with an arbitrary meter selector. The meter and the disturbed output are
/// only required to commute when validate_outputs is set.
LinearInteraction identity_interaction(RealVector meter_selector, bool validate_outputs);

/// Single-mode probe covariance [[1/4, 1/2], [1/2, 1/4]] with zero means. Not a valid
/// state: its determinant is -3/16.
CovarianceState correlated_reference_probe();

/// Single-mode vacuum for quadratures.
CovarianceState quadrature_vacuum();

struct RandomModel {
    LinearInteraction interaction;
    CovarianceState joint_state;
    int attempts = 0;
};

/// Random symplectic transfer on one object and one probe mode with a random meter
/// selector, retried until meter and disturbed outputs commute. The joint state is a
/// product of random valid object and probe states.
RandomModel random_linear_model(std::mt19937_64 &rng, int max_attempts = 64);

}  // namespace ndup
