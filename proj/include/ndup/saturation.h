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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ndup/grid.h"

namespace ndup {

/// Outcome of minimizing ||K_lambda psi|| at one lambda.
///
/// `sigma_min` is the smallest singular value of K_lambda discretized with fourth-order
/// central differences. The residual normalizes it so it is scale free and does not
/// collapse for operators with continuous spectrum:
///
///   ratio = ||K psi|| / sqrt((||K psi||^2 + ||K^dagger psi||^2) / 2)
///
/// at the minimizing psi. The ratio is 1 whenever K_lambda is Hermitian up to a phase
/// and 0 when psi is annihilated. It is evaluated with both the central-difference and
/// the spectral derivative, and `residual` is the larger of the two, so a state the grid
/// does not resolve cannot pass as annihilated. When K_lambda vanishes identically,
/// every state is annihilated and all values are 0.
struct ResidualEvaluation {
    ComplexVector lambda;
    double residual = 0;
    double central_residual = 0;
    double spectral_residual = 0;
    double sigma_min = 0;
    bool zero_operator = false;
    int iterations = 0;
    /// Minimizing state, normalized with the grid quadrature.
    ComplexVector state;
};

/// Minimizes ||K_lambda psi|| over normalized psi on a line grid with fourth-order
/// central differences (zero amplitude outside the grid) and shifted inverse iteration
/// on K^dagger K. Operators must be at most linear in x. Throws ConfigError otherwise.
ResidualEvaluation annihilation_residual(const std::vector<GridOperator> &ops, const ComplexVector &lambda,
                                         const Grid &grid, int max_iterations = 25);

struct LandscapePoint {
    double theta = 0;
    double phi = 0;
    ComplexVector lambda;
    double residual = 0;
    double sigma_min = 0;
};

struct SearchOptions {
    /// Coarse samples per angle for two operators; total random samples is its square
    /// otherwise.
    size_t resolution = 64;
    /// Samples on the real slice.
    size_t real_slice_points = 181;
    /// Restricts lambda to real vectors.
    bool real_only = false;
    /// Local descent on the squared residual from the best coarse point.
    bool refine = true;
    int max_iterations = 25;
    uint64_t seed = 1;
};

struct AnnihilationSearch {
    LandscapePoint best;
    ComplexVector argmin_state;
    double central_residual = 0;
    double spectral_residual = 0;
    std::vector<LandscapePoint> landscape;
    /// Residual at the minimizer on the staggered grid with half the spacing.
    double refined_residual = 0;
    size_t evaluations = 0;
};

/// Unit complex lambda for two operators: (cos theta, sin theta e^{i phi}).
ComplexVector sphere_point(double theta, double phi);

/// Scans lambda on the unit sphere (the overall phase quotiented out), refines the
/// minimum, and checks it on the staggered grid with half the spacing. Throws GridTooCoarse when
/// the residual there moves by more than 10% of max(residual, 1e-3).
AnnihilationSearch min_annihilation_residual(const std::vector<GridOperator> &ops, const Grid &grid,
                                             const SearchOptions &options = {});

/// Residuals at a fixed lambda on `grid` and `levels - 1` successive staggered
/// refinements.
std::vector<double> refinement_residuals(const std::vector<GridOperator> &ops, const ComplexVector &lambda,
                                         const Grid &grid, int levels = 3);

/// Landscape as CSV: theta, phi, lambda components, residual, sigma_min.
std::string landscape_csv(const std::vector<LandscapePoint> &points);

struct SaturationReport {
    std::string scenario;
    double gain = 1;
    Grid grid;
    std::string derivative;
    std::vector<GridOperator> operators;
    AnnihilationSearch complex_scan;
    AnnihilationSearch real_slice;
    /// Evaluation at the lambda the model singles out: (G, -i/G) for the amplifier,
    /// (1, 0) for the transducer.
    ResidualEvaluation distinguished;
    std::vector<double> distinguished_refinement;
    /// |<vacuum|state>| for the amplifier's distinguished lambda; 0 otherwise.
    double distinguished_vacuum_overlap = 0;
    /// <x^2> of the complex-scan minimizer (amplifier only).
    double argmin_position_variance = 0;
    std::string expected_claim;
    std::string oracle_finding;
    bool claim_confirmed = false;
    bool is_finding = false;
};

/// K operators of the saturation search: the amplifier's on the probe coordinate, the
/// transducer's on (x_a + x_b) / sqrt 2. Throws ConfigError for other scenarios.
std::vector<GridOperator> saturation_operators(const std::string &scenario, double gain = 1);

/// Runs the saturation search for "bae" (probe coordinate, meter X_b / G) or
/// "transducer" (the symmetric coordinate (x_a + x_b) / sqrt 2, the only one the
/// disturbance acts on). Throws ConfigError for other scenarios.
SaturationReport saturation_report(const std::string &scenario, double gain = 1, const SearchOptions &options = {});

nlohmann::json to_json(const SaturationReport &report, bool include_landscape = false);

}  // namespace ndup
