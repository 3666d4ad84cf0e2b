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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ndup/gaussian.h"

namespace ndup {

/// Object modes followed by probe modes, each block ordered (x..., p...).
struct JointPhaseSpace {
    size_t object_modes = 0;
    size_t probe_modes = 0;
    SymplecticForm form = SymplecticForm::standard(1, 1);
    std::vector<std::string> labels;

    static JointPhaseSpace make(
        size_t object_modes, size_t probe_modes, double gamma, std::vector<std::string> labels = {});

    size_t dim() const {
        return form.dim();
    }
    /// Commutator matrix: [Z_a, Z_b] = i * omega(a, b).
    const RealMatrix &omega() const {
        return form.matrix();
    }
    bool is_probe_index(size_t index) const {
        return index >= 2 * object_modes;
    }
    std::string label(size_t index) const;
};

/// The operator coeffs · Z_in + offset.
struct CoefficientVector {
    RealVector coeffs;
    double offset = 0;
};

struct InteractionChecks {
    bool commutator_preservation = true;
    /// Disable only for deliberately degenerate reference models.
    bool output_commutativity = true;
    double tol = 1e-9;
};

/// Heisenberg-picture linear measuring interaction Z_out = T Z_in.
///
/// Meter observables are linear combinations of output coordinates (a selector
/// row per measured observable), which covers rescaled probe readouts such as
/// M = X_b / G.
class LinearInteraction {
   public:
    const JointPhaseSpace &space() const {
        return space_;
    }
    const RealMatrix &transfer() const {
        return transfer_;
    }
    const std::vector<RealVector> &meter_selectors() const {
        return meter_selectors_;
    }
    const std::vector<size_t> &measured() const {
        return measured_;
    }
    const std::vector<size_t> &disturbed() const {
        return disturbed_;
    }
    size_t pairs() const {
        return measured_.size();
    }
    bool outputs_validated() const {
        return outputs_validated_;
    }

    /// M_out,i as coefficients over the inputs.
    RealVector meter_output(size_t i) const;
    /// B_out,j as coefficients over the inputs.
    RealVector disturbed_output(size_t j) const;

   private:
    friend LinearInteraction build_interaction(
        RealMatrix, JointPhaseSpace, std::vector<RealVector>, std::vector<size_t>, std::vector<size_t>,
        InteractionChecks);

    JointPhaseSpace space_;
    RealMatrix transfer_;
    std::vector<RealVector> meter_selectors_;
    std::vector<size_t> measured_;
    std::vector<size_t> disturbed_;
    bool outputs_validated_ = false;
};

/// Throws CommutatorNotPreserved or OutputsDoNotCommute naming the offending pair.
LinearInteraction build_interaction(
    RealMatrix transfer,
    JointPhaseSpace space,
    std::vector<RealVector> meter_selectors,
    std::vector<size_t> measured,
    std::vector<size_t> disturbed,
    InteractionChecks checks = {});

/// Noise operators N_i = M_out,i - A_i followed by disturbances D_j = B_out,j - B_j.
std::vector<CoefficientVector> noise_disturbance_vectors(const LinearInteraction &ix);

/// K(a, b) = <{K_a, K_b}> over a joint state (raw second moments, means included).
RealMatrix assemble_noise_disturbance(std::span<const CoefficientVector> vectors, const CovarianceState &joint_state);

/// Gamma(a, b) = (1/i) <[Z_a, K_b] + [K_a, Z_b]> over the selected inputs (A's then B's).
RealMatrix assemble_correlation(const LinearInteraction &ix, std::span<const CoefficientVector> vectors);

/// Expected commutator form of the selected inputs: G(a, b) = e_aᵀ omega e_b.
RealMatrix assemble_commutator_form(
    const JointPhaseSpace &space, std::span<const size_t> measured, std::span<const size_t> disturbed);

struct MatrixVerdict {
    bool holds = false;
    double min_eigenvalue = 0;
    double threshold = 0;
    Complex determinant;
};

struct ScalarOupVerdict {
    size_t pair = 0;
    double noise = 0;
    double disturbance = 0;
    double sigma_measured = 0;
    double sigma_disturbed = 0;
    /// noise * disturbance + noise * sigma_disturbed + sigma_measured * disturbance.
    double lhs = 0;
    /// |<[A, B]>| / 2.
    double rhs = 0;
    bool holds = false;
    double heisenberg_product = 0;
    bool heisenberg_holds = false;
};

struct CorollaryLink {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

/// Chain of scalar consequences of a non-negative 2x2 determinant, strongest first.
struct DeterminantChain {
    std::vector<CorollaryLink> links;
    bool all_hold = false;
};

struct AssessmentVerdicts {
    MatrixVerdict matrix_oup;
    /// Present when the correlation matrix vanishes.
    std::optional<MatrixVerdict> matrix_heisenberg;
    std::vector<ScalarOupVerdict> scalar_oup;
    /// Present for a single measured/disturbed pair.
    std::optional<DeterminantChain> determinant_corollary;
};

struct NDAssessment {
    size_t pairs = 0;
    /// K, real symmetric.
    RealMatrix noise_disturbance;
    /// Gamma, real skew-symmetric.
    RealMatrix correlation;
    /// Expected commutator form, real skew-symmetric.
    RealMatrix commutator;
    RealVector noise;
    RealVector disturbance;
    RealVector sigma_measured;
    RealVector sigma_disturbed;
    double tol = kPsdTolerance;
    AssessmentVerdicts verdicts;

    /// K + (i/2)(Gamma + G).
    ComplexMatrix oup_matrix() const;
    /// K + (i/2) G.
    ComplexMatrix heisenberg_matrix() const;
    bool independent_intervention(double tol = 1e-12) const;
};

/// Builds K, Gamma and G from raw parts and evaluates every verdict.
NDAssessment make_assessment(
    RealMatrix noise_disturbance,
    RealMatrix correlation,
    RealMatrix commutator,
    RealVector sigma_measured,
    RealVector sigma_disturbed,
    double tol = kPsdTolerance);

/// Full pipeline: vectors, matrices, object spreads from the joint state, verdicts.
NDAssessment assess(const LinearInteraction &ix, const CovarianceState &joint_state, double tol = kPsdTolerance);

struct MatrixOupResult {
    MatrixVerdict oup;
    std::optional<MatrixVerdict> heisenberg;
};

MatrixOupResult matrix_oup_check(const NDAssessment &a, double tol = kPsdTolerance);
std::vector<ScalarOupVerdict> scalar_oup_check(const NDAssessment &a, double tol = 1e-12);
/// Requires a single pair; throws DimensionMismatch otherwise.
DeterminantChain determinant_corollary(const NDAssessment &a, double tol = 1e-12);

/// Congruence of K, Gamma and G by a symplectic S; scalar quantities and verdicts recomputed.
NDAssessment rotate_nd(const NDAssessment &a, const RealMatrix &s);

nlohmann::json to_json(const NDAssessment &a);
nlohmann::json to_json(const MatrixVerdict &v);

}  // namespace ndup
