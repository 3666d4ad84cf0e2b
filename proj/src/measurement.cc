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

#include "ndup/measurement.h"

#include <sstream>

namespace ndup {

namespace {

RealVector unit_vector(size_t dim, size_t index) {
    RealVector e(dim, 0.0);
    e.at(index) = 1;
    return e;
}

std::string format_number(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

void antisymmetrize(RealMatrix &m) {
    for (size_t r = 0; r < m.rows(); r++) {
        m(r, r) = 0;
        for (size_t c = r + 1; c < m.cols(); c++) {
            double avg = (m(r, c) - m(c, r)) / 2;
            m(r, c) = avg;
            m(c, r) = -avg;
        }
    }
}

bool is_zero(const RealMatrix &m, double tol) {
    return max_abs(m) <= tol;
}

MatrixVerdict matrix_verdict(const ComplexMatrix &m, double tol) {
    PsdVerdict psd = is_positive_semidefinite(m, tol);
    return {psd.psd, psd.min_eigenvalue, psd.threshold, determinant(m)};
}

}  // namespace

JointPhaseSpace JointPhaseSpace::make(
    size_t object_modes, size_t probe_modes, double gamma, std::vector<std::string> labels) {
    JointPhaseSpace space;
    space.object_modes = object_modes;
    space.probe_modes = probe_modes;
    space.form = SymplecticForm::blocks({object_modes, probe_modes}, gamma);
    if (labels.empty()) {
        auto add_block = [&](size_t modes, const std::string &x, const std::string &p, const std::string &suffix) {
            for (size_t i = 0; i < modes; i++) {
                labels.push_back(x + (modes > 1 ? std::to_string(i + 1) : "") + suffix);
            }
            for (size_t i = 0; i < modes; i++) {
                labels.push_back(p + (modes > 1 ? std::to_string(i + 1) : "") + suffix);
            }
        };
        add_block(object_modes, "X", "Y", "_a");
        add_block(probe_modes, "X", "Y", "_b");
    }
    if (labels.size() != space.dim()) {
        throw DimensionMismatch("expected " + std::to_string(space.dim()) + " labels");
    }
    space.labels = std::move(labels);
    return space;
}

std::string JointPhaseSpace::label(size_t index) const {
    return index < labels.size() ? labels[index] : "Z" + std::to_string(index);
}

RealVector LinearInteraction::meter_output(size_t i) const {
    return left_multiply(meter_selectors_.at(i), transfer_);
}

RealVector LinearInteraction::disturbed_output(size_t j) const {
    auto row = transfer_.row(disturbed_.at(j));
    return RealVector(row.begin(), row.end());
}

LinearInteraction build_interaction(
    RealMatrix transfer,
    JointPhaseSpace space,
    std::vector<RealVector> meter_selectors,
    std::vector<size_t> measured,
    std::vector<size_t> disturbed,
    InteractionChecks checks) {
    size_t dim = space.dim();
    if (transfer.rows() != dim || transfer.cols() != dim) {
        throw DimensionMismatch("transfer matrix " + transfer.shape_str() + " on a " + std::to_string(dim) +
                                "-dimensional joint space");
    }
    if (!all_finite(transfer)) {
        throw NonFinite("transfer matrix has non-finite entries");
    }
    size_t n = measured.size();
    if (n == 0 || disturbed.size() != n || meter_selectors.size() != n) {
        throw DimensionMismatch("need equally many (>= 1) measured observables, disturbed observables and meters");
    }
    for (size_t k = 0; k < n; k++) {
        if (measured[k] >= dim || disturbed[k] >= dim) {
            throw DimensionMismatch("observable index out of range");
        }
        if (meter_selectors[k].size() != dim) {
            throw DimensionMismatch("meter selector " + std::to_string(k) + " has wrong length");
        }
    }

    LinearInteraction ix;
    ix.space_ = std::move(space);
    ix.transfer_ = std::move(transfer);
    ix.meter_selectors_ = std::move(meter_selectors);
    ix.measured_ = std::move(measured);
    ix.disturbed_ = std::move(disturbed);

    const RealMatrix &omega = ix.space_.omega();
    double scale = std::max(1.0, max_abs(ix.transfer_));
    if (checks.commutator_preservation) {
        RealMatrix evolved = ix.transfer_ * omega * ix.transfer_.transposed();
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = r + 1; c < dim; c++) {
                if (std::abs(evolved(r, c) - omega(r, c)) > checks.tol * scale * scale) {
                    throw CommutatorNotPreserved(
                        "[" + ix.space_.label(r) + "_out, " + ix.space_.label(c) + "_out] = i*" +
                        format_number(evolved(r, c)) + ", expected i*" + format_number(omega(r, c)));
                }
            }
        }
    }

    if (checks.output_commutativity) {
        std::vector<std::pair<std::string, RealVector>> outputs;
        for (size_t i = 0; i < n; i++) {
            outputs.emplace_back("meter " + std::to_string(i), ix.meter_output(i));
        }
        for (size_t j = 0; j < n; j++) {
            outputs.emplace_back(ix.space_.label(ix.disturbed_[j]) + "_out", ix.disturbed_output(j));
        }
        for (size_t u = 0; u < outputs.size(); u++) {
            for (size_t v = u + 1; v < outputs.size(); v++) {
                double comm = bilinear(outputs[u].second, omega, outputs[v].second);
                if (std::abs(comm) > checks.tol * scale * scale) {
                    throw OutputsDoNotCommute(
                        "[" + outputs[u].first + ", " + outputs[v].first + "] = i*" + format_number(comm));
                }
            }
        }
        ix.outputs_validated_ = true;
    }
    return ix;
}

std::vector<CoefficientVector> noise_disturbance_vectors(const LinearInteraction &ix) {
    size_t dim = ix.space().dim();
    std::vector<CoefficientVector> out;
    for (size_t i = 0; i < ix.pairs(); i++) {
        RealVector c = ix.meter_output(i);
        c[ix.measured()[i]] -= 1;
        out.push_back({std::move(c), 0});
    }
    for (size_t j = 0; j < ix.pairs(); j++) {
        RealVector c = ix.disturbed_output(j);
        c[ix.disturbed()[j]] -= 1;
        out.push_back({std::move(c), 0});
    }
    for (auto &v : out) {
        if (v.coeffs.size() != dim) {
            throw DimensionMismatch("coefficient vector length");
        }
    }
    return out;
}

RealMatrix assemble_noise_disturbance(std::span<const CoefficientVector> vectors, const CovarianceState &joint_state) {
    size_t m = vectors.size();
    RealVector means(m);
    for (size_t a = 0; a < m; a++) {
        if (vectors[a].coeffs.size() != joint_state.form.dim()) {
            throw DimensionMismatch("coefficient vector does not match the joint state dimension");
        }
        means[a] = dot(vectors[a].coeffs, joint_state.mean) + vectors[a].offset;
    }
    RealMatrix k(m, m);
    for (size_t a = 0; a < m; a++) {
        for (size_t b = a; b < m; b++) {
            double v = bilinear(vectors[a].coeffs, joint_state.sigma, vectors[b].coeffs) + means[a] * means[b];
            k(a, b) = v;
            k(b, a) = v;
        }
    }
    return k;
}

RealMatrix assemble_correlation(const LinearInteraction &ix, std::span<const CoefficientVector> vectors) {
    size_t dim = ix.space().dim();
    size_t m = 2 * ix.pairs();
    if (vectors.size() != m) {
        throw DimensionMismatch("expected " + std::to_string(m) + " noise/disturbance vectors");
    }
    std::vector<RealVector> inputs;
    for (size_t idx : ix.measured()) {
        inputs.push_back(unit_vector(dim, idx));
    }
    for (size_t idx : ix.disturbed()) {
        inputs.push_back(unit_vector(dim, idx));
    }
    const RealMatrix &omega = ix.space().omega();
    RealMatrix gamma(m, m);
    for (size_t a = 0; a < m; a++) {
        for (size_t b = 0; b < m; b++) {
            gamma(a, b) =
                bilinear(inputs[a], omega, vectors[b].coeffs) + bilinear(vectors[a].coeffs, omega, inputs[b]);
        }
    }
    if (max_abs(gamma + gamma.transposed()) > 1e-12 * std::max(1.0, max_abs(gamma))) {
        throw DimensionMismatch("correlation matrix lost skew symmetry");
    }
    antisymmetrize(gamma);
    return gamma;
}

RealMatrix assemble_commutator_form(
    const JointPhaseSpace &space, std::span<const size_t> measured, std::span<const size_t> disturbed) {
    std::vector<size_t> selected(measured.begin(), measured.end());
    selected.insert(selected.end(), disturbed.begin(), disturbed.end());
    const RealMatrix &omega = space.omega();
    RealMatrix g(selected.size(), selected.size());
    for (size_t a = 0; a < selected.size(); a++) {
        for (size_t b = 0; b < selected.size(); b++) {
            g(a, b) = omega(selected.at(a), selected.at(b));
        }
    }
    return g;
}

ComplexMatrix NDAssessment::oup_matrix() const {
    ComplexMatrix m = to_complex(noise_disturbance);
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            m(r, c) += Complex(0, 0.5 * (correlation(r, c) + commutator(r, c)));
        }
    }
    return m;
}

ComplexMatrix NDAssessment::heisenberg_matrix() const {
    ComplexMatrix m = to_complex(noise_disturbance);
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            m(r, c) += Complex(0, 0.5 * commutator(r, c));
        }
    }
    return m;
}

bool NDAssessment::independent_intervention(double tol) const {
    return is_zero(correlation, tol);
}

MatrixOupResult matrix_oup_check(const NDAssessment &a, double tol) {
    MatrixOupResult result;
    result.oup = matrix_verdict(a.oup_matrix(), tol);
    if (a.independent_intervention()) {
        result.heisenberg = matrix_verdict(a.heisenberg_matrix(), tol);
    }
    return result;
}

std::vector<ScalarOupVerdict> scalar_oup_check(const NDAssessment &a, double tol) {
    std::vector<ScalarOupVerdict> out;
    size_t n = a.pairs;
    for (size_t i = 0; i < n; i++) {
        ScalarOupVerdict v;
        v.pair = i;
        v.noise = a.noise[i];
        v.disturbance = a.disturbance[i];
        v.sigma_measured = a.sigma_measured[i];
        v.sigma_disturbed = a.sigma_disturbed[i];
        v.lhs = v.noise * v.disturbance + v.noise * v.sigma_disturbed + v.sigma_measured * v.disturbance;
        v.rhs = std::abs(a.commutator(i, n + i)) / 2;
        double slack = tol * std::max(1.0, v.rhs);
        v.holds = v.lhs >= v.rhs - slack;
        v.heisenberg_product = v.noise * v.disturbance;
        v.heisenberg_holds = v.heisenberg_product >= v.rhs - slack;
        out.push_back(v);
    }
    return out;
}

DeterminantChain determinant_corollary(const NDAssessment &a, double tol) {
    if (a.pairs != 1) {
        throw DimensionMismatch("determinant corollary is defined for a single measured/disturbed pair");
    }
    const RealMatrix &k = a.noise_disturbance;
    double g12 = a.correlation(0, 1);
    double c12 = a.commutator(0, 1);
    double product = k(0, 0) * k(1, 1);
    double eps_eta = std::sqrt(k(0, 0)) * std::sqrt(k(1, 1));
    double total = std::abs(g12 + c12);

    DeterminantChain chain;
    auto link = [&](std::string name, double lhs, double rhs) {
        bool holds = lhs >= rhs - tol * std::max(1.0, std::abs(rhs));
        chain.links.push_back({std::move(name), lhs, rhs, holds});
    };
    link("second_moments_with_correlation", product, k(0, 1) * k(0, 1) + total * total / 4);
    link("second_moments", product, total * total / 4);
    link("square_root", eps_eta, total / 2);
    link("reverse_triangle", eps_eta, std::abs(std::abs(g12) - std::abs(c12)) / 2);
    link("noise_disturbance_bound", eps_eta, std::abs(c12) / 2 - std::abs(g12) / 2);
    chain.all_hold = std::all_of(chain.links.begin(), chain.links.end(), [](const CorollaryLink &l) { return l.holds; });
    return chain;
}

NDAssessment make_assessment(
    RealMatrix noise_disturbance,
    RealMatrix correlation,
    RealMatrix commutator,
    RealVector sigma_measured,
    RealVector sigma_disturbed,
    double tol) {
    size_t m = noise_disturbance.rows();
    if (m == 0 || m % 2 != 0 || !noise_disturbance.is_square() || correlation.rows() != m ||
        correlation.cols() != m || commutator.rows() != m || commutator.cols() != m) {
        throw DimensionMismatch("assessment matrices must be 2n x 2n");
    }
    size_t n = m / 2;
    if (sigma_measured.size() != n || sigma_disturbed.size() != n) {
        throw DimensionMismatch("need one object spread per pair");
    }
    NDAssessment a;
    a.pairs = n;
    a.noise_disturbance = std::move(noise_disturbance);
    a.correlation = std::move(correlation);
    a.commutator = std::move(commutator);
    a.sigma_measured = std::move(sigma_measured);
    a.sigma_disturbed = std::move(sigma_disturbed);
    a.tol = tol;
    for (size_t i = 0; i < n; i++) {
        a.noise.push_back(std::sqrt(std::max(0.0, a.noise_disturbance(i, i))));
        a.disturbance.push_back(std::sqrt(std::max(0.0, a.noise_disturbance(n + i, n + i))));
    }
    MatrixOupResult matrix = matrix_oup_check(a, tol);
    a.verdicts.matrix_oup = matrix.oup;
    a.verdicts.matrix_heisenberg = matrix.heisenberg;
    a.verdicts.scalar_oup = scalar_oup_check(a);
    if (n == 1) {
        a.verdicts.determinant_corollary = determinant_corollary(a);
    }
    return a;
}

NDAssessment assess(const LinearInteraction &ix, const CovarianceState &joint_state, double tol) {
    if (!(joint_state.form == ix.space().form)) {
        throw DimensionMismatch("joint state and interaction use different phase spaces");
    }
    auto vectors = noise_disturbance_vectors(ix);
    RealVector sigma_measured;
    RealVector sigma_disturbed;
    for (size_t i = 0; i < ix.pairs(); i++) {
        sigma_measured.push_back(std::sqrt(joint_state.sigma(ix.measured()[i], ix.measured()[i])));
        sigma_disturbed.push_back(std::sqrt(joint_state.sigma(ix.disturbed()[i], ix.disturbed()[i])));
    }
    return make_assessment(
        assemble_noise_disturbance(vectors, joint_state), assemble_correlation(ix, vectors),
        assemble_commutator_form(ix.space(), ix.measured(), ix.disturbed()), std::move(sigma_measured),
        std::move(sigma_disturbed), tol);
}

NDAssessment rotate_nd(const NDAssessment &a, const RealMatrix &s) {
    SymplecticForm form = SymplecticForm::standard(a.pairs, 1);
    if (!is_symplectic(s, form)) {
        throw NotSymplectic("rotation is not symplectic (defect " + std::to_string(symplectic_defect(s, form)) + ")");
    }
    RealMatrix st = s.transposed();
    RealMatrix k = s * a.noise_disturbance * st;
    for (size_t r = 0; r < k.rows(); r++) {
        for (size_t c = r + 1; c < k.cols(); c++) {
            double avg = (k(r, c) + k(c, r)) / 2;
            k(r, c) = avg;
            k(c, r) = avg;
        }
    }
    RealMatrix gamma = s * a.correlation * st;
    RealMatrix g = s * a.commutator * st;
    antisymmetrize(gamma);
    antisymmetrize(g);
    return make_assessment(std::move(k), std::move(gamma), std::move(g), a.sigma_measured, a.sigma_disturbed, a.tol);
}

nlohmann::json to_json(const MatrixVerdict &v) {
    return {
        {"holds", v.holds},
        {"min_eigenvalue", v.min_eigenvalue},
        {"threshold", v.threshold},
        {"determinant", {{"re", v.determinant.real()}, {"im", v.determinant.imag()}}},
    };
}

nlohmann::json to_json(const NDAssessment &a) {
    nlohmann::json doc;
    doc["pairs"] = a.pairs;
    doc["noise_disturbance"] = to_json(a.noise_disturbance);
    doc["correlation"] = to_json(a.correlation);
    doc["commutator"] = to_json(a.commutator);
    doc["noise"] = a.noise;
    doc["disturbance"] = a.disturbance;
    doc["sigma_measured"] = a.sigma_measured;
    doc["sigma_disturbed"] = a.sigma_disturbed;
    doc["tolerance"] = a.tol;

    nlohmann::json verdicts;
    verdicts["matrix_oup"] = to_json(a.verdicts.matrix_oup);
    verdicts["matrix_heisenberg"] =
        a.verdicts.matrix_heisenberg ? to_json(*a.verdicts.matrix_heisenberg) : nlohmann::json(nullptr);
    nlohmann::json scalar = nlohmann::json::array();
    for (const auto &v : a.verdicts.scalar_oup) {
        scalar.push_back({
            {"pair", v.pair},
            {"lhs", v.lhs},
            {"rhs", v.rhs},
            {"holds", v.holds},
            {"heisenberg_product", v.heisenberg_product},
            {"heisenberg_holds", v.heisenberg_holds},
        });
    }
    verdicts["scalar_oup"] = scalar;
    if (a.verdicts.determinant_corollary) {
        nlohmann::json links = nlohmann::json::array();
        for (const auto &l : a.verdicts.determinant_corollary->links) {
            links.push_back({{"name", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"holds", l.holds}});
        }
        verdicts["determinant_corollary"] = {
            {"all_hold", a.verdicts.determinant_corollary->all_hold}, {"links", links}};
    } else {
        verdicts["determinant_corollary"] = nullptr;
    }
    doc["verdicts"] = verdicts;
    return doc;
}

}  // namespace ndup
