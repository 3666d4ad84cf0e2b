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

#include "ndup/gaussian.h"

namespace ndup {

CovarianceState CovarianceState::make(SymplecticForm form, RealVector mean, RealMatrix sigma) {
    size_t dim = form.dim();
    if (mean.size() != dim || sigma.rows() != dim || sigma.cols() != dim) {
        throw DimensionMismatch("covariance state needs a length-" + std::to_string(dim) + " mean and a " +
                                std::to_string(dim) + "x" + std::to_string(dim) + " covariance");
    }
    if (!all_finite(sigma) || !std::all_of(mean.begin(), mean.end(), [](double v) { return std::isfinite(v); })) {
        throw NonFinite("covariance state has non-finite entries");
    }
    double scale = std::max(1.0, max_abs(sigma));
    for (size_t r = 0; r < dim; r++) {
        if (sigma(r, r) < 0) {
            throw UnphysicalCovariance("negative variance at index " + std::to_string(r));
        }
        for (size_t c = r + 1; c < dim; c++) {
            if (std::abs(sigma(r, c) - sigma(c, r)) > kHermitianTolerance * scale) {
                throw DimensionMismatch("covariance is not symmetric at (" + std::to_string(r) + ", " +
                                        std::to_string(c) + ")");
            }
        }
    }
    return CovarianceState{std::move(form), std::move(mean), std::move(sigma)};
}

CovarianceState CovarianceState::centered(SymplecticForm form, RealMatrix sigma) {
    RealVector mean(form.dim(), 0.0);
    return make(std::move(form), std::move(mean), std::move(sigma));
}

CovarianceState CovarianceState::vacuum(SymplecticForm form) {
    RealMatrix sigma = (form.gamma() / 2) * RealMatrix::identity(form.dim());
    return centered(std::move(form), std::move(sigma));
}

ComplexMatrix CovarianceState::uncertainty_matrix() const {
    ComplexMatrix m = to_complex(sigma);
    const RealMatrix &omega = form.matrix();
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            m(r, c) += Complex(0, 0.5 * omega(r, c));
        }
    }
    return m;
}

RsupVerdict rsup_check(const CovarianceState &state, double tol) {
    PsdVerdict v = is_positive_semidefinite(state.uncertainty_matrix(), tol);
    return {v.psd, v.min_eigenvalue};
}

std::vector<RobertsonPair> robertson_check(const CovarianceState &state, double tol) {
    std::vector<RobertsonPair> out;
    for (auto [a, b] : state.form.conjugate_pairs()) {
        RobertsonPair pair;
        pair.position = a;
        pair.conjugate = b;
        pair.product = std::sqrt(state.sigma(a, a) * state.sigma(b, b));
        pair.bound = std::abs(state.form.matrix()(a, b)) / 2;
        pair.holds = pair.product >= pair.bound - tol;
        out.push_back(pair);
    }
    return out;
}

RealMatrix pure_covariance(const RealMatrix &s, double gamma) {
    return (gamma / 2) * (s * s.transposed());
}

CovarianceState random_valid_covariance(const SymplecticForm &form, std::mt19937_64 &rng) {
    size_t dim = form.dim();
    RealMatrix s = random_symplectic(form, rng);
    RealMatrix sigma = pure_covariance(s, form.gamma());

    std::uniform_int_distribution<int> kind(0, 3);
    std::normal_distribution<double> normal(0, 1);
    std::uniform_real_distribution<double> amount(0, 0.5);
    std::uniform_real_distribution<double> offset(-1, 1);

    // One draw in four stays pure so that saturated states are well represented.
    if (kind(rng) != 0) {
        RealMatrix b(dim, dim);
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                b(r, c) = normal(rng);
            }
        }
        double scale = amount(rng) * std::abs(form.gamma()) / static_cast<double>(dim);
        sigma += scale * (b * b.transposed());
    }
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = r + 1; c < dim; c++) {
            double avg = (sigma(r, c) + sigma(c, r)) / 2;
            sigma(r, c) = avg;
            sigma(c, r) = avg;
        }
    }
    RealVector mean(dim);
    for (double &m : mean) {
        m = offset(rng);
    }
    return CovarianceState::make(form, std::move(mean), std::move(sigma));
}

CovarianceState random_valid_covariance(size_t modes, double gamma, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_valid_covariance(SymplecticForm::standard(modes, gamma), rng);
}

CovarianceState transform_covariance(const CovarianceState &state, const RealMatrix &s) {
    if (!is_symplectic(s, state.form)) {
        throw NotSymplectic("transform is not symplectic (defect " + std::to_string(symplectic_defect(s, state.form)) +
                            ")");
    }
    RealMatrix sigma = s * state.sigma * s.transposed();
    for (size_t r = 0; r < sigma.rows(); r++) {
        for (size_t c = r + 1; c < sigma.cols(); c++) {
            double avg = (sigma(r, c) + sigma(c, r)) / 2;
            sigma(r, c) = avg;
            sigma(c, r) = avg;
        }
    }
    return CovarianceState::make(state.form, s * state.mean, std::move(sigma));
}

CovarianceState product_state(const CovarianceState &first, const CovarianceState &second) {
    if (first.form.gamma() != second.form.gamma()) {
        throw DimensionMismatch("product state needs a common commutation constant");
    }
    std::vector<size_t> blocks = first.form.block_modes();
    blocks.insert(blocks.end(), second.form.block_modes().begin(), second.form.block_modes().end());
    RealVector mean = first.mean;
    mean.insert(mean.end(), second.mean.begin(), second.mean.end());
    return CovarianceState::make(
        SymplecticForm::blocks(std::move(blocks), first.form.gamma()), std::move(mean),
        direct_sum(first.sigma, second.sigma));
}

nlohmann::json to_json(const RealMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t r = 0; r < m.rows(); r++) {
        rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
    }
    return rows;
}

RealMatrix real_matrix_from_json(const nlohmann::json &rows) {
    if (!rows.is_array()) {
        throw ConfigError("matrix must be a JSON array");
    }
    if (!rows.empty() && rows.front().is_number()) {
        // Flat row-major list of a square matrix.
        auto flat = rows.get<std::vector<double>>();
        auto n = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
        if (n * n != flat.size()) {
            throw ConfigError("flat matrix length " + std::to_string(flat.size()) + " is not a square");
        }
        RealMatrix m(n, n);
        std::copy(flat.begin(), flat.end(), m.row(0).begin());
        return m;
    }
    size_t cols = rows.empty() ? 0 : rows.front().size();
    RealMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        auto values = rows[r].get<std::vector<double>>();
        if (values.size() != cols) {
            throw ConfigError("ragged matrix rows");
        }
        std::copy(values.begin(), values.end(), m.row(r).begin());
    }
    return m;
}

nlohmann::json to_json(const CovarianceState &state) {
    nlohmann::json doc;
    doc["n"] = state.modes();
    doc["gamma"] = state.form.gamma();
    if (state.form.block_modes().size() > 1) {
        doc["blocks"] = state.form.block_modes();
    }
    doc["mean"] = state.mean;
    doc["sigma"] = to_json(state.sigma);
    return doc;
}

CovarianceState covariance_from_json(const nlohmann::json &doc) {
    try {
        auto n = doc.at("n").get<size_t>();
        double gamma = doc.at("gamma").get<double>();
        std::vector<size_t> blocks{n};
        if (doc.contains("blocks")) {
            blocks = doc["blocks"].get<std::vector<size_t>>();
        }
        SymplecticForm form = SymplecticForm::blocks(blocks, gamma);
        if (form.modes() != n) {
            throw ConfigError("blocks do not add up to n");
        }
        RealMatrix sigma = real_matrix_from_json(doc.at("sigma"));
        RealVector mean = doc.contains("mean") ? doc["mean"].get<RealVector>() : RealVector(form.dim(), 0.0);
        return CovarianceState::make(std::move(form), std::move(mean), std::move(sigma));
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad covariance document: ") + e.what());
    }
}

}  // namespace ndup
