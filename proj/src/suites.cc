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

#include <chrono>
#include <cmath>
#include <random>

#include "ndup/grid.h"
#include "ndup/measurement.h"
#include "ndup/models.h"
#include "ndup/scenarios.h"

namespace ndup {

namespace {

// Counterexamples kept in full per suite.
constexpr size_t kMaxCounterexamples = 10;

struct SuiteTally {
    std::string name;
    size_t trials = 0;
    size_t passed = 0;
    nlohmann::json counterexamples = nlohmann::json::array();
    nlohmann::json extra = nlohmann::json::object();

    void record(bool pass, const std::function<nlohmann::json()> &describe) {
        trials++;
        passed += pass;
        if (!pass && counterexamples.size() < kMaxCounterexamples) {
            counterexamples.push_back(describe());
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json doc{{"trials", trials},
                           {"passed", passed},
                           {"pass_rate", trials ? static_cast<double>(passed) / static_cast<double>(trials) : 1.0},
                           {"counterexamples", counterexamples}};
        doc.update(extra);
        return doc;
    }
};

// Independent, reproducible stream per suite.
std::mt19937_64 suite_rng(uint64_t seed, uint64_t suite) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(suite)};
    return std::mt19937_64(seq);
}

nlohmann::json model_json(const RandomModel &m) {
    return {{"transfer", to_json(m.interaction.transfer())},
            {"meter_selector", m.interaction.meter_selectors().at(0)},
            {"joint_state", to_json(m.joint_state)}};
}

SuiteTally implication_suite(const ScenarioConfig &config) {
    SuiteTally t{"implication"};
    auto rng = suite_rng(config.seed, 1);
    size_t matrix_holds = 0;
    for (size_t k = 0; k < config.trials.implication; k++) {
        auto model = random_linear_model(rng);
        auto a = assess(model.interaction, model.joint_state, config.tolerances.psd);
        bool scalar = std::all_of(a.verdicts.scalar_oup.begin(), a.verdicts.scalar_oup.end(),
                                  [](const ScalarOupVerdict &v) { return v.holds; });
        matrix_holds += a.verdicts.matrix_oup.holds;
        t.record(!a.verdicts.matrix_oup.holds || scalar, [&] {
            return nlohmann::json{{"trial", k}, {"model", model_json(model)}, {"assessment", to_json(a)}};
        });
    }
    t.extra["matrix_relation_held"] = matrix_holds;
    return t;
}

SuiteTally symplectic_suite(const ScenarioConfig &config) {
    SuiteTally t{"symplectic_invariance"};
    auto rng = suite_rng(config.seed, 2);
    std::uniform_real_distribution<double> gain(0.3, 4);
    std::uniform_real_distribution<double> variance(0.05, 0.6);
    std::uniform_real_distribution<double> corr(-0.6, 0.6);
    SymplecticForm probe_form = SymplecticForm::standard(1, kQuadratureGamma);
    size_t scalar_changed = 0;
    size_t violated = 0;
    for (size_t k = 0; k < config.trials.symplectic; k++) {
        double g = gain(rng);
        CovarianceState probe = random_valid_covariance(probe_form, rng);
        if (k % 2) {
            // Arbitrary symmetric covariances, often outside the physical set.
            double xy = corr(rng);
            probe = CovarianceState::centered(probe_form, RealMatrix{{variance(rng), xy}, {xy, variance(rng)}});
        }
        auto a = assess(bae_interaction(g), product_state(quadrature_vacuum(), probe), config.tolerances.psd);
        RealMatrix s = random_symplectic(1, rng);
        auto rot = rotate_nd(a, s);
        violated += !a.verdicts.matrix_oup.holds;
        double before = a.noise[0] * a.disturbance[0];
        double after = rot.noise[0] * rot.disturbance[0];
        scalar_changed += std::abs(before - after) > 1e-9;
        t.record(a.verdicts.matrix_oup.holds == rot.verdicts.matrix_oup.holds, [&] {
            return nlohmann::json{{"trial", k},
                                  {"gain", g},
                                  {"probe", to_json(probe)},
                                  {"symplectic", to_json(s)},
                                  {"before", to_json(a.verdicts.matrix_oup)},
                                  {"after", to_json(rot.verdicts.matrix_oup)}};
        });
    }
    t.extra["scalar_product_changed"] = scalar_changed;
    t.extra["matrix_relation_violated"] = violated;
    return t;
}

SuiteTally rsup_suite(const ScenarioConfig &config) {
    SuiteTally t{"rsup"};
    auto rng = suite_rng(config.seed, 3);
    for (size_t k = 0; k < config.trials.rsup; k++) {
        size_t modes = 1 + k % 2;
        double gamma = (k / 2) % 2 ? 1.0 : kQuadratureGamma;
        auto state = random_valid_covariance(SymplecticForm::standard(modes, gamma), rng);
        auto rsup = rsup_check(state, config.tolerances.psd);
        auto pairs = robertson_check(state);
        bool robertson = std::all_of(pairs.begin(), pairs.end(), [](const RobertsonPair &p) { return p.holds; });
        t.record(rsup.physical && robertson, [&] {
            return nlohmann::json{{"trial", k}, {"state", to_json(state)}, {"min_eigenvalue", rsup.min_eigenvalue}};
        });
    }
    return t;
}

SuiteTally oracle_suite(const ScenarioConfig &config) {
    SuiteTally t{"oracle_equivalence"};
    auto rng = suite_rng(config.seed, 4);
    std::uniform_real_distribution<double> gain(0.3, 3);
    std::uniform_real_distribution<double> variance(0.1, 1.0);
    std::uniform_real_distribution<double> corr(-0.4, 0.4);
    std::uniform_real_distribution<double> mean(-0.5, 0.5);
    Derivative mode = derivative_from_string(config.grid.derivative);
    double worst = 0;
    for (size_t k = 0; k < config.trials.oracle; k++) {
        double g = gain(rng);
        double xx = variance(rng);
        double xy = corr(rng);
        double mx = mean(rng);
        double my = mean(rng);
        double yy = (kQuadratureGamma * kQuadratureGamma / 4 + xy * xy) / xx;
        auto probe = CovarianceState::make(SymplecticForm::standard(1, kQuadratureGamma), {mx, my},
                                           RealMatrix{{xx, xy}, {xy, yy}});
        auto ix = bae_interaction(g);
        auto vectors = noise_disturbance_vectors(ix);
        RealMatrix analytic = assemble_noise_disturbance(vectors, product_state(quadrature_vacuum(), probe));
        double half = kDefaultHalfWidthSpreads * std::sqrt(xx);
        Grid grid = Grid::make({{mx - half, mx + half, config.grid.points}});
        auto state = gaussian_state(grid, xx, xy, kQuadratureGamma, mx, my);
        std::vector<GridOperator> ops;
        for (const auto &v : vectors) {
            ops.push_back(GridOperator::quadrature({v.coeffs[2]}, {v.coeffs[3]}, v.offset, kQuadratureGamma));
        }
        RealMatrix moments = moment_matrix(state, ops, mode);
        double rel = max_abs_diff(moments, analytic) / std::max(max_abs(analytic), 1e-300);
        worst = std::max(worst, rel);
        t.record(rel <= config.tolerances.oracle, [&] {
            return nlohmann::json{{"trial", k},
                                  {"gain", g},
                                  {"probe", to_json(probe)},
                                  {"analytic", to_json(analytic)},
                                  {"grid", to_json(moments)},
                                  {"relative_difference", rel}};
        });
    }
    t.extra["worst_relative_difference"] = worst;
    return t;
}

}  // namespace

RunReport run_random_suite(const ScenarioConfig &config) {
    config.validate();
    auto start = std::chrono::steady_clock::now();
    RunReport r;
    r.scenario = "random_suite";
    r.config = config.to_json();
    std::vector<SuiteTally> suites;
    for (auto *suite : {implication_suite, symplectic_suite, rsup_suite, oracle_suite}) {
        auto suite_start = std::chrono::steady_clock::now();
        suites.push_back(suite(config));
        r.stage_seconds[suites.back().name] = seconds_since(suite_start);
    }
    const std::vector<std::string> relations{
        "matrix relation implies the scalar relation", "matrix verdict invariant under symplectic conjugation",
        "valid covariances satisfy RSUP and every Robertson pair", "grid moments equal the bilinear-form K"};
    nlohmann::json summary = nlohmann::json::object();
    for (size_t k = 0; k < suites.size(); k++) {
        const auto &s = suites[k];
        summary[s.name] = s.to_json();
        if (s.trials > 0) {
            r.checks.push_back(check_equal(s.name + "_all_pass", relations[k], static_cast<double>(s.trials),
                                           static_cast<double>(s.passed), 0));
        }
    }
    if (suites[1].trials > 0) {
        r.checks.push_back(check_at_least("symplectic_scalar_product_changes",
                                          "eps * eta is not invariant under symplectic conjugation", 1,
                                          suites[1].extra["scalar_product_changed"].get<double>()));
    }
    r.details["suites"] = std::move(summary);
    r.elapsed_seconds = seconds_since(start);
    return r;
}

}  // namespace ndup
