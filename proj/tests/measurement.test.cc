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

#include <numbers>

#include "gtest/gtest.h"
#include "ndup/models.h"

using namespace ndup;

namespace {

CovarianceState joint(const CovarianceState &probe) {
    return product_state(quadrature_vacuum(), probe);
}

CovarianceState diag_probe(double xx, double yy) {
    return CovarianceState::centered(SymplecticForm::standard(1, kQuadratureGamma), RealMatrix{{xx, 0}, {0, yy}});
}

const RealMatrix kHalfJ{{0, 0.5}, {-0.5, 0}};

}  // namespace

TEST(build_interaction, amplifier_and_transducer_are_valid) {
    for (double g : {0.5, 1.0, 2.0, 5.0}) {
        auto ix = bae_interaction(g);
        EXPECT_TRUE(ix.outputs_validated());
    }
    EXPECT_TRUE(transducer_interaction().outputs_validated());
}

TEST(build_interaction, identity_with_probe_meter_passes_plumbing) {
    auto ix = identity_interaction({0, 0, 1, 0}, true);
    auto v = noise_disturbance_vectors(ix);
    EXPECT_EQ(v[0].coeffs, (RealVector{-1, 0, 1, 0}));
    EXPECT_EQ(v[1].coeffs, (RealVector{0, 0, 0, 0}));
}

TEST(build_interaction, names_offending_pairs) {
    try {
        identity_interaction({1, 0, 0, 0}, true);
        FAIL() << "expected OutputsDoNotCommute";
    } catch (const OutputsDoNotCommute &e) {
        EXPECT_NE(std::string(e.what()).find("Y_a_out"), std::string::npos) << e.what();
    }
    RealMatrix broken = bae_transfer(2);
    broken(1, 3) = 0;
    try {
        build_interaction(broken, quadrature_space(), {{0, 0, 0.5, 0}}, {0}, {1});
        FAIL() << "expected CommutatorNotPreserved";
    } catch (const CommutatorNotPreserved &e) {
        EXPECT_NE(std::string(e.what()).find("X_b_out"), std::string::npos) << e.what();
    }
    EXPECT_THROW(build_interaction(RealMatrix::identity(3), quadrature_space(), {{0, 0, 1}}, {0}, {1}),
                 DimensionMismatch);
}

TEST(noise_disturbance_vectors, amplifier) {
    for (double g : {0.5, 1.0, 2.0, 5.0}) {
        auto v = noise_disturbance_vectors(bae_interaction(g));
        ASSERT_EQ(v.size(), 2u);
        EXPECT_EQ(v[0].coeffs, (RealVector{0, 0, 1 / g, 0}));
        EXPECT_EQ(v[1].coeffs, (RealVector{0, 0, 0, -g}));
    }
}

TEST(noise_disturbance_vectors, transducer_and_trivial) {
    auto v = noise_disturbance_vectors(transducer_interaction());
    EXPECT_EQ(v[0].coeffs, (RealVector{0, 0, 0, 0}));
    EXPECT_EQ(v[1].coeffs, (RealVector{0, -1, 0, -1}));

    auto trivial = noise_disturbance_vectors(identity_interaction({1, 0, 0, 0}, false));
    EXPECT_EQ(trivial[0].coeffs, (RealVector{0, 0, 0, 0}));
    EXPECT_EQ(trivial[1].coeffs, (RealVector{0, 0, 0, 0}));
}

TEST(noise_disturbance_vectors, outputs_are_inputs_plus_vectors) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; trial++) {
        auto model = random_linear_model(rng);
        const auto &ix = model.interaction;
        auto v = noise_disturbance_vectors(ix);
        RealVector meter = left_multiply(ix.meter_selectors()[0], ix.transfer());
        RealVector b_out(ix.transfer().row(1).begin(), ix.transfer().row(1).end());
        for (size_t k = 0; k < 4; k++) {
            ASSERT_NEAR(meter[k], (k == 0 ? 1.0 : 0.0) + v[0].coeffs[k], 1e-14);
            ASSERT_NEAR(b_out[k], (k == 1 ? 1.0 : 0.0) + v[1].coeffs[k], 1e-14);
        }
    }
}

TEST(assemble_noise_disturbance, amplifier_with_correlated_reference_probe) {
    for (double g : {0.5, 1.0, 2.0, 5.0}) {
        auto v = noise_disturbance_vectors(bae_interaction(g));
        RealMatrix k = assemble_noise_disturbance(v, joint(correlated_reference_probe()));
        EXPECT_NEAR(k(0, 0), 1 / (4 * g * g), 1e-15);
        EXPECT_NEAR(k(0, 0), 0.25 / (g * g), 1e-15);
        EXPECT_NEAR(k(0, 1), -0.5, 1e-15);
        EXPECT_NEAR(k(1, 0), -0.5, 1e-15);
        EXPECT_NEAR(k(1, 1), g * g / 4, 1e-15);
    }
}

TEST(assemble_noise_disturbance, amplifier_with_vacuum_probe) {
    for (double g : {1.0, 2.0}) {
        RealMatrix k = assemble_noise_disturbance(noise_disturbance_vectors(bae_interaction(g)), joint(quadrature_vacuum()));
        EXPECT_LE(max_abs_diff(k, RealMatrix{{1 / (4 * g * g), 0}, {0, g * g / 4}}), 1e-15);
    }
}

TEST(assemble_noise_disturbance, includes_mean_products) {
    auto probe = CovarianceState::make(
        SymplecticForm::standard(1, kQuadratureGamma), {0.3, -0.2}, RealMatrix{{0.25, 0}, {0, 0.25}});
    RealMatrix k = assemble_noise_disturbance(noise_disturbance_vectors(bae_interaction(2)), joint(probe));
    // N = X_b / 2, D = -2 Y_b.
    EXPECT_NEAR(k(0, 0), 0.25 / 4 + 0.15 * 0.15, 1e-15);
    EXPECT_NEAR(k(1, 1), 4 * 0.25 + 0.4 * 0.4, 1e-15);
    EXPECT_NEAR(k(0, 1), 0.15 * 0.4, 1e-15);
}

TEST(assemble_correlation, examples) {
    for (double g : {0.5, 2.0}) {
        auto ix = bae_interaction(g);
        EXPECT_EQ(max_abs(assemble_correlation(ix, noise_disturbance_vectors(ix))), 0);
    }
    auto tr = transducer_interaction();
    EXPECT_EQ(assemble_correlation(tr, noise_disturbance_vectors(tr)), (RealMatrix{{0, -0.5}, {0.5, 0}}));
    auto trivial = identity_interaction({1, 0, 0, 0}, false);
    EXPECT_EQ(max_abs(assemble_correlation(trivial, noise_disturbance_vectors(trivial))), 0);
}

TEST(assemble_commutator_form, examples) {
    std::vector<size_t> a{0};
    std::vector<size_t> b{1};
    EXPECT_EQ(assemble_commutator_form(quadrature_space(), a, b), kHalfJ);
    auto canonical = JointPhaseSpace::make(1, 1, 1.0);
    EXPECT_EQ(assemble_commutator_form(canonical, a, b), standard_symplectic_unit(1));
    std::vector<size_t> commuting{2};
    EXPECT_EQ(max_abs(assemble_commutator_form(quadrature_space(), a, commuting)), 0);
}

TEST(matrix_oup_check, amplifier_with_correlated_reference_probe_is_violated) {
    for (double g : {0.5, 1.0, 2.0, 5.0}) {
        auto a = assess(bae_interaction(g), joint(correlated_reference_probe()));
        EXPECT_FALSE(a.verdicts.matrix_oup.holds);
        EXPECT_NEAR(a.verdicts.matrix_oup.determinant.real(), -0.25, 1e-12);
        ASSERT_TRUE(a.verdicts.matrix_heisenberg.has_value());
        EXPECT_FALSE(a.verdicts.matrix_heisenberg->holds);
    }
}

TEST(matrix_oup_check, amplifier_with_vacuum_probe_is_saturated) {
    for (double g : {1.0, 2.0}) {
        auto a = assess(bae_interaction(g), joint(quadrature_vacuum()));
        EXPECT_TRUE(a.verdicts.matrix_oup.holds);
        EXPECT_NEAR(a.verdicts.matrix_oup.min_eigenvalue, 0, 1e-15);
    }
}

TEST(matrix_oup_check, transducer_with_vacuum_is_saturated) {
    auto a = assess(transducer_interaction(), joint(quadrature_vacuum()));
    EXPECT_EQ(max_abs(a.correlation + a.commutator), 0);
    EXPECT_LE(max_abs_diff(a.noise_disturbance, RealMatrix{{0, 0}, {0, 0.5}}), 1e-15);
    EXPECT_TRUE(a.verdicts.matrix_oup.holds);
    EXPECT_EQ(a.verdicts.matrix_oup.min_eigenvalue, 0);
    EXPECT_FALSE(a.verdicts.matrix_heisenberg.has_value());
}

TEST(scalar_oup_check, amplifier_saturates_heisenberg_product) {
    for (double g : {0.5, 1.0, 2.0, 5.0}) {
        auto a = assess(bae_interaction(g), joint(correlated_reference_probe()));
        const auto &v = a.verdicts.scalar_oup.at(0);
        EXPECT_NEAR(v.noise, 1 / (2 * g), 1e-15);
        EXPECT_NEAR(v.disturbance, g / 2, 1e-15);
        EXPECT_NEAR(v.heisenberg_product, 0.25, 1e-12);
        EXPECT_DOUBLE_EQ(v.rhs, 0.25);
        EXPECT_TRUE(v.heisenberg_holds);
        // The three-term form exceeds the bound once the object spreads enter.
        EXPECT_GT(v.lhs, v.rhs);
    }
}

TEST(scalar_oup_check, transducer_and_trivial) {
    auto tr = assess(transducer_interaction(), joint(quadrature_vacuum()));
    const auto &v = tr.verdicts.scalar_oup.at(0);
    EXPECT_EQ(v.noise, 0);
    EXPECT_NEAR(v.disturbance, std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(v.sigma_measured, 0.5, 1e-15);
    EXPECT_NEAR(v.lhs, std::sqrt(2.0) / 4, 1e-15);
    EXPECT_TRUE(v.holds);

    auto trivial = assess(identity_interaction({1, 0, 0, 0}, false), joint(quadrature_vacuum()));
    EXPECT_EQ(trivial.verdicts.scalar_oup.at(0).lhs, 0);
    EXPECT_FALSE(trivial.verdicts.scalar_oup.at(0).holds);
}

TEST(determinant_corollary, examples) {
    auto bae = assess(bae_interaction(1), joint(quadrature_vacuum()));
    const auto &chain = *bae.verdicts.determinant_corollary;
    EXPECT_NEAR(chain.links[0].lhs, 1.0 / 16, 1e-15);
    EXPECT_NEAR(chain.links[0].rhs, 1.0 / 16, 1e-15);
    EXPECT_TRUE(chain.all_hold);
    // Independent intervention with the quadrature commutator: eps * eta >= 1/4.
    EXPECT_DOUBLE_EQ(chain.links.back().rhs, 0.25);

    auto tr = assess(transducer_interaction(), joint(quadrature_vacuum()));
    const auto &tchain = *tr.verdicts.determinant_corollary;
    EXPECT_EQ(tchain.links[0].lhs, 0);
    EXPECT_EQ(tchain.links[0].rhs, 0);
    EXPECT_TRUE(tchain.all_hold);

    auto bad = assess(bae_interaction(2), joint(correlated_reference_probe()));
    EXPECT_FALSE(bad.verdicts.determinant_corollary->links[0].holds);
}

TEST(rotate_nd, identity_is_noop) {
    auto a = assess(bae_interaction(2), joint(quadrature_vacuum()));
    auto r = rotate_nd(a, RealMatrix::identity(2));
    EXPECT_EQ(r.noise_disturbance, a.noise_disturbance);
    EXPECT_EQ(r.verdicts.matrix_oup.holds, a.verdicts.matrix_oup.holds);
    EXPECT_EQ(r.noise, a.noise);
}

TEST(rotate_nd, quarter_turn_of_amplifier) {
    for (double g : {1.0, 2.0}) {
        auto a = assess(bae_interaction(g), joint(quadrature_vacuum()));
        double e2 = a.noise_disturbance(0, 0);
        double h2 = a.noise_disturbance(1, 1);
        auto r = rotate_nd(a, phase_rotation(std::numbers::pi / 4));
        EXPECT_NEAR(r.noise_disturbance(0, 0), (e2 + h2) / 2, 1e-15);
        EXPECT_NEAR(r.noise_disturbance(1, 1), (e2 + h2) / 2, 1e-15);
        EXPECT_NEAR(r.noise_disturbance(0, 1), (h2 - e2) / 2, 1e-15);
        EXPECT_LE(max_abs_diff(r.commutator, kHalfJ), 1e-15);
        EXPECT_TRUE(r.verdicts.matrix_oup.holds);
        EXPECT_NEAR(r.verdicts.matrix_oup.min_eigenvalue, 0, 1e-14);
    }
    auto g2 = rotate_nd(assess(bae_interaction(2), joint(quadrature_vacuum())), phase_rotation(std::numbers::pi / 4));
    EXPECT_NEAR(g2.noise_disturbance(0, 0), 17.0 / 32, 1e-15);
    EXPECT_NEAR(g2.noise_disturbance(0, 1), 15.0 / 32, 1e-15);
    EXPECT_THROW(rotate_nd(g2, RealMatrix{{2, 0}, {0, 3}}), NotSymplectic);
}

TEST(assessment_properties, matrix_oup_implies_scalar_oup_on_random_models) {
    std::mt19937_64 rng(1234);
    int attempts = 0;
    for (int trial = 0; trial < 1000; trial++) {
        auto model = random_linear_model(rng);
        attempts += model.attempts;
        auto a = assess(model.interaction, model.joint_state);
        ASSERT_LE(max_abs(a.noise_disturbance - a.noise_disturbance.transposed()), 0);
        ASSERT_LE(max_abs(a.correlation + a.correlation.transposed()), 0);
        ASSERT_EQ(a.commutator, kHalfJ);
        ASSERT_TRUE(a.verdicts.matrix_oup.holds) << trial;
        ASSERT_TRUE(a.verdicts.scalar_oup[0].holds) << trial;
        ASSERT_TRUE(a.verdicts.determinant_corollary->all_hold) << trial;
    }
    // Some meters mixing in object outputs were rejected and redrawn.
    EXPECT_GT(attempts, 1000);
}

TEST(assessment_properties, probe_supported_vectors_give_independent_intervention) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> gain(0.2, 5);
    SymplecticForm probe_form = SymplecticForm::standard(1, kQuadratureGamma);
    for (int trial = 0; trial < 200; trial++) {
        double g = gain(rng);
        RealMatrix pre = direct_sum(RealMatrix::identity(2), random_symplectic(1, rng));
        auto ix = build_interaction(bae_transfer(g) * pre, quadrature_space(), {{0, 0, 1 / g, 0}}, {0}, {1});
        auto v = noise_disturbance_vectors(ix);
        for (const auto &k : v) {
            ASSERT_NEAR(k.coeffs[0], 0, 1e-14);
            ASSERT_NEAR(k.coeffs[1], 0, 1e-14);
        }
        auto a = assess(ix, product_state(quadrature_vacuum(), random_valid_covariance(probe_form, rng)));
        ASSERT_TRUE(a.independent_intervention());
        ASSERT_TRUE(a.verdicts.matrix_heisenberg.has_value());
        ASSERT_EQ(a.verdicts.matrix_heisenberg->holds, a.verdicts.matrix_oup.holds);
    }
}

TEST(assessment_properties, symplectic_conjugation_keeps_matrix_verdict) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> gain(0.3, 4);
    std::uniform_real_distribution<double> u(0.05, 0.6);
    SymplecticForm probe_form = SymplecticForm::standard(1, kQuadratureGamma);
    int violated = 0;
    int scalar_changed = 0;
    for (int trial = 0; trial < 500; trial++) {
        CovarianceState probe = random_valid_covariance(probe_form, rng);
        if (trial % 2) {
            double xy = u(rng);
            probe = CovarianceState::centered(probe_form, RealMatrix{{u(rng), xy}, {xy, u(rng)}});
        }
        auto a = assess(bae_interaction(gain(rng)), joint(probe));
        auto r = rotate_nd(a, random_symplectic(1, rng));
        violated += !a.verdicts.matrix_oup.holds;
        ASSERT_EQ(a.verdicts.matrix_oup.holds, r.verdicts.matrix_oup.holds) << trial;
        double before = a.noise[0] * a.disturbance[0];
        double after = r.noise[0] * r.disturbance[0];
        scalar_changed += std::abs(before - after) > 1e-9;
    }
    EXPECT_GT(violated, 0);
    EXPECT_GT(scalar_changed, 0);
}

TEST(assessment_json, carries_matrices_and_verdicts) {
    auto a = assess(bae_interaction(2), joint(correlated_reference_probe()));
    auto doc = to_json(a);
    EXPECT_EQ(doc["noise_disturbance"][0][1].get<double>(), -0.5);
    EXPECT_FALSE(doc["verdicts"]["matrix_oup"]["holds"].get<bool>());
    EXPECT_NEAR(doc["verdicts"]["matrix_oup"]["determinant"]["re"].get<double>(), -0.25, 1e-12);
    EXPECT_EQ(doc["verdicts"]["determinant_corollary"]["links"].size(), 5u);
}
