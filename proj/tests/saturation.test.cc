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

#include "ndup/saturation.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "ndup/models.h"

using namespace ndup;

namespace {

constexpr double kGamma = 0.5;

// Amplifier noise X/G and disturbance -G Y on the probe coordinate.
std::vector<GridOperator> amplifier(double g) {
    return {GridOperator::quadrature({1 / g}, {0}, 0, kGamma), GridOperator::quadrature({0}, {-g}, 0, kGamma)};
}

ComplexVector annihilating_lambda(double g) {
    double n = std::hypot(g, 1 / g);
    return {Complex(g / n, 0), Complex(0, -1 / (g * n))};
}

Grid vacuum_line() {
    return default_line(0.25);
}

}  // namespace

TEST(sphere_point, is_unit) {
    for (double theta : {0.0, 0.3, std::numbers::pi / 2}) {
        for (double phi : {0.0, 1.0, 4.0}) {
            auto l = sphere_point(theta, phi);
            EXPECT_NEAR(std::norm(l[0]) + std::norm(l[1]), 1, 1e-15);
            EXPECT_EQ(l[0].imag(), 0);
        }
    }
}

TEST(annihilation_residual, amplifier_annihilates_the_vacuum) {
    for (double g : {0.5, 1.0, 2.0}) {
        auto r = annihilation_residual(amplifier(g), annihilating_lambda(g), vacuum_line());
        EXPECT_LT(r.residual, 1e-6);
        EXPECT_LT(r.central_residual, 1e-12);
        EXPECT_FALSE(r.zero_operator);
        GridState vac = gaussian_state(vacuum_line(), 0.25, 0, kGamma);
        EXPECT_NEAR(std::abs(inner(vacuum_line(), vac.amplitudes(), r.state)), 1, 1e-12);
    }
}

TEST(annihilation_residual, squeezed_kernels_for_other_complex_directions) {
    // cos(t) X / G + sin(t) G gamma d/dx annihilates exp(-cot(t) x^2 / (2 G^2 gamma)).
    for (double theta : {0.4, 0.7, 1.0}) {
        auto r = annihilation_residual(amplifier(1), sphere_point(theta, 1.5 * std::numbers::pi), vacuum_line());
        EXPECT_LT(r.residual, 1e-5) << theta;
    }
    // The opposite phase gives a creation-type operator with no normalizable kernel.
    auto r = annihilation_residual(amplifier(1), sphere_point(std::numbers::pi / 4, std::numbers::pi / 2), vacuum_line());
    EXPECT_GT(r.residual, 0.9);
}

TEST(annihilation_residual, real_lambda_gives_hermitian_combinations) {
    for (double theta : {0.0, 0.4, std::numbers::pi / 2, 2.5}) {
        ComplexVector lambda{std::cos(theta), std::sin(theta)};
        auto r = annihilation_residual(amplifier(1), lambda, vacuum_line());
        EXPECT_NEAR(r.residual, 1, 1e-9) << theta;
        // The unnormalized singular value is only bounded by the box size: the spectrum
        // is continuous.
        EXPECT_LT(r.sigma_min, 0.15) << theta;
    }
}

TEST(annihilation_residual, vanishing_combination_annihilates_everything) {
    std::vector<GridOperator> transducer{GridOperator::zero(1),
                                         GridOperator::quadrature({0}, {-std::sqrt(2.0)}, 0, kGamma)};
    auto r = annihilation_residual(transducer, {1, 0}, vacuum_line());
    EXPECT_TRUE(r.zero_operator);
    EXPECT_EQ(r.residual, 0);
    EXPECT_EQ(r.sigma_min, 0);
    auto other = annihilation_residual(transducer, {0, 1}, vacuum_line());
    EXPECT_FALSE(other.zero_operator);
    EXPECT_NEAR(other.residual, 1, 1e-9);
}

TEST(annihilation_residual, input_checks) {
    auto ops = amplifier(1);
    EXPECT_THROW(annihilation_residual(ops, {1}, vacuum_line()), DimensionMismatch);
    auto quad = GridOperator::zero(1);
    quad.quadratic(0, 0) = 1;
    EXPECT_THROW(annihilation_residual({quad}, {1}, vacuum_line()), ConfigError);
    Grid plane = Grid::make({Axis::centered(6, 64), Axis::centered(6, 64)});
    EXPECT_THROW(annihilation_residual(ops, {1, 0}, plane), DimensionMismatch);
}

TEST(refinement_residuals, decrease_at_fourth_order) {
    auto r = refinement_residuals(amplifier(2), annihilating_lambda(2), vacuum_line(), 3);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_LT(r[0], 1e-3);
    EXPECT_LT(r[1], r[0] / 8);
    EXPECT_LT(r[2], r[1] / 8);
}

TEST(min_annihilation_residual, complex_and_real_scans) {
    SearchOptions opts;
    opts.resolution = 16;
    auto complex_scan = min_annihilation_residual(amplifier(1), vacuum_line(), opts);
    EXPECT_LT(complex_scan.best.residual, 1e-3);
    EXPECT_EQ(complex_scan.landscape.size(), 256u);
    // Minimizers sit on the anti-Hermitian side: phi = 3 pi / 2.
    EXPECT_NEAR(complex_scan.best.phi, 1.5 * std::numbers::pi, 1e-3);

    opts.real_only = true;
    opts.real_slice_points = 32;
    auto real_scan = min_annihilation_residual(amplifier(1), vacuum_line(), opts);
    EXPECT_GT(real_scan.best.residual, 0.1);
    EXPECT_NEAR(real_scan.refined_residual, 1, 1e-9);
}

TEST(min_annihilation_residual, random_sampling_for_more_operators) {
    auto ops = amplifier(1);
    ops.push_back(GridOperator::quadrature({0.3}, {0.2}, 0, kGamma));
    SearchOptions opts;
    opts.resolution = 8;
    auto scan = min_annihilation_residual(ops, vacuum_line(), opts);
    EXPECT_EQ(scan.landscape.size(), 64u);
    EXPECT_LT(scan.best.residual, 1e-3);
}

TEST(min_annihilation_residual, grid_node_on_the_kernel_of_x_is_flagged) {
    // An odd line has a node at x = 0, where the delta state is annihilated by X alone.
    SearchOptions opts;
    opts.real_only = true;
    opts.real_slice_points = 8;
    opts.refine = false;
    EXPECT_THROW(min_annihilation_residual(amplifier(1), Grid::line(6, 511), opts), GridTooCoarse);
}

TEST(landscape_csv, header_and_rows) {
    std::vector<LandscapePoint> pts{{0.1, 0.2, {Complex(1, 0), Complex(0, -1)}, 0.5, 0.25}};
    auto csv = landscape_csv(pts);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta,phi,lambda1_re,lambda1_im,lambda2_re,lambda2_im,residual,sigma_min");
    EXPECT_NE(csv.find("0.10000000000000001,0.20000000000000001,1,0,0,-1,0.5,0.25"), std::string::npos) << csv;
}

TEST(saturation_report, amplifier_real_and_complex_findings) {
    SearchOptions opts;
    opts.resolution = 24;
    auto r = saturation_report("bae", 2, opts);
    EXPECT_TRUE(r.claim_confirmed);
    EXPECT_TRUE(r.is_finding);
    EXPECT_GT(r.real_slice.best.residual, 0.1);
    EXPECT_LT(r.complex_scan.best.residual, 1e-3);
    EXPECT_NEAR(r.distinguished_vacuum_overlap, 1, 1e-10);
    ASSERT_EQ(r.distinguished_refinement.size(), 3u);
    EXPECT_LT(r.distinguished_refinement[1], r.distinguished_refinement[0]);
    auto doc = to_json(r, true);
    EXPECT_EQ(doc["complex_scan"]["landscape"].size(), 24u * 24u);
    EXPECT_TRUE(doc["is_finding"].get<bool>());
}

TEST(saturation_report, transducer_any_state_at_zero_disturbance_weight) {
    SearchOptions opts;
    opts.resolution = 16;
    auto r = saturation_report("transducer", 1, opts);
    EXPECT_TRUE(r.claim_confirmed);
    EXPECT_FALSE(r.is_finding);
    EXPECT_TRUE(r.distinguished.zero_operator);
    EXPECT_EQ(r.distinguished.residual, 0);
    EXPECT_EQ(r.complex_scan.best.residual, 0);
    // The noise operator is zero and the disturbance acts on (x_a + x_b) / sqrt 2 only.
    EXPECT_TRUE(r.operators[0].is_zero());
    EXPECT_NEAR(r.operators[1].derivative[0].imag(), kGamma * std::sqrt(2.0), 1e-15);
}

TEST(saturation_report, unknown_scenario) {
    EXPECT_THROW(saturation_report("rotated_bae"), ConfigError);
    EXPECT_THROW(saturation_report("bae", 0), ConfigError);
}
