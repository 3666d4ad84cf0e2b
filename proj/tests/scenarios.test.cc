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


#include <cstdio>
#include <fstream>
#include <map>

#include "gtest/gtest.h"
#include "ndup/errors.h"
#include "ndup/scenarios.h"

using namespace ndup;

namespace {

using Env = std::map<std::string, std::string>;

std::function<std::optional<std::string>(const std::string &)> lookup_in(const Env &env) {
    return [env](const std::string &key) -> std::optional<std::string> {
        auto it = env.find(key);
        if (it == env.end()) {
            return std::nullopt;
        }
        return it->second;
    };
}

std::string write_temp(const std::string &name, const std::string &text) {
    std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

const Check &check(const RunReport &r, const std::string &id) {
    const Check *c = r.find_check(id);
    EXPECT_NE(c, nullptr) << id;
    return *c;
}

}  // namespace

TEST(config, defaults_validate) {
    ScenarioConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.scenario, "bae");
    EXPECT_EQ(c.probe.kind, ProbeKind::vacuum);
    EXPECT_EQ(c.trials.implication, 1000u);
    EXPECT_EQ(c.trials.symplectic, 500u);
    EXPECT_EQ(c.trials.rsup, 1000u);
}

TEST(config, json_round_trip) {
    ScenarioConfig c;
    c.scenario = "rotated_bae";
    c.gain = 2.5;
    c.probe = ProbeSpec::parse("paper_eq47");
    c.seed = 99;
    c.rotation = 0.3;
    c.grid.enabled = true;
    c.grid.points = 256;
    c.grid.scan_resolution = 16;
    c.grid.derivative = "central4";
    c.trials.rsup = 7;
    auto back = ScenarioConfig::from_json(c.to_json());
    EXPECT_EQ(back.to_json(), c.to_json());
    EXPECT_EQ(back.probe, c.probe);
    EXPECT_DOUBLE_EQ(back.gain, 2.5);
    EXPECT_EQ(back.grid.derivative, "central4");
}

TEST(config, missing_keys_keep_defaults) {
    auto c = ScenarioConfig::from_json(nlohmann::json{{"gain", 3}});
    EXPECT_DOUBLE_EQ(c.gain, 3);
    EXPECT_EQ(c.scenario, "bae");
    EXPECT_EQ(c.grid.points, 512u);
}

TEST(config, rejects_malformed_input) {
    EXPECT_THROW(ScenarioConfig::from_json(nlohmann::json{{"scenario", "nonsense"}}), ConfigError);
    EXPECT_THROW(ScenarioConfig::from_json(nlohmann::json{{"gain", 0}}), ConfigError);
    EXPECT_THROW(ScenarioConfig::from_json(nlohmann::json{{"gain", "two"}}), ConfigError);
    EXPECT_THROW(ScenarioConfig::from_json(nlohmann::json{{"probe", "squeezed"}}), ConfigError);
    EXPECT_THROW(ScenarioConfig::from_json(nlohmann::json{{"grid", {{"points", 3}}}}), ConfigError);
    EXPECT_THROW(ScenarioConfig::from_json(nlohmann::json{{"grid", {{"derivative", "fft"}}}}), ConfigError);
    EXPECT_THROW(ScenarioConfig::load("/nonexistent/ndup.json"), ConfigError);
    EXPECT_THROW(ScenarioConfig::load(write_temp("ndup_bad.json", "{ not json")), ConfigError);
}

TEST(config, probe_spellings) {
    EXPECT_EQ(ProbeSpec::parse("vacuum").kind, ProbeKind::vacuum);
    EXPECT_EQ(ProbeSpec::parse("paper_eq47").kind, ProbeKind::correlated_reference);
    auto f = ProbeSpec::parse("file:/tmp/x.json");
    EXPECT_EQ(f.kind, ProbeKind::file);
    EXPECT_EQ(f.path, "/tmp/x.json");
    EXPECT_EQ(f.name(), "file:/tmp/x.json");
    EXPECT_THROW(ProbeSpec::parse("file:"), ConfigError);
}

TEST(config, probe_file_is_loaded) {
    std::string path = write_temp("ndup_probe.json",
                                  R"({"state": {"n": 1, "gamma": 0.5, "mean": [0, 0], "sigma": [[0.5, 0], [0, 0.125]]}})");
    ScenarioConfig c;
    c.probe = ProbeSpec::parse("file:" + path);
    auto s = c.probe_covariance();
    EXPECT_DOUBLE_EQ(s.sigma(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(s.sigma(1, 1), 0.125);
}

TEST(config, environment_overrides) {
    Env env{{"NDUP_SCENARIO", "transducer"}, {"NDUP_GAIN", "4"},         {"NDUP_PROBE", "paper_eq47"},
            {"NDUP_SEED", "17"},             {"NDUP_GRID", "1"},         {"NDUP_GRID_POINTS", "256"},
            {"NDUP_SCAN_RESOLUTION", "12"},  {"NDUP_TRIALS", "3"}};
    auto c = apply_environment(ScenarioConfig{}, lookup_in(env));
    EXPECT_EQ(c.scenario, "transducer");
    EXPECT_DOUBLE_EQ(c.gain, 4);
    EXPECT_EQ(c.probe.kind, ProbeKind::correlated_reference);
    EXPECT_EQ(c.seed, 17u);
    EXPECT_TRUE(c.grid.enabled);
    EXPECT_EQ(c.grid.points, 256u);
    EXPECT_EQ(c.grid.scan_resolution, 12u);
    EXPECT_EQ(c.trials.implication, 3u);
    EXPECT_EQ(c.trials.symplectic, 3u);
    EXPECT_EQ(c.trials.rsup, 3u);
}

TEST(config, environment_errors) {
    EXPECT_THROW(apply_environment(ScenarioConfig{}, lookup_in({{"NDUP_GAIN", "abc"}})), ConfigError);
    EXPECT_THROW(apply_environment(ScenarioConfig{}, lookup_in({{"NDUP_SEED", "-1x"}})), ConfigError);
    EXPECT_THROW(apply_environment(ScenarioConfig{}, lookup_in({{"NDUP_GRID", "maybe"}})), ConfigError);
}

TEST(config, precedence_file_then_environment) {
    std::string path = write_temp("ndup_precedence.json", R"({"gain": 2, "seed": 5, "scenario": "transducer"})");
    auto c = apply_environment(ScenarioConfig::load(path), lookup_in({{"NDUP_GAIN", "3"}}));
    EXPECT_DOUBLE_EQ(c.gain, 3);
    EXPECT_EQ(c.seed, 5u);
    EXPECT_EQ(c.scenario, "transducer");
    // Flags are applied by the command line on top of this result.
    c.gain = 7;
    EXPECT_NO_THROW(c.validate());
}

TEST(scenarios, bae_vacuum_passes_without_findings) {
    ScenarioConfig c;
    c.gain = 2;
    auto r = run_scenario(c);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.findings.empty());
    EXPECT_NEAR(check(r, "vacuum_min_eigenvalue").measured, 0, 1e-12);
}

TEST(scenarios, reference_probe_is_a_finding_not_a_failure) {
    ScenarioConfig c;
    c.gain = 2;
    c.probe = ProbeSpec::parse("paper_eq47");
    auto r = run_scenario(c);
    EXPECT_TRUE(r.passed());
    ASSERT_NE(r.find_finding("unphysical_probe"), nullptr);
    EXPECT_NEAR(check(r, "reference_probe_determinant").measured, -0.1875, 1e-12);
    EXPECT_NEAR(check(r, "reference_oup_matrix_determinant").measured, -0.25, 1e-12);
    EXPECT_NEAR(check(r, "reference_heisenberg_product").measured, 0.25, 1e-12);
    EXPECT_NEAR(check(r, "oup_matrix_min_eigenvalue").measured, (17 - std::sqrt(545.0)) / 32, 1e-12);
}

TEST(scenarios, transducer_closed_form) {
    ScenarioConfig c;
    c.scenario = "transducer";
    auto r = run_scenario(c);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(check(r, "oup_matrix_saturated").pass);
    EXPECT_TRUE(check(r, "correlation_cancels_commutator").pass);
}

TEST(scenarios, reports_are_deterministic_apart_from_timing) {
    ScenarioConfig c;
    c.scenario = "random_suite";
    c.trials = {50, 50, 50, 1};
    c.seed = 11;
    auto a = run_scenario(c).to_json(false);
    auto b = run_scenario(c).to_json(false);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.contains("timing"));
    c.seed = 12;
    EXPECT_NE(run_scenario(c).to_json(false)["details"], a["details"]);
}

TEST(scenarios, zero_rotation_matches_unrotated_assessment) {
    ScenarioConfig c;
    c.gain = 1.7;
    c.probe = ProbeSpec::parse("paper_eq47");
    auto plain = run_scenario(c);
    c.scenario = "rotated_bae";
    c.rotation = 0;
    auto rotated = run_scenario(c);
    EXPECT_EQ(rotated.assessment, plain.assessment);
}

TEST(scenarios, rotated_relation_normalization_is_reported) {
    ScenarioConfig c;
    c.scenario = "rotated_bae";
    c.gain = 2;
    auto r = run_scenario(c);
    EXPECT_TRUE(r.passed());
    ASSERT_NE(r.find_finding("rotated_relation_normalization"), nullptr);
    EXPECT_NEAR(r.details["relation"]["lhs"].get<double>(), 17.0 / 16, 1e-12);
    EXPECT_NEAR(r.details["relation"]["matrix_derived_bound"].get<double>(), 17.0 / 16, 1e-12);
}

TEST(scenarios, empty_suites_pass) {
    ScenarioConfig c;
    c.scenario = "random_suite";
    c.trials = {0, 0, 0, 0};
    auto r = run_scenario(c);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.checks.empty());
    EXPECT_EQ(r.details["suites"]["implication"]["trials"], 0);
}

TEST(scenarios, checks_csv_has_header_and_rows) {
    ScenarioConfig c;
    auto r = run_scenario(c);
    std::string csv = r.checks_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,relation,comparison,expected,measured,delta,tolerance,pass");
    EXPECT_EQ(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')), r.checks.size() + 1);
}

TEST(sweep, gain_range_parsing) {
    auto g = parse_gain_range("0.5:2:4");
    ASSERT_EQ(g.size(), 4u);
    EXPECT_DOUBLE_EQ(g.front(), 0.5);
    EXPECT_DOUBLE_EQ(g[1], 1.0);
    EXPECT_DOUBLE_EQ(g.back(), 2);
    EXPECT_EQ(parse_gain_range("3:3:1"), std::vector<double>{3});
    EXPECT_THROW(parse_gain_range("1:2"), ConfigError);
    EXPECT_THROW(parse_gain_range("a:2:3"), ConfigError);
    EXPECT_THROW(parse_gain_range("1:2:0"), ConfigError);
    EXPECT_THROW(parse_gain_range("0:2:3"), ConfigError);
}

TEST(sweep, rows_follow_input_order) {
    std::vector<double> gains{5, 0.5, 2, 1};
    auto rows = sweep_bae(ScenarioConfig{}, gains);
    ASSERT_EQ(rows.size(), gains.size());
    for (size_t k = 0; k < gains.size(); k++) {
        EXPECT_DOUBLE_EQ(rows[k].gain, gains[k]);
        // Vacuum probe: eps = 1 / (2G), eta = G / 2.
        EXPECT_NEAR(rows[k].eps, 1 / (2 * gains[k]), 1e-12);
        EXPECT_NEAR(rows[k].eta, gains[k] / 2, 1e-12);
        EXPECT_NEAR(rows[k].min_eigenvalue, 0, 1e-12);
    }
    std::string csv = sweep_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "gain,eps,eta,min_eigenvalue,det");
}
