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

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ndup {

/// Wall-clock seconds elapsed since start.
inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

enum class Comparison { equal, at_least, at_most };

std::string to_string(Comparison c);

/// One asserted value. `relation` names the identity or bound the expected value
/// comes from; `pass` is decided by `comparison` within `tolerance`.
struct Check {
    std::string id;
    std::string relation;
    Comparison comparison = Comparison::equal;
    double expected = 0;
    double measured = 0;
    double tolerance = 0;
    bool pass = false;

    double delta() const {
        return measured - expected;
    }
};

/// |measured - expected| <= tolerance.
Check check_equal(std::string id, std::string relation, double expected, double measured, double tolerance);
/// measured >= expected - tolerance.
Check check_at_least(std::string id, std::string relation, double bound, double measured, double tolerance = 0);
/// measured <= expected + tolerance.
Check check_at_most(std::string id, std::string relation, double bound, double measured, double tolerance = 0);
/// Boolean expectation stored as 1/0 with zero tolerance.
Check check_flag(std::string id, std::string relation, bool expected, bool measured);

/// A reported discrepancy that is not a failure, such as an unphysical input state.
struct Finding {
    std::string id;
    std::string summary;
    nlohmann::json details;
};

struct RunReport {
    std::string scenario;
    nlohmann::json config;
    std::optional<nlohmann::json> assessment;
    std::vector<Check> checks;
    std::vector<Finding> findings;
    std::optional<nlohmann::json> oracle;
    std::optional<nlohmann::json> saturation;
    /// Scenario-specific extras: contrast tables, suite summaries.
    nlohmann::json details = nlohmann::json::object();
    double elapsed_seconds = 0;
    /// Wall time of named stages (grid oracle, saturation search, each suite).
    std::map<std::string, double> stage_seconds;

    bool passed() const;
    size_t failed_checks() const;
    const Check *find_check(const std::string &id) const;
    const Finding *find_finding(const std::string &id) const;

    /// Full report; timing is the only field that varies between identical runs.
    nlohmann::json to_json(bool include_timing = true) const;
    /// Checks as CSV: id, relation, comparison, expected, measured, delta, tolerance, pass.
    std::string checks_csv() const;
};

nlohmann::json to_json(const Check &c);

}  // namespace ndup
