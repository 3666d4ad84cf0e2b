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

#include "ndup/report.h"

#include <cmath>
#include <sstream>

#include "ndup/config.h"

namespace ndup {

std::string to_string(Comparison c) {
    switch (c) {
        case Comparison::equal:
            return "equal";
        case Comparison::at_least:
            return "at_least";
        case Comparison::at_most:
            return "at_most";
    }
    return "equal";
}

Check check_equal(std::string id, std::string relation, double expected, double measured, double tolerance) {
    Check c{std::move(id), std::move(relation), Comparison::equal, expected, measured, tolerance, false};
    c.pass = std::abs(measured - expected) <= tolerance;
    return c;
}

Check check_at_least(std::string id, std::string relation, double bound, double measured, double tolerance) {
    Check c{std::move(id), std::move(relation), Comparison::at_least, bound, measured, tolerance, false};
    c.pass = measured >= bound - tolerance;
    return c;
}

Check check_at_most(std::string id, std::string relation, double bound, double measured, double tolerance) {
    Check c{std::move(id), std::move(relation), Comparison::at_most, bound, measured, tolerance, false};
    c.pass = measured <= bound + tolerance;
    return c;
}

Check check_flag(std::string id, std::string relation, bool expected, bool measured) {
    return check_equal(std::move(id), std::move(relation), expected ? 1.0 : 0.0, measured ? 1.0 : 0.0, 0.0);
}

bool RunReport::passed() const {
    return failed_checks() == 0;
}

size_t RunReport::failed_checks() const {
    size_t n = 0;
    for (const auto &c : checks) {
        n += !c.pass;
    }
    return n;
}

const Check *RunReport::find_check(const std::string &id) const {
    for (const auto &c : checks) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

const Finding *RunReport::find_finding(const std::string &id) const {
    for (const auto &f : findings) {
        if (f.id == id) {
            return &f;
        }
    }
    return nullptr;
}

nlohmann::json to_json(const Check &c) {
    return {{"id", c.id},
            {"relation", c.relation},
            {"comparison", to_string(c.comparison)},
            {"expected", c.expected},
            {"measured", c.measured},
            {"delta", c.delta()},
            {"tolerance", c.tolerance},
            {"pass", c.pass}};
}

nlohmann::json RunReport::to_json(bool include_timing) const {
    nlohmann::json checks_doc = nlohmann::json::array();
    for (const auto &c : checks) {
        checks_doc.push_back(ndup::to_json(c));
    }
    nlohmann::json findings_doc = nlohmann::json::array();
    for (const auto &f : findings) {
        findings_doc.push_back({{"id", f.id}, {"summary", f.summary}, {"details", f.details}});
    }
    nlohmann::json doc{
        {"schema_version", kSchemaVersion},
        {"tool", {{"name", "ndup"}, {"version", NDUP_VERSION}}},
        {"scenario", scenario},
        {"config", config},
        {"checks", std::move(checks_doc)},
        {"findings", std::move(findings_doc)},
        {"details", details},
        {"status", {{"passed", passed()}, {"failed_checks", failed_checks()}, {"findings", findings.size()}}},
    };
    if (config.contains("seed")) {
        doc["seed"] = config["seed"];
    }
    if (assessment) {
        doc["assessment"] = *assessment;
    }
    if (oracle) {
        doc["oracle"] = *oracle;
    }
    if (saturation) {
        doc["saturation"] = *saturation;
    }
    if (include_timing) {
        doc["timing"] = {{"elapsed_seconds", elapsed_seconds}, {"stages", stage_seconds}};
    }
    return doc;
}

std::string RunReport::checks_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "id,relation,comparison,expected,measured,delta,tolerance,pass\n";
    for (const auto &c : checks) {
        out << c.id << ',' << c.relation << ',' << to_string(c.comparison) << ',' << c.expected << ',' << c.measured
            << ',' << c.delta() << ',' << c.tolerance << ',' << (c.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace ndup
