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

#include "ndup/config.h"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "ndup/grid.h"
#include "ndup/models.h"

namespace ndup {

namespace {

const std::vector<std::string> kScenarios{"bae", "transducer", "rotated_bae", "random_suite"};

template <typename T>
void read(const nlohmann::json &doc, const char *key, T &out) {
    if (doc.contains(key)) {
        out = doc.at(key).get<T>();
    }
}

double parse_double(const std::string &name, const std::string &text) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(name + " is not a number: '" + text + "'");
    }
}

uint64_t parse_unsigned(const std::string &name, const std::string &text) {
    try {
        size_t used = 0;
        unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || text.starts_with('-')) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(name + " is not a non-negative integer: '" + text + "'");
    }
}

}  // namespace

ProbeSpec ProbeSpec::parse(const std::string &text) {
    if (text == "vacuum") {
        return {ProbeKind::vacuum, {}};
    }
    if (text == "paper_eq47") {
        return {ProbeKind::correlated_reference, {}};
    }
    if (text.starts_with("file:") && text.size() > 5) {
        return {ProbeKind::file, text.substr(5)};
    }
    throw ConfigError("unknown probe '" + text + "' (expected vacuum, paper_eq47 or file:PATH)");
}

std::string ProbeSpec::name() const {
    switch (kind) {
        case ProbeKind::vacuum:
            return "vacuum";
        case ProbeKind::correlated_reference:
            return "paper_eq47";
        case ProbeKind::file:
            return "file:" + path;
    }
    return "vacuum";
}

CovarianceState load_covariance_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open covariance file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("covariance file '" + path + "' is not valid JSON: " + e.what());
    }
    return covariance_from_json(doc.contains("state") ? doc["state"] : doc);
}

void ScenarioConfig::validate() const {
    if (std::find(kScenarios.begin(), kScenarios.end(), scenario) == kScenarios.end()) {
        throw ConfigError("unknown scenario '" + scenario + "' (expected bae, transducer, rotated_bae or random_suite)");
    }
    if (gain == 0 || !std::isfinite(gain)) {
        throw ConfigError("gain must be finite and non-zero");
    }
    if (!std::isfinite(rotation)) {
        throw ConfigError("rotation angle must be finite");
    }
    if (grid.points < kMinAxisPoints || grid.planar_points < kMinAxisPoints) {
        throw ConfigError("grids need at least " + std::to_string(kMinAxisPoints) + " points per axis");
    }
    if (2 * grid.planar_points - 1 > kMaxPlanarAxisPoints) {
        throw ConfigError("planar grids must stay within " + std::to_string(kMaxPlanarAxisPoints) +
                          " points per axis after one refinement");
    }
    if (grid.scan_resolution < 2) {
        throw ConfigError("scan resolution must be at least 2");
    }
    derivative_from_string(grid.derivative);
    for (double t : {tolerances.exact, tolerances.psd, tolerances.oracle, tolerances.commutator}) {
        if (!(t > 0) || !std::isfinite(t)) {
            throw ConfigError("tolerances must be positive and finite");
        }
    }
    for (const auto *state : {&probe_state, &object_state}) {
        if (*state && (state->value().modes() != 1 || state->value().form.gamma() != kQuadratureGamma)) {
            throw ConfigError("object and probe are single quadrature modes with gamma = 1/2");
        }
    }
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json &doc) {
    return from_json(doc, ScenarioConfig{});
}

ScenarioConfig ScenarioConfig::load(const std::string &path) {
    return load(path, ScenarioConfig{});
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json &doc, const ScenarioConfig &base) {
    ScenarioConfig c = base;
    try {
        if (!doc.is_object()) {
            throw ConfigError("configuration must be a JSON object");
        }
        if (doc.contains("schema_version") && doc["schema_version"].get<int>() != kSchemaVersion) {
            throw ConfigError("unsupported configuration schema version " + doc["schema_version"].dump());
        }
        read(doc, "scenario", c.scenario);
        read(doc, "gain", c.gain);
        read(doc, "rotation", c.rotation);
        read(doc, "seed", c.seed);
        if (doc.contains("probe")) {
            c.probe = ProbeSpec::parse(doc["probe"].get<std::string>());
            c.probe_state.reset();
        }
        if (doc.contains("probe_state")) {
            c.probe_state = covariance_from_json(doc["probe_state"]);
        }
        if (doc.contains("object_state")) {
            c.object_state = covariance_from_json(doc["object_state"]);
        }
        if (doc.contains("grid")) {
            const auto &g = doc["grid"];
            read(g, "enabled", c.grid.enabled);
            read(g, "points", c.grid.points);
            read(g, "planar_points", c.grid.planar_points);
            read(g, "scan_resolution", c.grid.scan_resolution);
            read(g, "derivative", c.grid.derivative);
            read(g, "saturation", c.grid.saturation);
        }
        if (doc.contains("tolerances")) {
            const auto &t = doc["tolerances"];
            read(t, "exact", c.tolerances.exact);
            read(t, "psd", c.tolerances.psd);
            read(t, "oracle", c.tolerances.oracle);
            read(t, "commutator", c.tolerances.commutator);
        }
        if (doc.contains("trials")) {
            const auto &t = doc["trials"];
            read(t, "implication", c.trials.implication);
            read(t, "symplectic", c.trials.symplectic);
            read(t, "rsup", c.trials.rsup);
            read(t, "oracle", c.trials.oracle);
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad configuration: ") + e.what());
    }
    c.validate();
    return c;
}

ScenarioConfig ScenarioConfig::load(const std::string &path, const ScenarioConfig &base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open configuration '" + path + "'");
    }
    try {
        return from_json(nlohmann::json::parse(in), base);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("configuration '" + path + "' is not valid JSON: " + e.what());
    }
}

nlohmann::json ScenarioConfig::to_json() const {
    nlohmann::json doc{
        {"schema_version", kSchemaVersion},
        {"scenario", scenario},
        {"gain", gain},
        {"probe", probe.name()},
        {"rotation", rotation},
        {"seed", seed},
        {"grid",
         {{"enabled", grid.enabled},
          {"points", grid.points},
          {"planar_points", grid.planar_points},
          {"scan_resolution", grid.scan_resolution},
          {"derivative", grid.derivative},
          {"saturation", grid.saturation}}},
        {"tolerances",
         {{"exact", tolerances.exact},
          {"psd", tolerances.psd},
          {"oracle", tolerances.oracle},
          {"commutator", tolerances.commutator}}},
        {"trials",
         {{"implication", trials.implication},
          {"symplectic", trials.symplectic},
          {"rsup", trials.rsup},
          {"oracle", trials.oracle}}},
    };
    // Echo the states themselves so the report re-runs without the original files.
    if (scenario != "random_suite") {
        doc["probe_state"] = ndup::to_json(probe_covariance());
        doc["object_state"] = ndup::to_json(object_covariance());
    }
    return doc;
}

CovarianceState ScenarioConfig::probe_covariance() const {
    if (probe_state) {
        return *probe_state;
    }
    switch (probe.kind) {
        case ProbeKind::vacuum:
            return quadrature_vacuum();
        case ProbeKind::correlated_reference:
            return correlated_reference_probe();
        case ProbeKind::file:
            return load_covariance_file(probe.path);
    }
    return quadrature_vacuum();
}

CovarianceState ScenarioConfig::object_covariance() const {
    return object_state ? *object_state : quadrature_vacuum();
}

ScenarioConfig apply_environment(ScenarioConfig c,
                                 const std::function<std::optional<std::string>(const std::string &)> &lookup) {
    auto get = [&](const std::string &name) -> std::optional<std::string> {
        if (lookup) {
            return lookup(name);
        }
        const char *v = std::getenv(name.c_str());
        return v ? std::optional<std::string>(v) : std::nullopt;
    };
    if (auto v = get("NDUP_SCENARIO")) {
        c.scenario = *v;
    }
    if (auto v = get("NDUP_GAIN")) {
        c.gain = parse_double("NDUP_GAIN", *v);
    }
    if (auto v = get("NDUP_PROBE")) {
        c.probe = ProbeSpec::parse(*v);
        c.probe_state.reset();
    }
    if (auto v = get("NDUP_SEED")) {
        c.seed = parse_unsigned("NDUP_SEED", *v);
    }
    if (auto v = get("NDUP_GRID")) {
        if (*v != "0" && *v != "1") {
            throw ConfigError("NDUP_GRID must be 0 or 1");
        }
        c.grid.enabled = *v == "1";
    }
    if (auto v = get("NDUP_GRID_POINTS")) {
        c.grid.points = parse_unsigned("NDUP_GRID_POINTS", *v);
    }
    if (auto v = get("NDUP_SCAN_RESOLUTION")) {
        c.grid.scan_resolution = parse_unsigned("NDUP_SCAN_RESOLUTION", *v);
    }
    if (auto v = get("NDUP_TRIALS")) {
        size_t n = parse_unsigned("NDUP_TRIALS", *v);
        c.trials = {n, n, n, std::min<size_t>(n, c.trials.oracle)};
    }
    c.validate();
    return c;
}

}  // namespace ndup
