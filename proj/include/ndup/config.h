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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"
#include "ndup/gaussian.h"

namespace ndup {

/// Version of the configuration and report layout.
inline constexpr int kSchemaVersion = 1;

enum class ProbeKind { vacuum, correlated_reference, file };

/// Probe choice as spelled on the command line: "vacuum", "paper_eq47" (the
/// correlated reference covariance) or "file:PATH".
struct ProbeSpec {
    ProbeKind kind = ProbeKind::vacuum;
    std::string path;

    static ProbeSpec parse(const std::string &text);
    std::string name() const;
    bool operator==(const ProbeSpec &) const = default;
};

struct GridSettings {
    bool enabled = false;
    /// Points on one-dimensional grids.
    size_t points = 512;
    /// Points per axis on two-dimensional grids.
    size_t planar_points = 128;
    /// Coarse lambda samples per angle in the saturation scan.
    size_t scan_resolution = 64;
    std::string derivative = "spectral";
    bool saturation = true;
};

struct Tolerances {
    /// Closed-form values.
    double exact = 1e-12;
    /// Positive-semidefinite verdicts.
    double psd = 1e-9;
    /// Grid moments against the bilinear form, relative.
    double oracle = 1e-6;
    /// Grid commutator against i gamma.
    double commutator = 1e-6;
};

struct SuiteTrials {
    size_t implication = 1000;
    size_t symplectic = 500;
    size_t rsup = 1000;
    size_t oracle = 5;
};

struct ScenarioConfig {
    std::string scenario = "bae";
    double gain = 1;
    ProbeSpec probe;
    /// Inline probe covariance; takes precedence over the probe file when present.
    std::optional<CovarianceState> probe_state;
    /// Object covariance; defaults to the quadrature vacuum.
    std::optional<CovarianceState> object_state;
    /// Phase-space rotation angle for rotated_bae.
    double rotation = 0.7853981633974483;
    GridSettings grid;
    uint64_t seed = 1;
    Tolerances tolerances;
    SuiteTrials trials;

    /// Throws ConfigError for an unknown scenario, zero or non-finite gain, bad grid
    /// settings, or non-positive tolerances.
    void validate() const;

    /// Missing keys keep their defaults. Throws ConfigError on malformed input.
    static ScenarioConfig from_json(const nlohmann::json &doc);
    static ScenarioConfig from_json(const nlohmann::json &doc, const ScenarioConfig &base);
    static ScenarioConfig load(const std::string &path);
    static ScenarioConfig load(const std::string &path, const ScenarioConfig &base);
    nlohmann::json to_json() const;

    /// Probe covariance: inline state, vacuum, the correlated reference, or the file.
    CovarianceState probe_covariance() const;
    CovarianceState object_covariance() const;
};

/// Environment overrides, read through `lookup` (std::getenv by default):
/// NDUP_SCENARIO, NDUP_GAIN, NDUP_PROBE, NDUP_SEED, NDUP_GRID (0/1),
/// NDUP_GRID_POINTS, NDUP_SCAN_RESOLUTION, NDUP_TRIALS (every suite).
ScenarioConfig apply_environment(ScenarioConfig config,
                                 const std::function<std::optional<std::string>(const std::string &)> &lookup = {});

/// Reads a covariance document from a file; accepts a bare state or {"state": ...}.
CovarianceState load_covariance_file(const std::string &path);

}  // namespace ndup
