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

#include <string>
#include <vector>

#include "ndup/config.h"
#include "ndup/report.h"

namespace ndup {

/// Backaction-evading amplifier with meter X_b / G: K, Gamma and the commutator form,
/// every verdict, closed-form checks for the configured probe, and (with the grid) the
/// moment oracle and the saturation search.
RunReport run_bae(const ScenarioConfig &config);

/// Noiseless quadrature transducer with meter X_b.
RunReport run_transducer(const ScenarioConfig &config);

/// Amplifier assessment conjugated by a phase-space rotation: scalar quantities change,
/// the matrix verdict does not.
RunReport run_rotated_bae(const ScenarioConfig &config);

/// Randomized property suites: implication, symplectic invariance, RSUP and oracle
/// equivalence.
RunReport run_random_suite(const ScenarioConfig &config);

/// Dispatches on config.scenario.
RunReport run_scenario(const ScenarioConfig &config);

struct SweepRow {
    double gain = 0;
    double eps = 0;
    double eta = 0;
    double min_eigenvalue = 0;
    double det = 0;
};

/// Parses "a:b:steps" into `steps` evenly spaced gains from a to b inclusive.
std::vector<double> parse_gain_range(const std::string &text);

/// Amplifier assessments at each gain, evaluated in parallel and returned in input order.
std::vector<SweepRow> sweep_bae(const ScenarioConfig &config, const std::vector<double> &gains);

/// Columns gain, eps, eta, min_eigenvalue, det.
std::string sweep_csv(const std::vector<SweepRow> &rows);

}  // namespace ndup
