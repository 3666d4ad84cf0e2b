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

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "ndup/config.h"
#include "ndup/saturation.h"
#include "ndup/scenarios.h"

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitUsage = 2;

struct Overrides {
    std::string config_path;
    std::optional<double> gain;
    std::optional<std::string> probe;
    bool grid = false;
    std::optional<uint64_t> seed;
    std::optional<size_t> grid_points;
    std::optional<size_t> scan_resolution;
    std::optional<std::string> derivative;
    std::string out;
    std::string format = "json";
    bool no_timing = false;
};

void add_common(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config_path, "JSON configuration; environment and flags override it")
        ->check(CLI::ExistingFile);
    cmd->add_option("--probe", o.probe, "vacuum, paper_eq47 or file:PATH");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--out", o.out, "write the output here instead of stdout");
    cmd->add_flag("--no-timing", o.no_timing, "omit timing from JSON reports");
}

ndup::ScenarioConfig resolve(const Overrides &o, const std::string &scenario) {
    ndup::ScenarioConfig c;
    if (!o.config_path.empty()) {
        c = ndup::ScenarioConfig::load(o.config_path);
    }
    c = ndup::apply_environment(c);
    if (!scenario.empty()) {
        c.scenario = scenario;
    }
    if (o.gain) {
        c.gain = *o.gain;
    }
    if (o.probe) {
        c.probe = ndup::ProbeSpec::parse(*o.probe);
        c.probe_state.reset();
    }
    if (o.grid) {
        c.grid.enabled = true;
    }
    if (o.seed) {
        c.seed = *o.seed;
    }
    if (o.grid_points) {
        c.grid.points = *o.grid_points;
    }
    if (o.scan_resolution) {
        c.grid.scan_resolution = *o.scan_resolution;
    }
    if (o.derivative) {
        c.grid.derivative = *o.derivative;
    }
    c.validate();
    return c;
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw ndup::ConfigError("cannot write '" + path + "'");
    }
    out << text;
}

int emit_report(const ndup::RunReport &report, const Overrides &o) {
    if (o.format == "csv") {
        emit(report.checks_csv(), o.out);
    } else {
        emit(report.to_json(!o.no_timing).dump(2) + "\n", o.out);
    }
    for (const auto &f : report.findings) {
        std::cerr << "finding " << f.id << ": " << f.summary << "\n";
    }
    for (const auto &c : report.checks) {
        if (!c.pass) {
            std::cerr << "FAILED " << c.id << ": expected " << c.expected << ", measured " << c.measured
                      << " (tolerance " << c.tolerance << ")\n";
        }
    }
    return report.passed() ? 0 : kExitFailedChecks;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noise-disturbance uncertainty relations for linear quadrature measurements"};
    app.require_subcommand(1);
    app.set_version_flag("--version", NDUP_VERSION);

    Overrides run_opts;
    std::string scenario;
    auto *run = app.add_subcommand("run", "run one scenario and print its report");
    run->add_option("scenario", scenario, "bae, transducer, rotated_bae or random_suite")
        ->required()
        ->check(CLI::IsMember({"bae", "transducer", "rotated_bae", "random_suite"}));
    add_common(run, run_opts);
    run->add_option("--gain", run_opts.gain, "amplifier gain G");
    run->add_flag("--grid", run_opts.grid, "enable the grid oracle and the saturation search");
    run->add_option("--grid-points", run_opts.grid_points, "points on one-dimensional grids");
    run->add_option("--scan-resolution", run_opts.scan_resolution, "lambda samples per angle");
    run->add_option("--derivative", run_opts.derivative, "spectral or central4");
    run->add_option("--format", run_opts.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    Overrides sweep_opts;
    std::string sweep_scenario;
    std::string gain_range;
    auto *sweep = app.add_subcommand("sweep", "amplifier figures of merit over a gain range");
    sweep->add_option("scenario", sweep_scenario, "bae")->required()->check(CLI::IsMember({"bae"}));
    sweep->add_option("--gain-range", gain_range, "a:b:steps")->required();
    add_common(sweep, sweep_opts);
    sweep->add_option("--format", sweep_opts.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
    sweep_opts.format = "csv";

    Overrides suite_opts;
    std::optional<size_t> trials;
    auto *suite = app.add_subcommand("suite", "randomized property suites");
    add_common(suite, suite_opts);
    suite->add_option("--trials", trials, "trials per suite (the oracle suite is capped at its configured count)");
    suite->add_option("--format", suite_opts.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    Overrides land_opts;
    std::string land_scenario;
    std::string slice = "complex";
    auto *land = app.add_subcommand("landscape", "saturation residual landscape as CSV");
    land->add_option("scenario", land_scenario, "bae or transducer")
        ->required()
        ->check(CLI::IsMember({"bae", "transducer"}));
    land->add_option("--gain", land_opts.gain, "amplifier gain G");
    land->add_option("--scan-resolution", land_opts.scan_resolution, "lambda samples per angle");
    land->add_option("--slice", slice, "complex or real")->check(CLI::IsMember({"complex", "real"}));
    land->add_option("--out", land_opts.out, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        // Help and version requests exit 0; every other parse error is a usage error.
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*run) {
            return emit_report(ndup::run_scenario(resolve(run_opts, scenario)), run_opts);
        }
        if (*sweep) {
            auto config = resolve(sweep_opts, "bae");
            auto rows = ndup::sweep_bae(config, ndup::parse_gain_range(gain_range));
            if (sweep_opts.format == "json") {
                nlohmann::json doc{{"schema_version", ndup::kSchemaVersion}, {"config", config.to_json()},
                                   {"rows", nlohmann::json::array()}};
                for (const auto &r : rows) {
                    doc["rows"].push_back({{"gain", r.gain},
                                           {"eps", r.eps},
                                           {"eta", r.eta},
                                           {"min_eigenvalue", r.min_eigenvalue},
                                           {"det", r.det}});
                }
                emit(doc.dump(2) + "\n", sweep_opts.out);
            } else {
                emit(ndup::sweep_csv(rows), sweep_opts.out);
            }
            return 0;
        }
        if (*suite) {
            auto config = resolve(suite_opts, "random_suite");
            if (trials) {
                config.trials = {*trials, *trials, *trials, std::min(*trials, config.trials.oracle)};
            }
            return emit_report(ndup::run_random_suite(config), suite_opts);
        }
        if (*land) {
            ndup::SearchOptions opts;
            if (land_opts.scan_resolution) {
                opts.resolution = *land_opts.scan_resolution;
            }
            opts.real_only = slice == "real";
            auto ops = ndup::saturation_operators(land_scenario, land_opts.gain.value_or(1.0));
            auto search = ndup::min_annihilation_residual(ops, ndup::default_line(0.25), opts);
            emit(ndup::landscape_csv(search.landscape), land_opts.out);
            return 0;
        }
    } catch (const ndup::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
