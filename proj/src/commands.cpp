/*
 * Copyright 2026 The gpcp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "gpcp/commands.hpp"

#include <algorithm>
#include <cstdio>

#include "gpcp/report_io.hpp"

namespace gpcp {

namespace {

void apply_flags(const OutputFlags& flags, ScenarioSpec& spec, OutputOptions& output) {
    if (flags.out) {
        output.dir = *flags.out;
    }
    if (flags.grid) {
        output.grid = *flags.grid;
    }
    output.validate();
    if (flags.safety_multiplier) {
        spec.band_multiplier = *flags.safety_multiplier;
    }
    if (flags.only_candidate) {
        auto& c = spec.candidates;
        const auto keep = std::find_if(c.begin(), c.end(), [&](const auto& n) { return n.name == *flags.only_candidate; });
        if (keep == c.end()) {
            throw InvalidInput("no candidate named '" + *flags.only_candidate + "'");
        }
        NamedTrajectory only = *keep;
        c.assign(1, std::move(only));
    }
}

int finish(const ScenarioRun& run, const OutputOptions& output, std::ostream& out) {
    write_outputs(run, output);
    for (const auto& r : run.reports) {
        char line[200];
        std::snprintf(line, sizeof(line), "%-20s %-9s  joint intervals: %zu  min distance: %.4g", r.name.c_str(),
                      r.report.verdict ? "COLLISION" : "safe", r.report.joint.size(), r.report.min_joint_distance);
        out << line << '\n';
    }
    out << "wrote " << (output.dir / "report.json").string() << " and " << (output.dir / "curves.csv").string()
        << '\n';
    return run.any_collision() ? kExitCollision : kExitSafe;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

} // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig cfg;
        if (args.config) {
            cfg = parse_run_config(load_json(*args.config));
        } else if (!args.scenario) {
            throw InvalidInput("simulate needs --scenario or --config");
        }
        if (args.scenario) {
            const ScenarioName name = parse_scenario_name(*args.scenario);
            if (!args.config) {
                cfg.spec = build_scenario(name, args.seed.value_or(0));
            } else if (name != cfg.spec.name) {
                throw InvalidInput("--scenario " + *args.scenario + " conflicts with the config's scenario '" +
                                   to_string(cfg.spec.name) + "'");
            }
        }
        if (args.seed) {
            cfg.spec.rng_seed = *args.seed;
        }
        apply_flags(args.flags, cfg.spec, cfg.output);
        return finish(run_scenario(cfg.spec), cfg.output, out);
    });
}

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        CheckConfig cfg = parse_check_config(load_json(args.config));
        apply_flags(args.flags, cfg.spec, cfg.output);
        if (cfg.obs_x.size() > 0) {
            check_initial_separation(cfg.spec.candidates, cfg.obs_x.times(0), cfg.obs_x.pos(0), cfg.obs_y.pos(0),
                                     cfg.spec.delta_safe);
        }
        return finish(predict(cfg.spec, cfg.obs_x, cfg.obs_y), cfg.output, out);
    });
}

int cmd_validate(const ValidationOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ValidationSummary summary = run_validation(options);
        print_summary(summary, out);
        return summary.all_passed() ? kExitSafe : kExitError;
    });
}

} // namespace gpcp
