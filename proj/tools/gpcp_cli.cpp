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

// gpcp: obstacle prediction and collision checking from the command line.
//
//   gpcp simulate --scenario merging --seed 7 --out run/
//   gpcp check --config observed.json
//   gpcp validate --seeds 50
//
// Exit status: 0 no collision, 2 collision predicted, 1 error.

#include <iostream>

#include <CLI11.hpp>

#include "gpcp/commands.hpp"

namespace {

void add_output_flags(CLI::App* cmd, gpcp::OutputFlags& flags) {
    cmd->add_option("--out", flags.out, "Output directory");
    cmd->add_option("--grid", flags.grid, "Curve table resolution")->check(CLI::Range(2, 1000000));
    cmd->add_option("--only-candidate", flags.only_candidate, "Check a single named candidate");
    cmd->add_option("--safety-multiplier", flags.safety_multiplier, "Band width in standard deviations (default 2)")
        ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GP obstacle prediction with intention and collision checking"};
    app.require_subcommand(1);

    gpcp::SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a scenario and check its candidates");
    simulate->add_option("--scenario", sim.scenario, "merging, crossing or custom");
    simulate->add_option("--seed", sim.seed, "Noise seed");
    simulate->add_option("--config", sim.config, "JSON run config");
    add_output_flags(simulate, sim.flags);

    gpcp::CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Check candidates against recorded observations");
    check_cmd->add_option("--config", check.config, "JSON check config")->required();
    add_output_flags(check_cmd, check.flags);

    gpcp::ValidationOptions val;
    auto* validate = app.add_subcommand("validate", "Run the scenario-level self checks");
    validate->add_option("--seeds", val.seed_count, "Seeds per scenario")->check(CLI::PositiveNumber);
    validate->add_option("--first-seed", val.first_seed, "First seed");
    validate->add_option("--mean-degree", val.mean_degree, "Test mode: mean polynomial degree")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : gpcp::kExitError;
    }

    if (simulate->parsed()) {
        return gpcp::cmd_simulate(sim, std::cout, std::cerr);
    }
    if (check_cmd->parsed()) {
        return gpcp::cmd_check(check, std::cout, std::cerr);
    }
    return gpcp::cmd_validate(val, std::cout, std::cerr);
}
