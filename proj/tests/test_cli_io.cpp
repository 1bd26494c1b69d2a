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

#include <fstream>
#include <random>
#include <sstream>

#include <doctest.h>

#include "gpcp/commands.hpp"
#include "gpcp/report_io.hpp"

using namespace gpcp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gpcp_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_text(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_text(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SimulateArgs simulate_args(const std::string& scenario, std::uint64_t seed, const fs::path& out) {
    SimulateArgs a;
    a.scenario = scenario;
    a.seed = seed;
    a.flags.out = out;
    return a;
}

} // namespace

TEST_CASE("simulate writes outputs and reports collisions through the exit code") {
    const fs::path dir = scratch("sim");
    std::ostringstream out, err;
    CHECK(cmd_simulate(simulate_args("merging", 7, dir), out, err) == kExitCollision);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "curves.csv"));

    const Json report = load_json(dir / "report.json");
    CHECK(report["scenario"] == "merging");
    CHECK(report["seed"] == 7);
    CHECK(report["axes"]["x"]["mean_coeffs"].size() == 4);
    CHECK(report["axes"]["y"]["var_coeffs"].size() == 7);
    CHECK(report["axes"]["x"]["transform"]["origin"] == 1.0);
    CHECK(report["candidates"]["constant_velocity"]["verdict"] == true);
    CHECK(report["candidates"]["evasive"]["verdict"] == false);

    const std::string csv = read_text(dir / "curves.csv");
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header ==
          "time,truth_x,truth_y,meas_x,meas_y,meas_vx,meas_vy,mu_x,upper_x,lower_x,mu_y,upper_y,lower_y,"
          "constant_velocity_x,constant_velocity_y,constant_velocity_distance,evasive_x,evasive_y,evasive_distance");
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 1 + 200 + 9); // grid plus the measurement times after t = 0
}

TEST_CASE("only-candidate and grid flags") {
    const fs::path dir = scratch("only");
    std::ostringstream out, err;
    auto args = simulate_args("crossing", 7, dir);
    args.flags.only_candidate = "evasive";
    args.flags.grid = 50;
    CHECK(cmd_simulate(args, out, err) == kExitSafe);
    const Json report = load_json(dir / "report.json");
    CHECK(report["candidates"].size() == 1);
    CHECK(report["candidates"].contains("evasive"));

    args.flags.only_candidate = "nobody";
    CHECK(cmd_simulate(args, out, err) == kExitError);
    CHECK(err.str().find("nobody") != std::string::npos);
}

TEST_CASE("safety multiplier widens the band") {
    const fs::path a = scratch("mult_a");
    const fs::path b = scratch("mult_b");
    std::ostringstream out, err;
    auto args = simulate_args("merging", 2, a);
    cmd_simulate(args, out, err);
    args.flags.out = b;
    args.flags.safety_multiplier = 3.0;
    cmd_simulate(args, out, err);
    const Json ja = load_json(a / "report.json");
    const Json jb = load_json(b / "report.json");
    CHECK(ja["params"]["band_multiplier"] == 2.0);
    CHECK(jb["params"]["band_multiplier"] == 3.0);
    CHECK(jb["candidates"]["evasive"]["min_joint_distance"].get<double>() <
          ja["candidates"]["evasive"]["min_joint_distance"].get<double>());
}

TEST_CASE("config errors exit with status 1 and a diagnostic") {
    const fs::path dir = scratch("errors");
    std::ostringstream out, err;

    SimulateArgs missing;
    missing.config = dir / "absent.json";
    CHECK(cmd_simulate(missing, out, err) == kExitError);
    CHECK(err.str().find("absent.json") != std::string::npos);

    err.str("");
    write_text(dir / "broken.json", "{\n  \"scenario\": \"merging\",\n  \"seed\": ,\n}");
    SimulateArgs broken;
    broken.config = dir / "broken.json";
    CHECK(cmd_simulate(broken, out, err) == kExitError);
    CHECK(err.str().find("line 3") != std::string::npos);

    err.str("");
    write_text(dir / "bad_field.json", R"({"scenario": "merging", "params": {"delta_safe": "wide"}})");
    SimulateArgs bad;
    bad.config = dir / "bad_field.json";
    CHECK(cmd_simulate(bad, out, err) == kExitError);
    CHECK(err.str().find("params.delta_safe") != std::string::npos);

    CHECK(cmd_simulate(SimulateArgs{}, out, err) == kExitError);
}

TEST_CASE("config overrides the built-in scenario") {
    const fs::path dir = scratch("override");
    write_text(dir / "run.json", R"({
        "scenario": "merging",
        "seed": 4,
        "params": {"delta_safe": 0.5, "noise": {"y": {"pos": 0.02}}},
        "trajectories": [{"name": "parked",
                          "x": [{"start": 0, "end": 3, "coeffs": [-40]}],
                          "y": [{"start": 0, "end": 3, "coeffs": [30]}]}],
        "output": {"dir": ")" + (dir / "out").string() + R"(", "grid": 10}
    })");
    const RunConfig cfg = parse_run_config(load_json(dir / "run.json"));
    CHECK(cfg.spec.delta_safe == 0.5);
    CHECK(cfg.spec.noise_y.pos == 0.02);
    CHECK(cfg.spec.noise_y.vel == 0.01);
    CHECK(cfg.spec.rng_seed == 4);
    CHECK(cfg.output.grid == 10);
    REQUIRE(cfg.spec.candidates.size() == 1);

    SimulateArgs args;
    args.config = dir / "run.json";
    std::ostringstream out, err;
    CHECK(cmd_simulate(args, out, err) == kExitSafe);
    CHECK(fs::exists(dir / "out" / "report.json"));
}

TEST_CASE("report round trip preserves every number") {
    const ScenarioRun run = run_scenario(build_scenario(ScenarioName::Crossing, 9));
    const Json parsed = Json::parse(report_to_json(run).dump());
    const auto coeffs = parsed["axes"]["y"]["mean_coeffs"].get<std::vector<double>>();
    for (int k = 0; k < 4; ++k) {
        CHECK(coeffs[k] == run.boundary_y.mu.coeffs()(k));
    }
    const auto var = parsed["axes"]["x"]["var_coeffs_monomial"].get<std::vector<double>>();
    const Vector<double> vm = run.boundary_x.var.monomial().coeffs();
    for (int k = 0; k < 7; ++k) {
        CHECK(var[k] == vm(k));
    }
    for (const auto& r : run.reports) {
        const auto back = collision_report_from_json(parsed["candidates"][r.name], r.name);
        CHECK(back.verdict == r.report.verdict);
        CHECK(back.min_joint_distance == r.report.min_joint_distance);
        REQUIRE(back.intervals_x.size() == r.report.intervals_x.size());
        for (std::size_t i = 0; i < back.intervals_x.size(); ++i) {
            CHECK(back.intervals_x[i] == r.report.intervals_x[i]);
        }
    }
    const auto obs = parsed["observations"]["x"]["pos"].get<std::vector<double>>();
    for (Eigen::Index i = 0; i < run.obs_x.pos.size(); ++i) {
        CHECK(obs[std::size_t(i)] == run.obs_x.pos(i));
    }
}

TEST_CASE("check reproduces a simulate run from its report") {
    const fs::path a = scratch("check_a");
    const fs::path b = scratch("check_b");
    std::ostringstream out, err;
    CHECK(cmd_simulate(simulate_args("merging", 11, a), out, err) == kExitCollision);
    CheckArgs args;
    args.config = a / "report.json";
    args.flags.out = b;
    CHECK(cmd_check(args, out, err) == kExitCollision);
    CHECK(read_text(a / "report.json") == read_text(b / "report.json"));
    CHECK(read_text(a / "curves.csv") == read_text(b / "curves.csv"));
}

namespace {

Json check_config(const std::vector<double>& times, bool with_vel) {
    Json axis = {{"pos", std::vector<double>(times.size(), 0.0)}, {"noise_var_pos", 0.1}, {"noise_var_vel", 0.1}};
    if (with_vel) {
        axis["vel"] = std::vector<double>(times.size(), 1.0);
    }
    Json intent = {{"mean_pos", 3.0}, {"var_pos", 1.0}, {"mean_vel", 1.0}, {"var_vel", 1.0}};
    return {{"params",
             {{"kernel", {{"theta_pos", 10}, {"theta_vel", 30}, {"tau", 11}}},
              {"delta_safe", 1.0},
              {"t_b", 1.0},
              {"t_intent", 3.0},
              {"intention", {{"x", intent}, {"y", intent}}}}},
            {"observations", {{"times", times}, {"x", axis}, {"y", axis}}},
            {"trajectories",
             Json::array({{{"name", "away"},
                           {"x", Json::array({{{"start", 0}, {"end", 3}, {"coeffs", {100.0}}}})},
                           {"y", Json::array({{{"start", 0}, {"end", 3}, {"coeffs", {100.0}}}})}}})}};
}

int run_check(const Json& cfg, const fs::path& dir, std::ostringstream& err) {
    write_text(dir / "check.json", cfg.dump());
    CheckArgs args;
    args.config = dir / "check.json";
    args.flags.out = dir / "out";
    std::ostringstream out;
    return cmd_check(args, out, err);
}

} // namespace

TEST_CASE("check with intention only") {
    const fs::path dir = scratch("check_prior");
    std::ostringstream err;
    REQUIRE(run_check(check_config({}, true), dir, err) == kExitSafe);
    const Json report = load_json(dir / "out" / "report.json");
    const auto var = report["axes"]["x"]["var_coeffs"].get<std::vector<double>>();
    CHECK(var[0] > 0.0);
    CHECK(report["observations"]["times"].empty());
}

TEST_CASE("check rejects incomplete or unordered observations") {
    const fs::path dir = scratch("check_bad");
    std::ostringstream err;
    CHECK(run_check(check_config({0.0, 0.5, 1.0}, false), dir, err) == kExitError);
    CHECK(err.str().find("observations.x.vel") != std::string::npos);

    err.str("");
    CHECK(run_check(check_config({0.0, 0.6, 0.5}, true), dir, err) == kExitError);
    CHECK(err.str().find("strictly increasing") != std::string::npos);

    err.str("");
    Json no_tb = check_config({}, true);
    no_tb["params"].erase("t_b");
    CHECK(run_check(no_tb, dir, err) == kExitError);
    CHECK(err.str().find("params.t_b") != std::string::npos);

    err.str("");
    CHECK(run_check(check_config({0.0, 0.5, 1.0}, true), dir, err) == kExitSafe);
}

TEST_CASE("validate command") {
    std::ostringstream out, err;
    ValidationOptions opt;
    opt.seed_count = 1;
    CHECK(cmd_validate(opt, out, err) == kExitSafe);
    CHECK(out.str().find("basis exactness") != std::string::npos);
    CHECK(out.str().find("FAIL") == std::string::npos);

    std::ostringstream broken;
    opt.mean_degree = 2;
    CHECK(cmd_validate(opt, broken, err) == kExitError);
    CHECK(broken.str().find("basis exactness            FAIL") != std::string::npos);

    opt.seed_count = 0;
    CHECK(cmd_validate(opt, broken, err) == kExitError);
}

TEST_CASE("shipped configs reproduce the built-in scenarios") {
    for (const std::string name : {"merging", "crossing"}) {
        const RunConfig cfg = parse_run_config(load_json(fs::path(GPCP_SOURCE_DIR) / "configs" / (name + ".json")));
        const ScenarioSpec built = build_scenario(parse_scenario_name(name), cfg.spec.rng_seed);
        const ScenarioRun a = run_scenario(cfg.spec);
        const ScenarioRun b = run_scenario(built);
        CHECK(report_to_json(a) == report_to_json(b));
    }
}
