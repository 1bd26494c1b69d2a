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

#include <doctest.h>

#include "gpcp/scenarios.hpp"

using namespace gpcp;
using doctest::Approx;

namespace {

void check_common(const ScenarioSpec& s) {
    CHECK(s.t_a == 0.0);
    CHECK(s.t_b == 1.0);
    CHECK(s.t_intent == 3.0);
    CHECK(s.n_samples == 10);
    CHECK(s.kernel == KernelParams<double>{10, 30, 11});
    CHECK(s.band_multiplier == 2.0);
    CHECK(s.candidates.size() == 2);
    CHECK(s.truth.has_value());
    CHECK_NOTHROW(s.validate());
}

} // namespace

TEST_CASE("merging constants") {
    const ScenarioSpec s = build_scenario(ScenarioName::Merging, 7);
    check_common(s);
    CHECK(s.delta_safe == 2.0);
    CHECK(s.noise_x.pos == 0.25);
    CHECK(s.noise_x.vel == 0.25);
    CHECK(s.noise_y.pos == 0.01);
    CHECK(s.noise_y.vel == 0.01);
    CHECK(s.intent_x.var_pos == 1.0);
    CHECK(s.intent_x.var_vel == 1.0);
    CHECK(s.intent_y.var_pos == 0.0625);
    CHECK(s.intent_y.var_vel == 0.0625);
    // intention means sit on the truth at the intention time
    CHECK(s.intent_x.mean_pos == Approx(s.truth->x(3.0)));
    CHECK(s.intent_y.mean_pos == Approx(s.truth->y(3.0)));
    CHECK(s.intent_x.mean_vel == Approx(s.truth->x.derivative()(3.0)));
    // obstacle starts in the adjacent lane
    CHECK(s.truth->y(0.0) == Approx(-4.0));
}

TEST_CASE("crossing constants") {
    const ScenarioSpec s = build_scenario(ScenarioName::Crossing, 7);
    check_common(s);
    CHECK(s.kernel.tau == 11.0);
    CHECK(s.delta_safe == 5.0);
    for (const AxisNoise& n : {s.noise_x, s.noise_y}) {
        CHECK(n.pos == 1.0);
        CHECK(n.vel == 4.0);
    }
    for (const auto& i : {s.intent_x, s.intent_y}) {
        CHECK(i.var_pos == 4.0);
        CHECK(i.var_vel == 16.0);
    }
    // constant velocity, perpendicular to the agent's heading
    const auto vy = s.truth->y.derivative();
    CHECK(vy(0.2) == Approx(vy(2.7)));
    CHECK(s.truth->x.derivative()(1.5) == Approx(0.0));
}

TEST_CASE("scenario names") {
    CHECK(parse_scenario_name("merging") == ScenarioName::Merging);
    CHECK(to_string(ScenarioName::Crossing) == "crossing");
    CHECK_THROWS_AS(parse_scenario_name("roundabout"), InvalidInput);
    CHECK_THROWS_AS(build_scenario(ScenarioName::Custom, 1), InvalidInput);
}

TEST_CASE("measurements") {
    ScenarioSpec s = build_scenario(ScenarioName::Merging, 7);
    const auto [x1, y1] = simulate_observations(s);
    const auto [x2, y2] = simulate_observations(s);
    CHECK(x1.pos == x2.pos);
    CHECK(y1.vel == y2.vel);
    REQUIRE(x1.times.size() == 10);
    CHECK(x1.times(0) == 0.0);
    CHECK(x1.times(9) == 1.0);
    for (int i = 1; i < 10; ++i) {
        CHECK(x1.times(i) > x1.times(i - 1));
    }

    s.rng_seed = 8;
    const auto [x3, y3] = simulate_observations(s);
    CHECK(x3.times == x1.times);
    CHECK(x3.pos != x1.pos);

    s.noise_x = {0, 0};
    s.noise_y = {0, 0};
    const auto [xn, yn] = simulate_observations(s);
    for (int i = 0; i < 10; ++i) {
        CHECK(xn.pos(i) == s.truth->x(xn.times(i)));
        CHECK(yn.vel(i) == s.truth->y.derivative()(yn.times(i)));
    }
    CHECK(xn.noise_var_pos == kMinFitVariance);
    CHECK_NOTHROW(run_scenario(s));
}

TEST_CASE("runs are deterministic") {
    const auto a = run_scenario(build_scenario(ScenarioName::Crossing, 3));
    const auto b = run_scenario(build_scenario(ScenarioName::Crossing, 3));
    CHECK(a.boundary_x.mu.coeffs() == b.boundary_x.mu.coeffs());
    CHECK(a.boundary_y.var.coeffs() == b.boundary_y.var.coeffs());
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
        CHECK(a.reports[i].report.min_joint_distance == b.reports[i].report.min_joint_distance);
    }
}

TEST_CASE("merging outcome") {
    const auto run = run_scenario(build_scenario(ScenarioName::Merging, 7));
    CHECK(run.reports.size() == 2);
    CHECK(run.result("constant_velocity").report.verdict);
    CHECK_FALSE(run.result("evasive").report.verdict);
    CHECK(run.any_collision());
    CHECK_THROWS_AS(run.result("nobody"), InvalidInput);
}

TEST_CASE("crossing outcome") {
    const auto run = run_scenario(build_scenario(ScenarioName::Crossing, 7));
    const auto& cv = run.result("constant_velocity").report;
    CHECK(cv.verdict);
    REQUIRE(cv.intervals_x.size() == 1);
    CHECK(cv.intervals_x[0].start == Approx(1.0));
    CHECK(cv.intervals_x[0].end == Approx(3.0));
    CHECK_FALSE(run.result("evasive").report.verdict);
}

TEST_CASE("far-away candidate") {
    ScenarioSpec s = build_scenario(ScenarioName::Merging, 7);
    for (auto& c : s.candidates) {
        if (c.name == "evasive") {
            std::vector<Segment<double>> segs = c.path.y.segments();
            for (auto& seg : segs) {
                seg.poly = seg.poly + 1e3;
            }
            c.path.y = PiecewisePolynomial<double>(segs);
        }
    }
    const auto r = run_scenario(s).result("evasive").report;
    CHECK_FALSE(r.verdict);
    CHECK((r.intervals_x.empty() || r.intervals_y.empty()));
}

TEST_CASE("invalid specs are rejected") {
    ScenarioSpec s = build_scenario(ScenarioName::Merging, 1);
    SUBCASE("time ordering") {
        s.t_b = 0.0;
        CHECK_THROWS_AS(run_scenario(s), InvalidInput);
    }
    SUBCASE("too few samples") {
        s.n_samples = 1;
        CHECK_THROWS_AS(run_scenario(s), InvalidInput);
    }
    SUBCASE("candidate starts inside the safety distance") {
        s.candidates[0].path.y = PiecewisePolynomial<double>(TimeInterval<double>{0.0, 3.0}, Polynomial<double>({-4.0}));
        s.candidates[0].path.x = PiecewisePolynomial<double>(TimeInterval<double>{0.0, 3.0}, Polynomial<double>({6.0}));
        CHECK_THROWS_AS(run_scenario(s), InvalidInput);
    }
    SUBCASE("candidate does not cover the horizon") {
        s.candidates[0].path.x = PiecewisePolynomial<double>(TimeInterval<double>{0.0, 2.0}, Polynomial<double>({0.0}));
        CHECK_THROWS_AS(run_scenario(s), InvalidInput);
    }
    SUBCASE("missing truth") {
        s.truth.reset();
        CHECK_THROWS_AS(run_scenario(s), InvalidInput);
    }
}
