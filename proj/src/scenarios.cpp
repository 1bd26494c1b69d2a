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

#include "gpcp/scenarios.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace gpcp {

namespace {

using Poly = Polynomial<double>;
using Piecewise = PiecewisePolynomial<double>;

Piecewise single(double t0, double t1, Poly p) { return Piecewise({t0, t1}, std::move(p)); }

// Constant-velocity motion over [t0, t1].
Piecewise linear(double t0, double t1, double p0, double v) { return single(t0, t1, Poly({p0, v})); }

Poly coeffs(std::initializer_list<double> c, double origin, double scale) {
    return Poly(Vector<double>(Eigen::Map<const Vector<double>>(c.begin(), Eigen::Index(c.size()))), origin, scale);
}

// Cubic on [t0, t1] with the given endpoint positions and velocities.
Piecewise hermite(double t0, double t1, double p0, double v0, double p1, double v1) {
    const double h = t1 - t0;
    const double m0 = v0 * h;
    const double m1 = v1 * h;
    return single(t0, t1, coeffs({p0, m0, -3.0 * p0 - 2.0 * m0 + 3.0 * p1 - m1, 2.0 * p0 + m0 - 2.0 * p1 + m1}, t0, h));
}

// Constant velocity v up to t_split, then constant acceleration `accel`.
Piecewise replanned(double t0, double t_split, double t1, double p0, double v, double accel) {
    const double p_split = p0 + v * (t_split - t0);
    std::vector<Segment<double>> segs;
    segs.push_back({{t0, t_split}, Poly({p0 - v * t0, v})});
    segs.push_back({{t_split, t1}, coeffs({p_split, v, 0.5 * accel}, t_split, 1.0)});
    return Piecewise(std::move(segs));
}

// Constant velocity v up to t_split, then braking at `decel` until the
// speed reaches v_final, then constant speed.
Piecewise braking(double t0, double t_split, double t1, double p0, double v, double decel, double v_final) {
    const double p_split = p0 + v * (t_split - t0);
    const double t_slow = t_split + (v - v_final) / decel;
    std::vector<Segment<double>> segs;
    segs.push_back({{t0, t_split}, Poly({p0 - v * t0, v})});
    if (t_slow >= t1) {
        segs.push_back({{t_split, t1}, coeffs({p_split, v, -0.5 * decel}, t_split, 1.0)});
        return Piecewise(std::move(segs));
    }
    const double dt = t_slow - t_split;
    segs.push_back({{t_split, t_slow}, coeffs({p_split, v, -0.5 * decel}, t_split, 1.0)});
    segs.push_back({{t_slow, t1}, coeffs({p_split + v * dt - 0.5 * decel * dt * dt, v_final}, t_slow, 1.0)});
    return Piecewise(std::move(segs));
}

Intention<double> intention_from_truth(const Piecewise& truth, double t_intent, double var_pos, double var_vel) {
    Intention<double> in;
    in.t_intent = t_intent;
    in.mean_pos = truth(t_intent);
    in.mean_vel = truth.derivative()(t_intent);
    in.var_pos = var_pos;
    in.var_vel = var_vel;
    return in;
}

// Merging: the agent holds y = 0 at 10 m/s. The obstacle starts in the
// adjacent lane (y = -4) 6 m ahead at 18 m/s, pulls away, merges with a
// smooth cubic lateral profile and slows to 6 m/s, settling 4 m ahead of
// the constant-velocity agent at t_intent. The evasive plan brakes at
// 6 m/s^2 from t_b down to 5 m/s.
ScenarioSpec merging(std::uint64_t seed) {
    ScenarioSpec s;
    s.name = ScenarioName::Merging;
    s.rng_seed = seed;
    s.delta_safe = 2.0;
    s.noise_x = {0.25, 0.25};
    s.noise_y = {0.01, 0.01};

    const double t0 = s.t_a;
    const double t1 = s.t_intent;
    s.truth = ObstacleTruth{hermite(t0, t1, 6.0, 18.0, 34.0, 6.0), hermite(t0, t1, -4.0, 0.0, 0.0, 0.0)};
    s.intent_x = intention_from_truth(s.truth->x, s.t_intent, 1.0, 1.0);
    s.intent_y = intention_from_truth(s.truth->y, s.t_intent, 0.0625, 0.0625);

    const Piecewise lane = linear(t0, t1, 0.0, 0.0);
    s.candidates.push_back({"constant_velocity", {linear(t0, t1, 0.0, 10.0), lane}});
    s.candidates.push_back({"evasive", {braking(t0, s.t_b, t1, 0.0, 10.0, 6.0, 5.0), lane}});
    return s;
}

// Crossing: the obstacle drives along x = 0 in +y at 20 m/s and crosses
// the agent's lane at t = 2.8. The agent approaches from -x at 4 m/s. The
// evasive plan accelerates through at 8 m/s^2 and steers toward +y at
// 4 m/s^2 after t_b.
ScenarioSpec crossing(std::uint64_t seed) {
    ScenarioSpec s;
    s.name = ScenarioName::Crossing;
    s.rng_seed = seed;
    s.delta_safe = 5.0;
    s.noise_x = {1.0, 4.0};
    s.noise_y = {1.0, 4.0};

    const double t0 = s.t_a;
    const double t1 = s.t_intent;
    const double speed = 20.0;
    const double t_cross = 2.8;
    s.truth = ObstacleTruth{linear(t0, t1, 0.0, 0.0), linear(t0, t1, -speed * t_cross, speed)};
    s.intent_x = intention_from_truth(s.truth->x, s.t_intent, 4.0, 16.0);
    s.intent_y = intention_from_truth(s.truth->y, s.t_intent, 4.0, 16.0);

    s.candidates.push_back({"constant_velocity", {linear(t0, t1, -8.0, 4.0), linear(t0, t1, 0.0, 0.0)}});
    s.candidates.push_back({"evasive", {replanned(t0, s.t_b, t1, -8.0, 4.0, 8.0),
                                        replanned(t0, s.t_b, t1, 0.0, 0.0, 4.0)}});
    return s;
}

} // namespace

std::string to_string(ScenarioName name) {
    switch (name) {
    case ScenarioName::Merging:
        return "merging";
    case ScenarioName::Crossing:
        return "crossing";
    case ScenarioName::Custom:
        return "custom";
    }
    return "custom";
}

ScenarioName parse_scenario_name(const std::string& name) {
    if (name == "merging") {
        return ScenarioName::Merging;
    }
    if (name == "crossing") {
        return ScenarioName::Crossing;
    }
    if (name == "custom") {
        return ScenarioName::Custom;
    }
    throw InvalidInput("unknown scenario '" + name + "' (expected merging, crossing or custom)");
}

void ScenarioSpec::validate_prediction() const {
    if (!(t_b < t_intent)) {
        throw InvalidInput("scenario times must satisfy t_b < t_intent");
    }
    kernel.validate();
    intent_x.validate();
    intent_y.validate();
    if (intent_x.t_intent != t_intent || intent_y.t_intent != t_intent) {
        throw InvalidInput("intention time must equal the scenario t_intent");
    }
    SafetyConfig<double>{delta_safe}.validate();
    if (!(band_multiplier > 0)) {
        throw InvalidInput("band multiplier must be positive");
    }
    for (const auto& c : candidates) {
        if (!c.path.x.covers(horizon()) || !c.path.y.covers(horizon())) {
            throw InvalidInput("candidate '" + c.name + "' does not cover the prediction interval");
        }
    }
}

void ScenarioSpec::validate() const {
    validate_prediction();
    if (!(t_a < t_b)) {
        throw InvalidInput("scenario times must satisfy t_a < t_b < t_intent");
    }
    if (n_samples < 2) {
        throw InvalidInput("scenario needs n_samples >= 2");
    }
    if (!(noise_x.pos >= 0 && noise_x.vel >= 0 && noise_y.pos >= 0 && noise_y.vel >= 0)) {
        throw InvalidInput("noise variances must be nonnegative");
    }
    if (truth && (!truth->x.covers(interest()) || !truth->y.covers(interest()))) {
        throw InvalidInput("truth path must cover [t_a, t_intent]");
    }
}

ScenarioSpec build_scenario(ScenarioName name, std::uint64_t rng_seed) {
    switch (name) {
    case ScenarioName::Merging:
        return merging(rng_seed);
    case ScenarioName::Crossing:
        return crossing(rng_seed);
    case ScenarioName::Custom:
        break;
    }
    throw InvalidInput("build_scenario: only merging and crossing have built-in parameters");
}

Vector<double> measurement_times(const ScenarioSpec& spec) {
    return Vector<double>::LinSpaced(spec.n_samples, spec.t_a, spec.t_b);
}

std::pair<ObservationSet<double>, ObservationSet<double>> simulate_observations(const ScenarioSpec& spec) {
    spec.validate();
    if (!spec.truth) {
        throw InvalidInput("simulate_observations: scenario has no truth path");
    }
    std::mt19937_64 rng(spec.rng_seed);
    std::normal_distribution<double> unit(0.0, 1.0);

    const Vector<double> times = measurement_times(spec);
    const Piecewise vx = spec.truth->x.derivative();
    const Piecewise vy = spec.truth->y.derivative();

    auto make = [&](const Piecewise& p, const Piecewise& v, const AxisNoise& noise) {
        ObservationSet<double> obs;
        obs.times = times;
        obs.pos.resize(times.size());
        obs.vel.resize(times.size());
        obs.noise_var_pos = std::max(noise.pos, kMinFitVariance);
        obs.noise_var_vel = std::max(noise.vel, kMinFitVariance);
        for (Eigen::Index i = 0; i < times.size(); ++i) {
            obs.pos(i) = p(times(i)) + std::sqrt(noise.pos) * unit(rng);
            obs.vel(i) = v(times(i)) + std::sqrt(noise.vel) * unit(rng);
        }
        return obs;
    };
    ObservationSet<double> obs_x = make(spec.truth->x, vx, spec.noise_x);
    ObservationSet<double> obs_y = make(spec.truth->y, vy, spec.noise_y);
    return {std::move(obs_x), std::move(obs_y)};
}

bool ScenarioRun::any_collision() const {
    for (const auto& r : reports) {
        if (r.report.verdict) {
            return true;
        }
    }
    return false;
}

const CandidateResult& ScenarioRun::result(const std::string& name) const {
    for (const auto& r : reports) {
        if (r.name == name) {
            return r;
        }
    }
    throw InvalidInput("no candidate named '" + name + "'");
}

void check_initial_separation(const std::vector<NamedTrajectory>& candidates, double t0, double ox, double oy,
                              double delta_safe) {
    for (const auto& c : candidates) {
        if (!c.path.x.domain().contains(t0) || !c.path.y.domain().contains(t0)) {
            continue;
        }
        const double gap = std::hypot(c.path.x(t0) - ox, c.path.y(t0) - oy);
        if (!(gap > delta_safe)) {
            std::ostringstream os;
            os << "candidate '" << c.name << "' starts " << gap << " m from the obstacle at t = " << t0
               << ", within the safety distance " << delta_safe << " m (initial separation violated)";
            throw InvalidInput(os.str());
        }
    }
}

ScenarioRun predict(const ScenarioSpec& spec, ObservationSet<double> obs_x, ObservationSet<double> obs_y) {
    spec.validate_prediction();
    auto [model_x, model_y] = fit_planar(obs_x, obs_y, spec.intent_x, spec.intent_y, spec.kernel, spec.kernel);
    const TimeInterval<double> horizon = spec.horizon();
    UncertaintyBoundary<double> bx = boundary(model_x, horizon, spec.band_multiplier);
    UncertaintyBoundary<double> by = boundary(model_y, horizon, spec.band_multiplier);

    std::vector<CandidateResult> reports;
    const SafetyConfig<double> cfg{spec.delta_safe};
    for (const auto& c : spec.candidates) {
        reports.push_back({c.name, check_collision(c.path, bx, by, cfg, horizon)});
    }
    return ScenarioRun{spec,          std::move(obs_x), std::move(obs_y), std::move(model_x), std::move(model_y),
                       std::move(bx), std::move(by),    std::move(reports)};
}

ScenarioRun run_scenario(const ScenarioSpec& spec) {
    spec.validate();
    if (!spec.truth) {
        throw InvalidInput("run_scenario: scenario has no truth path");
    }
    check_initial_separation(spec.candidates, spec.t_a, spec.truth->x(spec.t_a), spec.truth->y(spec.t_a),
                             spec.delta_safe);
    auto [obs_x, obs_y] = simulate_observations(spec);
    return predict(spec, std::move(obs_x), std::move(obs_y));
}

} // namespace gpcp
