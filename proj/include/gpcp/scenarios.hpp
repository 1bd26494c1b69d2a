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

#ifndef GPCP_SCENARIOS_HPP
#define GPCP_SCENARIOS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpcp/collision.hpp"
#include "gpcp/gp_regression.hpp"
#include "gpcp/poly_basis.hpp"

namespace gpcp {

enum class ScenarioName { Merging, Crossing, Custom };

std::string to_string(ScenarioName name);
/// Throws InvalidInput for anything but "merging", "crossing" or "custom".
ScenarioName parse_scenario_name(const std::string& name);

struct AxisNoise {
    double pos{1};
    double vel{1};
};

struct NamedTrajectory {
    std::string name;
    AgentTrajectory<double> path;
};

/// Ground-truth obstacle path; used to synthesize measurements and for
/// plotting, never by the predictor itself.
struct ObstacleTruth {
    PiecewisePolynomial<double> x;
    PiecewisePolynomial<double> y;
};

struct ScenarioSpec {
    ScenarioName name{ScenarioName::Custom};
    double t_a{0};
    double t_b{1};
    double t_intent{3};
    int n_samples{10};
    KernelParams<double> kernel{10, 30, 11};
    AxisNoise noise_x;
    AxisNoise noise_y;
    Intention<double> intent_x;
    Intention<double> intent_y;
    double delta_safe{1};
    double band_multiplier{2};
    std::vector<NamedTrajectory> candidates;
    std::optional<ObstacleTruth> truth;
    std::uint64_t rng_seed{0};

    TimeInterval<double> observation_interval() const { return {t_a, t_b}; }
    TimeInterval<double> horizon() const { return {t_b, t_intent}; }
    TimeInterval<double> interest() const { return {t_a, t_intent}; }

    /// Checks everything predict() needs (no truth, sampling or t_a).
    void validate_prediction() const;
    /// Full check for simulation, including t_a < t_b and n_samples >= 2.
    void validate() const;
};

/// Reference parameters for the built-in scenarios.
ScenarioSpec build_scenario(ScenarioName name, std::uint64_t rng_seed);

/// Noise variances below this are raised to it before fitting.
inline constexpr double kMinFitVariance = 1e-12;

/// n_samples uniform times over [t_a, t_b], endpoints included.
Vector<double> measurement_times(const ScenarioSpec& spec);

/// Samples the truth at the measurement times and adds independent
/// Gaussian noise per coordinate, deterministically from rng_seed.
std::pair<ObservationSet<double>, ObservationSet<double>> simulate_observations(const ScenarioSpec& spec);

struct CandidateResult {
    std::string name;
    CollisionReport<double> report;
};

struct ScenarioRun {
    ScenarioSpec spec;
    ObservationSet<double> obs_x;
    ObservationSet<double> obs_y;
    AxisGPModel<double> model_x;
    AxisGPModel<double> model_y;
    UncertaintyBoundary<double> boundary_x;
    UncertaintyBoundary<double> boundary_y;
    std::vector<CandidateResult> reports;

    bool any_collision() const;
    const CandidateResult& result(const std::string& name) const;
};

/// Throws InvalidInput when some candidate starts within delta_safe of the
/// obstacle position (ox, oy) at time t0.
void check_initial_separation(const std::vector<NamedTrajectory>& candidates, double t0, double ox, double oy,
                              double delta_safe);

/// Fit, extract and check every candidate against given observations.
ScenarioRun predict(const ScenarioSpec& spec, ObservationSet<double> obs_x, ObservationSet<double> obs_y);

/// simulate_observations followed by predict; requires a truth path.
ScenarioRun run_scenario(const ScenarioSpec& spec);

} // namespace gpcp

#endif // GPCP_SCENARIOS_HPP
