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

#ifndef GPCP_REPORT_IO_HPP
#define GPCP_REPORT_IO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "gpcp/errors.hpp"
#include "gpcp/scenarios.hpp"

namespace gpcp {

using Json = nlohmann::json;

/// Malformed or incomplete configuration; the message names the field.
class ConfigError : public Error {
public:
    using Error::Error;
};

inline constexpr int kDefaultCurveGrid = 200;

struct OutputOptions {
    std::filesystem::path dir{"."};
    int grid{kDefaultCurveGrid};

    void validate() const {
        if (grid < 2) {
            throw ConfigError("output.grid must be at least 2");
        }
    }
};

/// Everything `simulate` needs: the scenario plus output settings.
struct RunConfig {
    ScenarioSpec spec;
    OutputOptions output;
};

/// Everything `check` needs: measured data instead of a truth path.
struct CheckConfig {
    ScenarioSpec spec;
    ObservationSet<double> obs_x;
    ObservationSet<double> obs_y;
    OutputOptions output;
};

/// Reads and parses a JSON file; parse errors carry line and column.
Json load_json(const std::filesystem::path& path);

/// Simulation config: {"scenario": base, "seed", "params": {...},
/// "truth": {...}, "trajectories": [...], "output": {...}}. Keys absent
/// from the file keep the built-in values of the base scenario.
RunConfig parse_run_config(const Json& j);

/// Check config: {"params": {...}, "observations": {...},
/// "trajectories": [...], "output": {...}}; "scenario", "seed" and "truth"
/// are optional labels. A report written by `simulate` is itself a valid
/// check config.
CheckConfig parse_check_config(const Json& j);

Json to_json(const Polynomial<double>& p);
Json to_json(const PiecewisePolynomial<double>& p);
Json to_json(const CollisionReport<double>& r);
Json params_to_json(const ScenarioSpec& spec);
Json observations_to_json(const ObservationSet<double>& x, const ObservationSet<double>& y);

PiecewisePolynomial<double> piecewise_from_json(const Json& j, const std::string& field);

/// Structured report of a run (schema in the README).
Json report_to_json(const ScenarioRun& run);

/// Reads the per-candidate results back from a report.
CollisionReport<double> collision_report_from_json(const Json& j, const std::string& field);

/// Delimiter-separated curve table over [t_a, t_intent] plus the
/// measurement times; header row names every column.
std::string curves_csv(const ScenarioRun& run, int grid);

/// Writes report.json and curves.csv into `out`, creating it if needed.
void write_outputs(const ScenarioRun& run, const OutputOptions& out);

} // namespace gpcp

#endif // GPCP_REPORT_IO_HPP
