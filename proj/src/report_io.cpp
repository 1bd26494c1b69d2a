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

#include "gpcp/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gpcp {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const Json& require(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError("missing required field '" + join(path, key) + "'");
    }
    return j.at(key);
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ConfigError("field '" + path + "' must be a number");
    }
    return j.get<double>();
}

double number_at(const Json& j, const std::string& key, const std::string& path) {
    return number(require(j, key, path), join(path, key));
}

// Overwrites `target` when `key` is present.
void maybe_number(const Json& j, const std::string& key, const std::string& path, double& target) {
    if (j.is_object() && j.contains(key)) {
        target = number(j.at(key), join(path, key));
    }
}

Vector<double> number_array(const Json& j, const std::string& path) {
    if (!j.is_array()) {
        throw ConfigError("field '" + path + "' must be an array of numbers");
    }
    Vector<double> out(Eigen::Index(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        out(Eigen::Index(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
    }
    return out;
}

Json array_of(const Vector<double>& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

void parse_kernel(const Json& j, const std::string& path, KernelParams<double>& k) {
    maybe_number(j, "theta_pos", path, k.theta_pos);
    maybe_number(j, "theta_vel", path, k.theta_vel);
    maybe_number(j, "tau", path, k.tau);
}

void parse_intention(const Json& j, const std::string& path, Intention<double>& in) {
    maybe_number(j, "mean_pos", path, in.mean_pos);
    maybe_number(j, "var_pos", path, in.var_pos);
    maybe_number(j, "mean_vel", path, in.mean_vel);
    maybe_number(j, "var_vel", path, in.var_vel);
}

Intention<double> require_intention(const Json& j, const std::string& path) {
    Intention<double> in;
    in.mean_pos = number_at(j, "mean_pos", path);
    in.var_pos = number_at(j, "var_pos", path);
    in.mean_vel = number_at(j, "mean_vel", path);
    in.var_vel = number_at(j, "var_vel", path);
    return in;
}

Json intention_json(const Intention<double>& in) {
    return {{"mean_pos", in.mean_pos}, {"var_pos", in.var_pos}, {"mean_vel", in.mean_vel}, {"var_vel", in.var_vel}};
}

void parse_noise(const Json& params, ScenarioSpec& s) {
    if (!params.contains("noise")) {
        return;
    }
    const Json& n = params.at("noise");
    for (auto [key, axis] : {std::pair{"x", &s.noise_x}, std::pair{"y", &s.noise_y}}) {
        if (n.contains(key)) {
            const std::string path = std::string("params.noise.") + key;
            maybe_number(n.at(key), "pos", path, axis->pos);
            maybe_number(n.at(key), "vel", path, axis->vel);
        }
    }
}

std::vector<NamedTrajectory> parse_trajectories(const Json& j, const std::string& path) {
    if (!j.is_array()) {
        throw ConfigError("field '" + path + "' must be an array of trajectories");
    }
    std::vector<NamedTrajectory> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const Json& name = require(j[i], "name", p);
        if (!name.is_string()) {
            throw ConfigError("field '" + p + ".name' must be a string");
        }
        out.push_back({name.get<std::string>(),
                       {piecewise_from_json(require(j[i], "x", p), p + ".x"),
                        piecewise_from_json(require(j[i], "y", p), p + ".y")}});
    }
    return out;
}

OutputOptions parse_output(const Json& j, OutputOptions out) {
    if (j.is_object() && j.contains("output")) {
        const Json& o = j.at("output");
        if (o.contains("dir")) {
            if (!o.at("dir").is_string()) {
                throw ConfigError("field 'output.dir' must be a string");
            }
            out.dir = o.at("dir").get<std::string>();
        }
        if (o.contains("grid")) {
            if (!o.at("grid").is_number_integer()) {
                throw ConfigError("field 'output.grid' must be an integer");
            }
            out.grid = o.at("grid").get<int>();
        }
    }
    out.validate();
    return out;
}

ObservationSet<double> parse_axis_observations(const Json& obs, const Vector<double>& times, const std::string& axis) {
    const std::string path = "observations." + axis;
    const Json& a = require(obs, axis, "observations");
    ObservationSet<double> out;
    out.times = times;
    out.pos = number_array(require(a, "pos", path), path + ".pos");
    if (!a.contains("vel")) {
        throw ConfigError("missing required field '" + path +
                          ".vel': velocity measurements are required by the joint position-velocity model");
    }
    out.vel = number_array(a.at("vel"), path + ".vel");
    out.noise_var_pos = number_at(a, "noise_var_pos", path);
    out.noise_var_vel = number_at(a, "noise_var_vel", path);
    if (out.pos.size() != times.size() || out.vel.size() != times.size()) {
        throw ConfigError("'" + path + ".pos' and '" + path + ".vel' must have as many entries as 'observations.times'");
    }
    return out;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

Json to_json(const Polynomial<double>& p) {
    return {{"coeffs", array_of(p.coeffs())}, {"origin", p.origin()}, {"scale", p.scale()}};
}

Json to_json(const PiecewisePolynomial<double>& p) {
    Json out = Json::array();
    for (const auto& seg : p.segments()) {
        Json s = to_json(seg.poly);
        s["start"] = seg.span.start;
        s["end"] = seg.span.end;
        out.push_back(std::move(s));
    }
    return out;
}

PiecewisePolynomial<double> piecewise_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError("field '" + field + "' must be a non-empty array of segments");
    }
    std::vector<Segment<double>> segs;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = field + "[" + std::to_string(i) + "]";
        TimeInterval<double> span{number_at(j[i], "start", p), number_at(j[i], "end", p)};
        double origin = 0.0;
        double scale = 1.0;
        maybe_number(j[i], "origin", p, origin);
        maybe_number(j[i], "scale", p, scale);
        const Vector<double> c = number_array(require(j[i], "coeffs", p), p + ".coeffs");
        if (c.size() == 0 || c.size() > 4) {
            throw ConfigError("field '" + p + ".coeffs' must hold 1 to 4 coefficients (degree <= 3)");
        }
        if (!(scale > 0)) {
            throw ConfigError("field '" + p + ".scale' must be positive");
        }
        segs.push_back({span, Polynomial<double>(c, origin, scale)});
    }
    try {
        return PiecewisePolynomial<double>(std::move(segs));
    } catch (const InvalidInput& e) {
        throw ConfigError("field '" + field + "': " + e.what());
    }
}

Json to_json(const CollisionReport<double>& r) {
    auto intervals = [](const std::vector<TimeInterval<double>>& v) {
        Json out = Json::array();
        for (const auto& i : v) {
            out.push_back({i.start, i.end});
        }
        return out;
    };
    return {{"intervals_x", intervals(r.intervals_x)},
            {"intervals_y", intervals(r.intervals_y)},
            {"joint", intervals(r.joint)},
            {"verdict", r.verdict},
            {"min_joint_distance", r.min_joint_distance}};
}

CollisionReport<double> collision_report_from_json(const Json& j, const std::string& field) {
    auto intervals = [&](const std::string& key) {
        std::vector<TimeInterval<double>> out;
        const Json& arr = require(j, key, field);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = field + "." + key + "[" + std::to_string(i) + "]";
            if (!arr[i].is_array() || arr[i].size() != 2) {
                throw ConfigError("field '" + p + "' must be a [start, end] pair");
            }
            out.push_back({number(arr[i][0], p), number(arr[i][1], p)});
        }
        return out;
    };
    CollisionReport<double> r;
    r.intervals_x = intervals("intervals_x");
    r.intervals_y = intervals("intervals_y");
    r.joint = intervals("joint");
    r.verdict = require(j, "verdict", field).get<bool>();
    r.min_joint_distance = number_at(j, "min_joint_distance", field);
    return r;
}

Json params_to_json(const ScenarioSpec& spec) {
    return {{"t_a", spec.t_a},
            {"t_b", spec.t_b},
            {"t_intent", spec.t_intent},
            {"n_samples", spec.n_samples},
            {"kernel", {{"theta_pos", spec.kernel.theta_pos}, {"theta_vel", spec.kernel.theta_vel}, {"tau", spec.kernel.tau}}},
            {"delta_safe", spec.delta_safe},
            {"band_multiplier", spec.band_multiplier},
            {"noise", {{"x", {{"pos", spec.noise_x.pos}, {"vel", spec.noise_x.vel}}},
                       {"y", {{"pos", spec.noise_y.pos}, {"vel", spec.noise_y.vel}}}}},
            {"intention", {{"x", intention_json(spec.intent_x)}, {"y", intention_json(spec.intent_y)}}}};
}

Json observations_to_json(const ObservationSet<double>& x, const ObservationSet<double>& y) {
    auto axis = [](const ObservationSet<double>& o) {
        return Json{{"pos", array_of(o.pos)},
                    {"vel", array_of(o.vel)},
                    {"noise_var_pos", o.noise_var_pos},
                    {"noise_var_vel", o.noise_var_vel}};
    };
    return {{"times", array_of(x.times)}, {"x", axis(x)}, {"y", axis(y)}};
}

RunConfig parse_run_config(const Json& j) {
    if (!j.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    std::uint64_t seed = 0;
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer()) {
            throw ConfigError("field 'seed' must be an integer");
        }
        seed = j.at("seed").get<std::uint64_t>();
    }
    ScenarioName base = ScenarioName::Merging;
    if (j.contains("scenario")) {
        if (!j.at("scenario").is_string()) {
            throw ConfigError("field 'scenario' must be a string");
        }
        try {
            base = parse_scenario_name(j.at("scenario").get<std::string>());
        } catch (const InvalidInput& e) {
            throw ConfigError(std::string("field 'scenario': ") + e.what());
        }
    }

    RunConfig cfg;
    if (base == ScenarioName::Custom) {
        cfg.spec.name = ScenarioName::Custom;
        cfg.spec.rng_seed = seed;
    } else {
        cfg.spec = build_scenario(base, seed);
    }
    ScenarioSpec& s = cfg.spec;

    if (j.contains("params")) {
        const Json& p = j.at("params");
        maybe_number(p, "t_a", "params", s.t_a);
        maybe_number(p, "t_b", "params", s.t_b);
        maybe_number(p, "t_intent", "params", s.t_intent);
        if (p.contains("n_samples")) {
            if (!p.at("n_samples").is_number_integer()) {
                throw ConfigError("field 'params.n_samples' must be an integer");
            }
            s.n_samples = p.at("n_samples").get<int>();
        }
        if (p.contains("kernel")) {
            parse_kernel(p.at("kernel"), "params.kernel", s.kernel);
        }
        maybe_number(p, "delta_safe", "params", s.delta_safe);
        maybe_number(p, "band_multiplier", "params", s.band_multiplier);
        parse_noise(p, s);
        if (p.contains("intention")) {
            const Json& in = p.at("intention");
            if (in.contains("x")) {
                parse_intention(in.at("x"), "params.intention.x", s.intent_x);
            }
            if (in.contains("y")) {
                parse_intention(in.at("y"), "params.intention.y", s.intent_y);
            }
        }
    }
    s.intent_x.t_intent = s.t_intent;
    s.intent_y.t_intent = s.t_intent;

    if (j.contains("truth")) {
        const Json& t = j.at("truth");
        s.truth = ObstacleTruth{piecewise_from_json(require(t, "x", "truth"), "truth.x"),
                                piecewise_from_json(require(t, "y", "truth"), "truth.y")};
    }
    if (j.contains("trajectories")) {
        s.candidates = parse_trajectories(j.at("trajectories"), "trajectories");
    }
    cfg.output = parse_output(j, cfg.output);
    return cfg;
}

CheckConfig parse_check_config(const Json& j) {
    if (!j.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    CheckConfig cfg;
    ScenarioSpec& s = cfg.spec;
    s.name = ScenarioName::Custom;
    s.truth.reset();
    if (j.contains("scenario")) {
        try {
            s.name = parse_scenario_name(j.at("scenario").get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("field 'scenario': ") + e.what());
        }
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer()) {
            throw ConfigError("field 'seed' must be an integer");
        }
        s.rng_seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("truth")) {
        const Json& t = j.at("truth");
        s.truth = ObstacleTruth{piecewise_from_json(require(t, "x", "truth"), "truth.x"),
                                piecewise_from_json(require(t, "y", "truth"), "truth.y")};
    }

    const Json& p = require(j, "params", "");
    const Json& k = require(p, "kernel", "params");
    s.kernel.theta_pos = number_at(k, "theta_pos", "params.kernel");
    s.kernel.theta_vel = number_at(k, "theta_vel", "params.kernel");
    s.kernel.tau = number_at(k, "tau", "params.kernel");
    s.delta_safe = number_at(p, "delta_safe", "params");
    maybe_number(p, "band_multiplier", "params", s.band_multiplier);
    s.t_intent = number_at(p, "t_intent", "params");
    const Json& in = require(p, "intention", "params");
    s.intent_x = require_intention(require(in, "x", "params.intention"), "params.intention.x");
    s.intent_y = require_intention(require(in, "y", "params.intention"), "params.intention.y");
    s.intent_x.t_intent = s.t_intent;
    s.intent_y.t_intent = s.t_intent;

    const Json& obs = require(j, "observations", "");
    const Vector<double> times = number_array(require(obs, "times", "observations"), "observations.times");
    cfg.obs_x = parse_axis_observations(obs, times, "x");
    cfg.obs_y = parse_axis_observations(obs, times, "y");
    s.n_samples = int(times.size());
    s.noise_x = {cfg.obs_x.noise_var_pos, cfg.obs_x.noise_var_vel};
    s.noise_y = {cfg.obs_y.noise_var_pos, cfg.obs_y.noise_var_vel};
    parse_noise(p, s);

    if (p.contains("t_b")) {
        s.t_b = number(p.at("t_b"), "params.t_b");
    } else if (times.size() > 0) {
        s.t_b = times(times.size() - 1);
    } else {
        throw ConfigError("missing required field 'params.t_b' (needed when there are no observations)");
    }
    s.t_a = times.size() > 0 ? times(0) : s.t_b;
    maybe_number(p, "t_a", "params", s.t_a);
    if (times.size() > 0 && times(times.size() - 1) > s.t_b) {
        throw ConfigError("observation times must not exceed 'params.t_b'");
    }

    s.candidates = parse_trajectories(require(j, "trajectories", ""), "trajectories");
    cfg.output = parse_output(j, cfg.output);
    return cfg;
}

Json report_to_json(const ScenarioRun& run) {
    auto axis = [](const UncertaintyBoundary<double>& b) {
        return Json{{"horizon", {{"start", b.horizon.start}, {"end", b.horizon.end}}},
                    {"transform", {{"origin", b.mu.origin()}, {"scale", b.mu.scale()}}},
                    {"mean_coeffs", array_of(b.mu.coeffs())},
                    {"var_coeffs", array_of(b.var.rebased(b.mu.origin(), b.mu.scale()).coeffs())},
                    {"mean_coeffs_monomial", array_of(b.mu.monomial().coeffs())},
                    {"var_coeffs_monomial", array_of(b.var.monomial().coeffs())},
                    {"multiplier", b.multiplier}};
    };
    Json candidates = Json::object();
    for (const auto& r : run.reports) {
        candidates[r.name] = to_json(r.report);
    }
    Json trajectories = Json::array();
    for (const auto& c : run.spec.candidates) {
        trajectories.push_back({{"name", c.name}, {"x", to_json(c.path.x)}, {"y", to_json(c.path.y)}});
    }
    Json out = {{"scenario", to_string(run.spec.name)},
                {"seed", run.spec.rng_seed},
                {"params", params_to_json(run.spec)},
                {"observations", observations_to_json(run.obs_x, run.obs_y)},
                {"trajectories", std::move(trajectories)},
                {"axes", {{"x", axis(run.boundary_x)}, {"y", axis(run.boundary_y)}}},
                {"candidates", std::move(candidates)},
                {"any_collision", run.any_collision()}};
    if (run.spec.truth) {
        out["truth"] = {{"x", to_json(run.spec.truth->x)}, {"y", to_json(run.spec.truth->y)}};
    }
    return out;
}

std::string curves_csv(const ScenarioRun& run, int grid) {
    if (grid < 2) {
        throw ConfigError("curve grid resolution must be at least 2");
    }
    const ScenarioSpec& s = run.spec;
    const double lo = std::min(s.t_a, s.t_b);
    std::vector<double> times;
    for (int k = 0; k < grid; ++k) {
        times.push_back(lo + (s.t_intent - lo) * double(k) / double(grid - 1));
    }
    for (Eigen::Index i = 0; i < run.obs_x.times.size(); ++i) {
        times.push_back(run.obs_x.times(i));
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::ostringstream os;
    os << "time,truth_x,truth_y,meas_x,meas_y,meas_vx,meas_vy,mu_x,upper_x,lower_x,mu_y,upper_y,lower_y";
    for (const auto& c : s.candidates) {
        os << ',' << c.name << "_x," << c.name << "_y," << c.name << "_distance";
    }
    os << '\n';

    const TimeInterval<double> horizon = s.horizon();
    auto cell = [&os](std::optional<double> v) {
        os << ',';
        if (v) {
            os << format_number(*v);
        }
    };
    for (double t : times) {
        os << format_number(t);
        if (s.truth && s.truth->x.domain().contains(t) && s.truth->y.domain().contains(t)) {
            cell(s.truth->x(t));
            cell(s.truth->y(t));
        } else {
            cell(std::nullopt);
            cell(std::nullopt);
        }
        std::optional<Eigen::Index> meas;
        for (Eigen::Index i = 0; i < run.obs_x.times.size(); ++i) {
            if (run.obs_x.times(i) == t) {
                meas = i;
            }
        }
        cell(meas ? std::optional<double>(run.obs_x.pos(*meas)) : std::nullopt);
        cell(meas ? std::optional<double>(run.obs_y.pos(*meas)) : std::nullopt);
        cell(meas ? std::optional<double>(run.obs_x.vel(*meas)) : std::nullopt);
        cell(meas ? std::optional<double>(run.obs_y.vel(*meas)) : std::nullopt);
        for (const AxisGPModel<double>* m : {&run.model_x, &run.model_y}) {
            const PosteriorMoments<double> pm = m->posterior_at(t);
            const double half = s.band_multiplier * std::sqrt(pm.var_pos);
            cell(pm.mean_pos);
            cell(pm.mean_pos + half);
            cell(pm.mean_pos - half);
        }
        for (const auto& c : s.candidates) {
            const bool inside_x = c.path.x.domain().contains(t);
            const bool inside_y = c.path.y.domain().contains(t);
            cell(inside_x ? std::optional<double>(c.path.x(t)) : std::nullopt);
            cell(inside_y ? std::optional<double>(c.path.y(t)) : std::nullopt);
            const bool in_horizon = horizon.contains(t) && inside_x && inside_y;
            cell(in_horizon ? std::optional<double>(joint_distance(t, c.path, run.boundary_x, run.boundary_y))
                            : std::nullopt);
        }
        os << '\n';
    }
    return os.str();
}

void write_outputs(const ScenarioRun& run, const OutputOptions& out) {
    out.validate();
    std::error_code ec;
    std::filesystem::create_directories(out.dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + out.dir.string() + "': " + ec.message());
    }
    const auto report_path = out.dir / "report.json";
    std::ofstream report(report_path);
    if (!report) {
        throw ConfigError("cannot write '" + report_path.string() + "'");
    }
    report << report_to_json(run).dump(2) << '\n';

    const auto curves_path = out.dir / "curves.csv";
    std::ofstream curves(curves_path);
    if (!curves) {
        throw ConfigError("cannot write '" + curves_path.string() + "'");
    }
    curves << curves_csv(run, out.grid);
}

} // namespace gpcp
