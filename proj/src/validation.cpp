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

#include "gpcp/validation.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "gpcp/scenarios.hpp"

namespace gpcp {

namespace {

struct Tally {
    int runs{0};
    int correct{0};
    double worst_basis{0};
    bool basis_ok{true};
    bool intervals_ok{true};
    double worst_interval_miss{0};
};

double basis_error(const AxisGPModel<double>& model, const TimeInterval<double>& horizon, int mean_degree) {
    const Polynomial<double> mu = fit_posterior_poly(model, horizon, Moment::Mean, mean_degree);
    const Polynomial<double> var = fit_posterior_poly(model, horizon, Moment::Variance, 6);
    double worst = 0;
    for (int k = 0; k < kBasisGridPoints; ++k) {
        const double t = horizon.start + horizon.length() * double(k + 1) / double(kBasisGridPoints);
        const PosteriorMoments<double> m = model.posterior_at(t);
        worst = std::max({worst, std::abs(mu(t) - m.mean_pos), std::abs(var(t) - m.var_pos)});
    }
    return worst;
}

bool covered(double t, const std::vector<TimeInterval<double>>& intervals, double slack) {
    return std::any_of(intervals.begin(), intervals.end(),
                       [&](const auto& i) { return t >= i.start - slack && t <= i.end + slack; });
}

// Largest disagreement, in seconds, between the returned intervals and a
// uniform scan of the band gap; zero when they agree to the scan step.
double interval_miss(const PiecewisePolynomial<double>& traj, const UncertaintyBoundary<double>& band,
                     double delta, const std::vector<TimeInterval<double>>& intervals, int points) {
    const TimeInterval<double> h = band.horizon;
    const double step = h.length() / double(points - 1);
    double worst = 0;
    for (int k = 0; k < points; ++k) {
        const double t = h.start + h.length() * double(k) / double(points - 1);
        const bool inside = std::abs(traj(t) - band.mu(t)) - band.half_width(t) < delta;
        if (inside && !covered(t, intervals, step)) {
            double gap = h.length();
            for (const auto& i : intervals) {
                gap = std::min({gap, std::abs(t - i.start), std::abs(t - i.end)});
            }
            worst = std::max(worst, gap);
        }
        if (!inside) {
            for (const auto& i : intervals) {
                if (t > i.start + step && t < i.end - step) {
                    worst = std::max(worst, std::min(t - i.start, i.end - t));
                }
            }
        }
    }
    return worst;
}

double covered_fraction(const std::vector<TimeInterval<double>>& intervals, const TimeInterval<double>& horizon) {
    double total = 0;
    for (const auto& i : intervals) {
        total += i.length();
    }
    return total / horizon.length();
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

void run_one(ScenarioName name, std::uint64_t seed, const ValidationOptions& opt, Tally& tally,
             std::vector<std::string>& failures) {
    const std::string label = to_string(name) + " seed " + std::to_string(seed) + ": ";
    ++tally.runs;
    try {
        const ScenarioRun run = run_scenario(build_scenario(name, seed));
        const TimeInterval<double> horizon = run.spec.horizon();

        const double basis = std::max(basis_error(run.model_x, horizon, opt.mean_degree),
                                      basis_error(run.model_y, horizon, opt.mean_degree));
        tally.worst_basis = std::max(tally.worst_basis, basis);
        if (!(basis <= kBasisExactTolerance)) {
            tally.basis_ok = false;
            failures.push_back(label + "polynomial basis misses the posterior by " + fmt("%.3g", basis));
        }

        for (std::size_t c = 0; c < run.spec.candidates.size(); ++c) {
            const auto& cand = run.spec.candidates[c];
            const auto& rep = run.reports[c].report;
            const double step = horizon.length() / double(opt.scan_points - 1);
            const double miss =
                std::max(interval_miss(cand.path.x, run.boundary_x, run.spec.delta_safe, rep.intervals_x, opt.scan_points),
                         interval_miss(cand.path.y, run.boundary_y, run.spec.delta_safe, rep.intervals_y, opt.scan_points));
            tally.worst_interval_miss = std::max(tally.worst_interval_miss, miss);
            if (miss > 2 * step) {
                tally.intervals_ok = false;
                failures.push_back(label + cand.name + " intervals disagree with the dense scan by " +
                                   fmt("%.3g", miss) + " s");
            }
        }

        const auto& cv = run.result("constant_velocity").report;
        const auto& ev = run.result("evasive").report;
        bool ok = cv.verdict && !ev.verdict;
        if (!cv.verdict) {
            failures.push_back(label + "constant_velocity predicted safe");
        }
        if (ev.verdict) {
            failures.push_back(label + "evasive predicted colliding");
        }
        if (name == ScenarioName::Crossing && cv.verdict) {
            const double frac = covered_fraction(cv.intervals_x, horizon);
            if (frac < kCrossingCoverage) {
                ok = false;
                failures.push_back(label + "constant_velocity x-interval covers only " + fmt("%.3f", frac) +
                                   " of the horizon");
            }
        }
        tally.correct += ok ? 1 : 0;
    } catch (const std::exception& e) {
        tally.basis_ok = false;
        tally.intervals_ok = false;
        failures.push_back(label + "error: " + e.what());
    }
}

} // namespace

bool ValidationSummary::all_passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationSummary run_validation(const ValidationOptions& opt) {
    if (opt.seed_count < 1) {
        throw InvalidInput("run_validation: seed_count must be at least 1");
    }
    if (opt.mean_degree < 0 || opt.scan_points < 2) {
        throw InvalidInput("run_validation: invalid mean degree or scan resolution");
    }
    ValidationSummary out;
    Tally merging;
    Tally crossing;
    for (int k = 0; k < opt.seed_count; ++k) {
        run_one(ScenarioName::Merging, opt.first_seed + std::uint64_t(k), opt, merging, out.failures);
        run_one(ScenarioName::Crossing, opt.first_seed + std::uint64_t(k), opt, crossing, out.failures);
    }

    out.checks.push_back({"basis exactness", merging.basis_ok && crossing.basis_ok,
                          "max error " + fmt("%.3g", std::max(merging.worst_basis, crossing.worst_basis))});
    out.checks.push_back({"interval vs dense scan", merging.intervals_ok && crossing.intervals_ok,
                          "max miss " + fmt("%.3g", std::max(merging.worst_interval_miss,
                                                             crossing.worst_interval_miss)) + " s"});
    auto rate = [](const Tally& t) { return double(t.correct) / double(t.runs); };
    out.checks.push_back({"merging outcome rate", rate(merging) >= kOutcomeRate,
                          std::to_string(merging.correct) + "/" + std::to_string(merging.runs)});
    out.checks.push_back({"crossing outcome rate", rate(crossing) >= kOutcomeRate,
                          std::to_string(crossing.correct) + "/" + std::to_string(crossing.runs)});
    return out;
}

void print_summary(const ValidationSummary& summary, std::ostream& os) {
    for (const auto& c : summary.checks) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-26s %-4s  %s", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                      c.detail.c_str());
        os << line << '\n';
    }
    for (const auto& f : summary.failures) {
        os << "  " << f << '\n';
    }
}

} // namespace gpcp
