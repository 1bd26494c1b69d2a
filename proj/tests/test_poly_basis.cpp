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

#include <random>

#include <doctest.h>

#include "gpcp/poly_basis.hpp"
#include "gpcp/scenarios.hpp"

using namespace gpcp;
using doctest::Approx;

namespace {

const KernelParams<double> reference{10, 30, 11};

ObservationSet<double> still(double pos, int n, double noise) {
    ObservationSet<double> obs;
    obs.times = Vector<double>::LinSpaced(n, 0.0, 1.0);
    obs.pos = Vector<double>::Constant(n, pos);
    obs.vel = Vector<double>::Zero(n);
    obs.noise_var_pos = noise;
    obs.noise_var_vel = noise;
    return obs;
}

std::pair<AxisGPModel<double>, AxisGPModel<double>> scenario_models(ScenarioName name, std::uint64_t seed) {
    const ScenarioSpec spec = build_scenario(name, seed);
    const auto [ox, oy] = simulate_observations(spec);
    return fit_planar(ox, oy, spec.intent_x, spec.intent_y, spec.kernel, spec.kernel);
}

double max_gap(const AxisGPModel<double>& model, const Polynomial<double>& p, const TimeInterval<double>& h,
               Moment which) {
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        const double t = h.start + h.length() * (k + 1) / 100.0;
        worst = std::max(worst, std::abs(p(t) - posterior_moment(model, t, which)));
    }
    return worst;
}

} // namespace

TEST_CASE("horizon nodes stay inside the prediction interval") {
    const Vector<double> n = horizon_nodes(TimeInterval<double>{1.0, 3.0}, 4);
    REQUIRE(n.size() == 4);
    CHECK(n(0) == Approx(1.02));
    CHECK(n(3) == 3.0);
    CHECK(n(0) > 1.0);
}

TEST_CASE("sampling a cubic through the fitting path recovers it") {
    const TimeInterval<double> h{1.0, 3.0};
    const Vector<double> nodes = horizon_nodes(h, 4);
    const Vector<double> values = nodes.array().cube();
    const Vector<double> c = interpolate<double>(nodes, values, h.start, h.length()).monomial().coeffs();
    CHECK(std::abs(c(0)) <= 1e-10);
    CHECK(std::abs(c(1)) <= 1e-10);
    CHECK(std::abs(c(2)) <= 1e-10);
    CHECK(std::abs(c(3) - 1) <= 1e-10);
}

TEST_CASE("obstacle at rest gives a constant mean") {
    ObservationSet<double> obs = still(5.0, 1, 1e-10);
    obs.times(0) = 1.0;
    const Intention<double> intent{3.0, 5.0, 1e-10, 0.0, 1e-10};
    const auto model = fit_axis(obs, intent, reference);
    const Polynomial<double> mu = extract_mean_poly(model, TimeInterval<double>{1.0, 3.0}).monomial();
    CHECK(std::abs(mu.coeffs()(1)) < 1e-6);
    CHECK(std::abs(mu.coeffs()(2)) < 1e-6);
    CHECK(std::abs(mu.coeffs()(3)) < 1e-6);
    CHECK(mu.coeffs()(0) == Approx(5.0).epsilon(1e-6));
}

TEST_CASE("prior-only variance is t^3/3") {
    ObservationSet<double> obs = still(0.0, 1, 1e14);
    obs.times(0) = 0.5;
    const auto model = fit_axis(obs, KernelParams<double>{1, 1, 0});
    const Vector<double> c = extract_var_poly(model, TimeInterval<double>{1.0, 3.0}).monomial().coeffs();
    REQUIRE(c.size() == 7);
    const double want[7] = {0, 0, 0, 1.0 / 3, 0, 0, 0};
    for (int k = 0; k < 7; ++k) {
        CHECK(std::abs(c(k) - want[k]) <= 1e-6);
    }
}

TEST_CASE("scenario fits are exact on the horizon") {
    const TimeInterval<double> h{1.0, 3.0};
    const auto [mx, my] = scenario_models(ScenarioName::Merging, 7);
    CHECK(max_gap(mx, extract_mean_poly(mx, h), h, Moment::Mean) <= 1e-8);
    CHECK(max_gap(mx, extract_var_poly(mx, h), h, Moment::Variance) <= 1e-8);
    const auto [cx, cy] = scenario_models(ScenarioName::Crossing, 7);
    CHECK(max_gap(cy, extract_var_poly(cy, h), h, Moment::Variance) <= 1e-8);
    CHECK(max_gap(cy, extract_mean_poly(cy, h), h, Moment::Mean) <= 1e-8);

    const Polynomial<double> var = extract_var_poly(cy, h);
    const Vector<double> nodes = horizon_nodes(h, 7);
    for (int i = 0; i < 7; ++i) {
        CHECK(std::abs(var(nodes(i)) - cy.posterior_at(nodes(i)).var_pos) <= 1e-10);
    }
}

TEST_CASE("a quadratic cannot represent the posterior mean") {
    const TimeInterval<double> h{1.0, 3.0};
    const auto [mx, my] = scenario_models(ScenarioName::Merging, 3);
    const Polynomial<double> low = fit_posterior_poly(mx, h, Moment::Mean, 2);
    CHECK(basis_residual(mx, low, h, Moment::Mean) > 1e-7);
    CHECK(basis_residual(mx, fit_posterior_poly(mx, h, Moment::Mean, 3), h, Moment::Mean) <= 1e-8);
}

TEST_CASE("horizons overlapping the data are refused") {
    const auto [mx, my] = scenario_models(ScenarioName::Merging, 1);
    CHECK_THROWS_AS(extract_mean_poly(mx, TimeInterval<double>{0.5, 3.0}), InvalidInput);
    CHECK_THROWS_AS(extract_var_poly(mx, TimeInterval<double>{1.0, 4.0}), InvalidInput);
    CHECK_THROWS_AS(extract_var_poly(mx, TimeInterval<double>{3.0, 1.0}), InvalidInput);
    CHECK_NOTHROW(extract_mean_poly(mx, TimeInterval<double>{1.0, 3.0}));
}

TEST_CASE("uncertainty boundary") {
    const ScenarioSpec spec = build_scenario(ScenarioName::Merging, 5);
    const auto [ox, oy] = simulate_observations(spec);
    const auto mx = fit_axis(ox, spec.intent_x, spec.kernel);
    const TimeInterval<double> h = spec.horizon();
    const auto b = boundary(mx, h);

    SUBCASE("upper never below lower") {
        for (int k = 0; k <= 1000; ++k) {
            const double t = h.start + h.length() * k / 1000.0;
            CHECK(b.upper(t) >= b.lower(t));
            CHECK(b.upper(t) - b.mu(t) == Approx(2 * std::sqrt(std::max(b.var(t), 0.0))));
        }
    }
    SUBCASE("brackets the intention mean at the intention time") {
        CHECK(b.lower(spec.t_intent) <= spec.intent_x.mean_pos);
        CHECK(b.upper(spec.t_intent) >= spec.intent_x.mean_pos);
    }
    SUBCASE("multiplier") {
        const auto wide = boundary(mx, h, 3.0);
        CHECK(wide.half_width(2.0) == Approx(1.5 * b.half_width(2.0)));
        CHECK_THROWS_AS(boundary(mx, h, 0.0), InvalidInput);
    }
    SUBCASE("strongly negative variance is a basis mismatch") {
        UncertaintyBoundary<double> bad = b;
        bad.var = Polynomial<double>({-1.0});
        CHECK_THROWS_AS(bad.sigma(2.0), BasisMismatchError);
        bad.var = Polynomial<double>({-1e-12});
        CHECK(bad.sigma(2.0) == 0.0);
    }
}

TEST_CASE("band collapses without uncertainty") {
    const KernelParams<double> k{1, 1, 1};
    ObservationSet<double> obs;
    obs.times = Vector<double>::LinSpaced(20, 0.0, 1.0);
    obs.pos = 2.0 * obs.times;
    obs.vel = Vector<double>::Constant(20, 2.0);
    obs.noise_var_pos = 1e-12;
    obs.noise_var_vel = 1e-12;
    const double ti = 1.005;
    const auto model = fit_axis(obs, Intention<double>{ti, 2 * ti, 1e-12, 2.0, 1e-12}, k);
    const TimeInterval<double> h{1.0, ti};
    const auto b = boundary(model, h);
    for (int q = 0; q <= 100; ++q) {
        const double t = h.start + h.length() * q / 100.0;
        CHECK(std::abs(b.upper(t) - b.mu(t)) <= 1e-4);
        CHECK(std::abs(b.lower(t) - b.mu(t)) <= 1e-4);
    }
}
