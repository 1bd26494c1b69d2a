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

#ifndef GPCP_POLY_BASIS_HPP
#define GPCP_POLY_BASIS_HPP

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpcp/errors.hpp"
#include "gpcp/gp_regression.hpp"
#include "gpcp/polynomial.hpp"

namespace gpcp {

enum class Moment { Mean, Variance };

/// Held-out residual above which an extracted polynomial is rejected.
inline constexpr double kBasisTolerance = 1e-6;
inline constexpr int kBasisCheckPoints = 100;

/// `count` uniformly spaced times in [start + h/100, end]. The first node
/// stays strictly inside the half-open prediction interval.
template <typename Scalar>
Vector<Scalar> horizon_nodes(const TimeInterval<Scalar>& horizon, Eigen::Index count) {
    const Scalar h = horizon.length();
    const Scalar first = horizon.start + h / Scalar(100);
    if (count == 1) {
        return Vector<Scalar>::Constant(1, horizon.end);
    }
    return Vector<Scalar>::LinSpaced(count, first, horizon.end);
}

/// Throws unless no (pseudo-)observation time of `model` falls strictly
/// inside the horizon; only then is the posterior polynomial there.
template <typename Scalar>
void require_prediction_horizon(const AxisGPModel<Scalar>& model, const TimeInterval<Scalar>& horizon) {
    horizon.validate();
    for (Eigen::Index i = 0; i < model.aug_times().size(); ++i) {
        const Scalar t = model.aug_times()(i);
        if (t > horizon.start && t < horizon.end) {
            std::ostringstream os;
            os << "horizon [" << horizon.start << ", " << horizon.end
               << "] overlaps the data: observation time " << t << " lies inside it";
            throw InvalidInput(os.str());
        }
    }
}

template <typename Scalar>
Scalar posterior_moment(const AxisGPModel<Scalar>& model, Scalar t, Moment which) {
    const PosteriorMoments<Scalar> m = model.posterior_at(t);
    return which == Moment::Mean ? m.mean_pos : m.var_pos;
}

/// Samples the posterior position mean or variance at degree + 1 uniform
/// horizon nodes and interpolates them. No verification.
template <typename Scalar>
Polynomial<Scalar> fit_posterior_poly(const AxisGPModel<Scalar>& model, const TimeInterval<Scalar>& horizon,
                                      Moment which, Eigen::Index degree) {
    require_prediction_horizon(model, horizon);
    const Vector<Scalar> nodes = horizon_nodes(horizon, degree + 1);
    Vector<Scalar> values(nodes.size());
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
        values(i) = posterior_moment(model, nodes(i), which);
    }
    return interpolate<Scalar>(nodes, values, horizon.start, horizon.length());
}

/// Max |poly - posterior| over `points` held-out times offset from the
/// interpolation nodes.
template <typename Scalar>
Scalar basis_residual(const AxisGPModel<Scalar>& model, const Polynomial<Scalar>& poly,
                      const TimeInterval<Scalar>& horizon, Moment which, int points = kBasisCheckPoints) {
    Scalar worst = 0;
    const Scalar h = horizon.length();
    for (int k = 0; k < points; ++k) {
        const Scalar t = horizon.start + h * (Scalar(k) + Scalar(0.5)) / Scalar(points);
        worst = std::max(worst, std::abs(poly(t) - posterior_moment(model, t, which)));
    }
    return worst;
}

namespace detail {

template <typename Scalar>
Polynomial<Scalar> extract_verified(const AxisGPModel<Scalar>& model, const TimeInterval<Scalar>& horizon,
                                    Moment which, Eigen::Index degree) {
    Polynomial<Scalar> poly = fit_posterior_poly(model, horizon, which, degree);
    const Scalar residual = basis_residual(model, poly, horizon, which);
    if (!(residual <= Scalar(kBasisTolerance))) {
        std::ostringstream os;
        os << "degree-" << degree << (which == Moment::Mean ? " mean" : " variance")
           << " polynomial misses the posterior by " << residual << " on the horizon ["
           << horizon.start << ", " << horizon.end << "]";
        throw BasisMismatchError(os.str(), double(residual));
    }
    return poly;
}

} // namespace detail

/// Posterior position mean on the horizon as an exact cubic.
template <typename Scalar>
Polynomial<Scalar> extract_mean_poly(const AxisGPModel<Scalar>& model, const TimeInterval<Scalar>& horizon) {
    return detail::extract_verified(model, horizon, Moment::Mean, 3);
}

/// Posterior position variance on the horizon as an exact sextic.
template <typename Scalar>
Polynomial<Scalar> extract_var_poly(const AxisGPModel<Scalar>& model, const TimeInterval<Scalar>& horizon) {
    return detail::extract_verified(model, horizon, Moment::Variance, 6);
}

/// Per-axis uncertainty band mu(t) +/- multiplier * sqrt(var(t)) on the
/// prediction horizon.
template <typename Scalar>
struct UncertaintyBoundary {
    Polynomial<Scalar> mu;
    Polynomial<Scalar> var;
    TimeInterval<Scalar> horizon;
    Scalar multiplier{2};

    Scalar sigma(Scalar t) const {
        const Scalar v = var(t);
        if (v < Scalar(kVarianceFloor)) {
            std::ostringstream os;
            os << "variance polynomial is negative (" << v << ") at t = " << t;
            throw BasisMismatchError(os.str(), double(-v));
        }
        return std::sqrt(std::max(v, Scalar(0)));
    }

    Scalar half_width(Scalar t) const { return multiplier * sigma(t); }
    Scalar upper(Scalar t) const { return mu(t) + half_width(t); }
    Scalar lower(Scalar t) const { return mu(t) - half_width(t); }
};

inline constexpr int kVarianceGridPoints = 1000;

template <typename Scalar>
UncertaintyBoundary<Scalar> boundary(const AxisGPModel<Scalar>& model, const TimeInterval<Scalar>& horizon,
                                     Scalar multiplier = Scalar(2)) {
    if (!(multiplier > 0)) {
        throw InvalidInput("boundary: band multiplier must be positive");
    }
    UncertaintyBoundary<Scalar> out{extract_mean_poly(model, horizon), extract_var_poly(model, horizon),
                                    horizon, multiplier};
    for (int k = 0; k <= kVarianceGridPoints; ++k) {
        out.sigma(horizon.start + horizon.length() * Scalar(k) / Scalar(kVarianceGridPoints));
    }
    return out;
}

} // namespace gpcp

#endif // GPCP_POLY_BASIS_HPP
