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

#ifndef GPCP_KERNELS_HPP
#define GPCP_KERNELS_HPP

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Core>

#include "gpcp/errors.hpp"

namespace gpcp {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Closed time interval [start, end] with start < end.
template <typename Scalar>
struct TimeInterval {
    Scalar start{};
    Scalar end{};

    Scalar length() const { return end - start; }
    bool contains(Scalar t) const { return t >= start && t <= end; }

    void validate() const {
        if (!(start < end)) {
            std::ostringstream os;
            os << "time interval must satisfy start < end, got [" << start << ", " << end << "]";
            throw InvalidInput(os.str());
        }
    }

    friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

/// Hyperparameters of the cubic-spline covariance.
///
/// `theta_pos` scales the position process, `theta_vel` the derivative
/// process and `tau` shifts every time input so that the shifted times
/// t + tau stay positive.
template <typename Scalar>
struct KernelParams {
    Scalar theta_pos{1};
    Scalar theta_vel{1};
    Scalar tau{0};

    void validate() const {
        if (!(theta_pos > 0) || !(theta_vel > 0) || !(tau >= 0)) {
            std::ostringstream os;
            os << "kernel parameters require theta_pos > 0, theta_vel > 0, tau >= 0 (got "
               << theta_pos << ", " << theta_vel << ", " << tau << ")";
            throw InvalidInput(os.str());
        }
    }

    friend bool operator==(const KernelParams&, const KernelParams&) = default;
};

namespace detail {

template <typename Scalar>
Scalar shifted(Scalar t, const KernelParams<Scalar>& params) {
    const Scalar s = t + params.tau;
    if (!(s > 0)) {
        std::ostringstream os;
        os << "shifted time " << t << " + " << params.tau << " must be positive";
        throw DomainError(os.str());
    }
    return s;
}

} // namespace detail

/// Cubic-spline covariance between positions at t and u.
template <typename Scalar>
Scalar k_pos(Scalar t, Scalar u, const KernelParams<Scalar>& params) {
    const Scalar ts = detail::shifted(t, params);
    const Scalar us = detail::shifted(u, params);
    const Scalar m = std::min(ts, us);
    const Scalar d = std::abs(ts - us);
    return params.theta_pos * params.theta_pos * (m * m * m / Scalar(3) + d * m * m / Scalar(2));
}

/// Covariance between the position at t and the velocity at u, i.e. the
/// derivative of the unit cubic-spline kernel in its second argument,
/// scaled by theta_pos * theta_vel. The diagonal t == u takes the t >= u
/// branch.
template <typename Scalar>
Scalar k_posvel(Scalar t, Scalar u, const KernelParams<Scalar>& params) {
    const Scalar ts = detail::shifted(t, params);
    const Scalar us = detail::shifted(u, params);
    const Scalar scale = params.theta_pos * params.theta_vel;
    if (ts < us) {
        return scale * ts * ts / Scalar(2);
    }
    return scale * (ts * us - us * us / Scalar(2));
}

/// Covariance between velocities at t and u.
template <typename Scalar>
Scalar k_velvel(Scalar t, Scalar u, const KernelParams<Scalar>& params) {
    const Scalar ts = detail::shifted(t, params);
    const Scalar us = detail::shifted(u, params);
    return params.theta_vel * params.theta_vel * std::min(ts, us);
}

/// Joint position/velocity Gram matrix [[K_pp, K_pv], [K_pv^T, K_vv]] for
/// strictly increasing `times`.
template <typename Scalar>
Matrix<Scalar> gram_joint(const Eigen::Ref<const Vector<Scalar>>& times,
                          const KernelParams<Scalar>& params) {
    params.validate();
    const Eigen::Index m = times.size();
    for (Eigen::Index i = 1; i < m; ++i) {
        if (!(times(i - 1) < times(i))) {
            throw InvalidInput("gram_joint: times must be strictly increasing");
        }
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(times(i) + params.tau > 0)) {
            throw InvalidInput("gram_joint: shifted times must be positive");
        }
    }

    Matrix<Scalar> gram(2 * m, 2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            const Scalar pp = k_pos(times(i), times(j), params);
            const Scalar vv = k_velvel(times(i), times(j), params);
            gram(i, j) = gram(j, i) = pp;
            gram(m + i, m + j) = gram(m + j, m + i) = vv;
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            const Scalar pv = k_posvel(times(i), times(j), params);
            gram(i, m + j) = pv;
            gram(m + j, i) = pv;
        }
    }
    return gram;
}

/// Cross-covariance between stacked [positions; velocities] observed at
/// `times` and the (position, velocity) pair at `t`. Shape 2m x 2.
template <typename Scalar>
Matrix<Scalar> cross_covariance(const Eigen::Ref<const Vector<Scalar>>& times, Scalar t,
                                const KernelParams<Scalar>& params) {
    const Eigen::Index m = times.size();
    Matrix<Scalar> cross(2 * m, 2);
    for (Eigen::Index i = 0; i < m; ++i) {
        cross(i, 0) = k_pos(times(i), t, params);
        cross(i, 1) = k_posvel(times(i), t, params);
        cross(m + i, 0) = k_posvel(t, times(i), params);
        cross(m + i, 1) = k_velvel(times(i), t, params);
    }
    return cross;
}

/// Prior 2x2 covariance of (position, velocity) at a single time.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> prior_covariance(Scalar t, const KernelParams<Scalar>& params) {
    Eigen::Matrix<Scalar, 2, 2> cov;
    cov(0, 0) = k_pos(t, t, params);
    cov(0, 1) = cov(1, 0) = k_posvel(t, t, params);
    cov(1, 1) = k_velvel(t, t, params);
    return cov;
}

} // namespace gpcp

#endif // GPCP_KERNELS_HPP
