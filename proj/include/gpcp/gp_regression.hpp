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

#ifndef GPCP_GP_REGRESSION_HPP
#define GPCP_GP_REGRESSION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "gpcp/errors.hpp"
#include "gpcp/kernels.hpp"

namespace gpcp {

/// Timestamped noisy position and velocity measurements along one axis.
template <typename Scalar>
struct ObservationSet {
    Vector<Scalar> times;
    Vector<Scalar> pos;
    Vector<Scalar> vel;
    Scalar noise_var_pos{1};
    Scalar noise_var_vel{1};

    Eigen::Index size() const { return times.size(); }

    void validate() const {
        if (pos.size() != times.size() || vel.size() != times.size()) {
            throw InvalidInput("observation vectors must have equal lengths (times, pos, vel)");
        }
        for (Eigen::Index i = 1; i < times.size(); ++i) {
            if (!(times(i - 1) < times(i))) {
                std::ostringstream os;
                os << "observation times must be strictly increasing (sequential data assumption); "
                   << "times[" << i - 1 << "] = " << times(i - 1) << ", times[" << i << "] = " << times(i);
                throw InvalidInput(os.str());
            }
        }
        if (!(noise_var_pos > 0) || !(noise_var_vel > 0)) {
            throw InvalidInput("observation noise variances must be positive");
        }
    }
};

/// Gaussian belief over position and velocity at a future time.
template <typename Scalar>
struct Intention {
    Scalar t_intent{};
    Scalar mean_pos{};
    Scalar var_pos{1};
    Scalar mean_vel{};
    Scalar var_vel{1};

    void validate() const {
        if (!(var_pos > 0) || !(var_vel > 0)) {
            throw InvalidInput("intention variances must be positive");
        }
    }
};

/// Posterior (position, velocity) moments at one time.
template <typename Scalar>
struct PosteriorMoments {
    Scalar mean_pos{};
    Scalar mean_vel{};
    Scalar var_pos{};
    Scalar var_vel{};
    Scalar cov_posvel{};
};

/// Smallest variance accepted as round-off before clamping to zero.
inline constexpr double kVarianceFloor = -1e-9;

/// Jitter levels, relative to the mean diagonal of the system matrix,
/// tried in order when the Cholesky factorization fails.
inline constexpr std::array<double, 4> kJitterLevels{0.0, 1e-10, 1e-8, 1e-6};

/// Fitted single-axis multi-output GP.
///
/// Holds the augmented time vector, the Cholesky factor of the Gram-plus-
/// noise system and the weights w = (K + Sigma^2)^{-1} y. Immutable once
/// fitted; posterior queries are const.
template <typename Scalar>
class AxisGPModel {
public:
    using VectorType = Vector<Scalar>;
    using MatrixType = Matrix<Scalar>;

    AxisGPModel(VectorType times, VectorType targets, VectorType noise, KernelParams<Scalar> params)
        : times_(std::move(times)), targets_(std::move(targets)), noise_(std::move(noise)),
          params_(params) {
        params_.validate();
        const Eigen::Index n = times_.size();
        if (n == 0) {
            throw InvalidInput("AxisGPModel: at least one (pseudo-)observation is required");
        }
        if (targets_.size() != 2 * n || noise_.size() != 2 * n) {
            throw InvalidInput("AxisGPModel: targets and noise must have length 2 * times");
        }
        if ((noise_.array() <= 0).any()) {
            throw InvalidInput("AxisGPModel: noise variances must be positive");
        }
        system_ = gram_joint<Scalar>(times_, params_);
        system_.diagonal() += noise_;
        factorize();
        weights_ = solve(targets_);
    }

    const VectorType& aug_times() const { return times_; }
    const VectorType& targets() const { return targets_; }
    const VectorType& noise() const { return noise_; }
    const VectorType& weights() const { return weights_; }
    const KernelParams<Scalar>& params() const { return params_; }
    const Eigen::LLT<MatrixType>& precision_factor() const { return factor_; }
    /// K(T, T) + Sigma^2, without jitter.
    const MatrixType& system_matrix() const { return system_; }
    /// Relative jitter that was needed for the factorization (0 if none).
    Scalar jitter() const { return jitter_; }

    /// ||L L^T - (K + Sigma^2)||_F / ||K + Sigma^2||_F.
    Scalar reconstruction_error() const {
        const MatrixType l = factor_.matrixL();
        return (l * l.transpose() - system_).norm() / system_.norm();
    }

    PosteriorMoments<Scalar> posterior_at(Scalar t) const {
        if (!(t + params_.tau > 0)) {
            std::ostringstream os;
            os << "posterior_at: shifted test time " << t << " + " << params_.tau << " must be positive";
            throw DomainError(os.str());
        }
        const MatrixType cross = cross_covariance<Scalar>(times_, t, params_);
        const Eigen::Matrix<Scalar, 2, 1> mean = cross.transpose() * weights_;
        const Eigen::Matrix<Scalar, 2, 2> cov =
            prior_covariance(t, params_) - cross.transpose() * solve(cross);

        PosteriorMoments<Scalar> out;
        out.mean_pos = mean(0);
        out.mean_vel = mean(1);
        out.var_pos = clamp_variance(cov(0, 0), t);
        out.var_vel = clamp_variance(cov(1, 1), t);
        out.cov_posvel = Scalar(0.5) * (cov(0, 1) + cov(1, 0));
        return out;
    }

private:
    // Cholesky solve plus one step of iterative refinement against the
    // factorized matrix.
    template <typename Rhs>
    MatrixType solve(const Rhs& rhs) const {
        MatrixType x = factor_.solve(rhs);
        const MatrixType residual = rhs - system_ * x - jitter_abs_ * x;
        x += factor_.solve(residual);
        return x;
    }

    void factorize() {
        const Scalar mean_diag = system_.diagonal().mean();
        for (double level : kJitterLevels) {
            jitter_ = Scalar(level);
            jitter_abs_ = Scalar(level) * mean_diag;
            MatrixType a = system_;
            a.diagonal().array() += jitter_abs_;
            factor_.compute(a);
            if (factor_.info() == Eigen::Success) {
                return;
            }
        }
        std::ostringstream os;
        os << "Gram-plus-noise matrix is not numerically positive definite (jitter up to "
           << kJitterLevels.back() << " relative to mean diagonal)";
        throw ConditioningError(os.str(), kJitterLevels.back());
    }

    static Scalar clamp_variance(Scalar v, Scalar t) {
        if (v < Scalar(kVarianceFloor)) {
            std::ostringstream os;
            os << "posterior variance " << v << " at t = " << t << " is below the round-off floor";
            throw ConditioningError(os.str(), 0.0);
        }
        return std::max(v, Scalar(0));
    }

    VectorType times_;
    VectorType targets_;
    VectorType noise_;
    KernelParams<Scalar> params_;
    MatrixType system_;
    Eigen::LLT<MatrixType> factor_;
    VectorType weights_;
    Scalar jitter_{0};
    Scalar jitter_abs_{0};
};

/// Fit one axis from measurements only (no intention augmentation).
template <typename Scalar>
AxisGPModel<Scalar> fit_axis(const ObservationSet<Scalar>& obs, const KernelParams<Scalar>& params) {
    obs.validate();
    const Eigen::Index n = obs.size();
    if (n == 0) {
        throw InvalidInput("fit_axis: no observations and no intention");
    }
    Vector<Scalar> targets(2 * n);
    targets << obs.pos, obs.vel;
    Vector<Scalar> noise(2 * n);
    noise << Vector<Scalar>::Constant(n, obs.noise_var_pos), Vector<Scalar>::Constant(n, obs.noise_var_vel);
    return AxisGPModel<Scalar>(obs.times, std::move(targets), std::move(noise), params);
}

/// Fit one axis from measurements augmented with the intention, which
/// enters as a pseudo-measurement at t_intent whose noise is the intention
/// variance. Stacking order is positions first, then velocities.
template <typename Scalar>
AxisGPModel<Scalar> fit_axis(const ObservationSet<Scalar>& obs, const Intention<Scalar>& intent,
                             const KernelParams<Scalar>& params) {
    obs.validate();
    intent.validate();
    const Eigen::Index n = obs.size();
    if (n > 0 && !(intent.t_intent > obs.times(n - 1))) {
        throw InvalidInput("fit_axis: intention time must be after the last observation");
    }

    Vector<Scalar> times(n + 1);
    times << obs.times, intent.t_intent;

    Vector<Scalar> targets(2 * (n + 1));
    targets << obs.pos, intent.mean_pos, obs.vel, intent.mean_vel;

    Vector<Scalar> noise(2 * (n + 1));
    noise << Vector<Scalar>::Constant(n, obs.noise_var_pos), intent.var_pos,
        Vector<Scalar>::Constant(n, obs.noise_var_vel), intent.var_vel;

    return AxisGPModel<Scalar>(std::move(times), std::move(targets), std::move(noise), params);
}

/// Independent x and y fits sharing one measurement time vector.
template <typename Scalar>
std::pair<AxisGPModel<Scalar>, AxisGPModel<Scalar>>
fit_planar(const ObservationSet<Scalar>& obs_x, const ObservationSet<Scalar>& obs_y,
           const Intention<Scalar>& intent_x, const Intention<Scalar>& intent_y,
           const KernelParams<Scalar>& params_x, const KernelParams<Scalar>& params_y) {
    if (obs_x.times.size() != obs_y.times.size() || obs_x.times != obs_y.times) {
        throw InvalidInput("fit_planar: x and y observations must share the same time vector");
    }
    if (intent_x.t_intent != intent_y.t_intent) {
        throw InvalidInput("fit_planar: x and y intentions must share the same intention time");
    }
    return {fit_axis(obs_x, intent_x, params_x), fit_axis(obs_y, intent_y, params_y)};
}

} // namespace gpcp

#endif // GPCP_GP_REGRESSION_HPP
