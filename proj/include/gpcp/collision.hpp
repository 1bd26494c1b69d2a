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

#ifndef GPCP_COLLISION_HPP
#define GPCP_COLLISION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gpcp/errors.hpp"
#include "gpcp/poly_basis.hpp"
#include "gpcp/polynomial.hpp"
#include "gpcp/roots.hpp"

namespace gpcp {

/// One polynomial piece of a trajectory, valid on `span`.
template <typename Scalar>
struct Segment {
    TimeInterval<Scalar> span;
    Polynomial<Scalar> poly;
};

inline constexpr double kKnotTolerance = 1e-9;

/// Contiguous sequence of polynomial segments on one axis.
template <typename Scalar>
class PiecewisePolynomial {
public:
    PiecewisePolynomial() = default;

    explicit PiecewisePolynomial(std::vector<Segment<Scalar>> segments) : segments_(std::move(segments)) {
        if (segments_.empty()) {
            throw InvalidInput("piecewise polynomial needs at least one segment");
        }
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            segments_[i].span.validate();
            if (i == 0) {
                continue;
            }
            const auto& prev = segments_[i - 1];
            const auto& next = segments_[i];
            const Scalar knot = next.span.start;
            if (std::abs(prev.span.end - knot) > Scalar(kKnotTolerance)) {
                std::ostringstream os;
                os << "segments " << i - 1 << " and " << i << " are not contiguous (" << prev.span.end
                   << " vs " << knot << ")";
                throw InvalidInput(os.str());
            }
            const Scalar jump = std::abs(prev.poly(knot) - next.poly(knot));
            if (jump > Scalar(kKnotTolerance)) {
                std::ostringstream os;
                os << "trajectory is discontinuous at t = " << knot << " (jump " << jump << ")";
                throw InvalidInput(os.str());
            }
        }
    }

    /// Single polynomial valid on `span`.
    PiecewisePolynomial(TimeInterval<Scalar> span, Polynomial<Scalar> poly)
        : PiecewisePolynomial(std::vector<Segment<Scalar>>{{span, std::move(poly)}}) {}

    const std::vector<Segment<Scalar>>& segments() const { return segments_; }

    TimeInterval<Scalar> domain() const { return {segments_.front().span.start, segments_.back().span.end}; }

    bool covers(const TimeInterval<Scalar>& interval) const {
        const auto d = domain();
        return d.start <= interval.start && d.end >= interval.end;
    }

    Scalar operator()(Scalar t) const {
        const auto d = domain();
        if (t < d.start || t > d.end) {
            std::ostringstream os;
            os << "t = " << t << " is outside the trajectory domain [" << d.start << ", " << d.end << "]";
            throw InvalidInput(os.str());
        }
        for (const auto& seg : segments_) {
            if (t <= seg.span.end) {
                return seg.poly(t);
            }
        }
        return segments_.back().poly(t);
    }

    PiecewisePolynomial derivative() const {
        std::vector<Segment<Scalar>> out;
        out.reserve(segments_.size());
        for (const auto& seg : segments_) {
            out.push_back({seg.span, seg.poly.derivative()});
        }
        PiecewisePolynomial d;
        d.segments_ = std::move(out);
        return d;
    }

private:
    std::vector<Segment<Scalar>> segments_;
};

/// Planned agent path, one piecewise polynomial per axis.
template <typename Scalar>
struct AgentTrajectory {
    PiecewisePolynomial<Scalar> x;
    PiecewisePolynomial<Scalar> y;
};

template <typename Scalar>
struct SafetyConfig {
    Scalar delta_safe{1};

    void validate() const {
        if (!(delta_safe > 0)) {
            throw InvalidInput("safety distance must be positive");
        }
    }
};

template <typename Scalar>
struct CollisionReport {
    std::vector<TimeInterval<Scalar>> intervals_x;
    std::vector<TimeInterval<Scalar>> intervals_y;
    std::vector<TimeInterval<Scalar>> joint;
    bool verdict{false};
    /// Smallest sampled Euclidean combination of the per-axis distances.
    Scalar min_joint_distance{std::numeric_limits<Scalar>::infinity()};
};

/// Time resolution of collision interval endpoints.
inline constexpr double kIntervalTolerance = 1e-10;
inline constexpr int kJointDistanceGrid = 2000;

namespace detail {

template <typename Scalar>
void require_inside(Scalar t, const TimeInterval<Scalar>& span, const char* what) {
    const Scalar slack = Scalar(kKnotTolerance);
    if (t < span.start - slack || t > span.end + slack) {
        std::ostringstream os;
        os << "t = " << t << " is outside the " << what << " [" << span.start << ", " << span.end << "]";
        throw InvalidInput(os.str());
    }
}

template <typename Scalar>
Scalar axis_distance(Scalar position, Scalar t, const UncertaintyBoundary<Scalar>& band) {
    return std::max(Scalar(0), std::abs(position - band.mu(t)) - band.half_width(t));
}

template <typename Scalar>
void append_merged(std::vector<TimeInterval<Scalar>>& out, TimeInterval<Scalar> next) {
    if (!out.empty() && next.start - out.back().end <= Scalar(kIntervalTolerance)) {
        out.back().end = std::max(out.back().end, next.end);
    } else {
        out.push_back(next);
    }
}

} // namespace detail

/// Distance from the agent coordinate at t to the band
/// [mu - m*sigma, mu + m*sigma] on one axis; zero inside the band.
template <typename Scalar>
Scalar min_distance_to_region(Scalar t, const PiecewisePolynomial<Scalar>& traj_axis,
                              const UncertaintyBoundary<Scalar>& band) {
    detail::require_inside(t, band.horizon, "boundary horizon");
    return detail::axis_distance(traj_axis(t), t, band);
}

/// Maximal sub-intervals of `horizon` on which the axis distance to the
/// band is below the safety distance.
///
/// Boundary crossings solve |e| = m*sigma + delta with e = psi - mu. Since
/// the variance is polynomial, squaring twice gives the polynomial
/// ((e^2 - delta^2 - m^2 var)^2 - 4 m^2 delta^2 var), whose real roots are
/// isolated per segment; each root-free piece is classified at its midpoint.
template <typename Scalar>
std::vector<TimeInterval<Scalar>> collision_intervals_axis(const PiecewisePolynomial<Scalar>& traj_axis,
                                                           const UncertaintyBoundary<Scalar>& band,
                                                           const SafetyConfig<Scalar>& cfg,
                                                           const TimeInterval<Scalar>& horizon) {
    cfg.validate();
    horizon.validate();
    if (!traj_axis.covers(horizon)) {
        throw InvalidInput("collision_intervals_axis: trajectory does not cover the horizon");
    }
    if (horizon.start < band.horizon.start - Scalar(kKnotTolerance) ||
        horizon.end > band.horizon.end + Scalar(kKnotTolerance)) {
        throw InvalidInput("collision_intervals_axis: horizon extends beyond the uncertainty boundary");
    }

    const Scalar delta = cfg.delta_safe;
    const Scalar m2 = band.multiplier * band.multiplier;
    std::vector<TimeInterval<Scalar>> out;
    const auto& segments = traj_axis.segments();
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Scalar a = std::max(segments[i].span.start, horizon.start);
        const Scalar b = std::min(segments[i].span.end, horizon.end);
        if (!(b > a)) {
            continue;
        }
        const Scalar len = b - a;
        const Polynomial<Scalar> psi = segments[i].poly.rebased(a, len);
        const Polynomial<Scalar> e = psi - band.mu.rebased(a, len);
        const Polynomial<Scalar> v = band.var.rebased(a, len);
        const Polynomial<Scalar> w = e * e - delta * delta - m2 * v;
        const Polynomial<Scalar> q = w * w - Scalar(4) * m2 * delta * delta * v;

        std::vector<Scalar> cuts{Scalar(0)};
        try {
            for (Scalar r : real_roots<Scalar>(q.coeffs(), Scalar(0), Scalar(1), Scalar(kIntervalTolerance) / len)) {
                if (r > cuts.back() && r < Scalar(1)) {
                    cuts.push_back(r);
                }
            }
        } catch (const RootIsolationError& err) {
            throw RootIsolationError(std::string(err.what()) + " on segment " + std::to_string(i), i);
        }
        cuts.push_back(Scalar(1));

        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const Scalar mid = psi.to_global(Scalar(0.5) * (cuts[k] + cuts[k + 1]));
            const Scalar gap = std::abs(segments[i].poly(mid) - band.mu(mid)) - band.half_width(mid);
            if (gap < delta) {
                detail::append_merged(out, {psi.to_global(cuts[k]), psi.to_global(cuts[k + 1])});
            }
        }
    }
    return out;
}

/// Pairwise intersections of two sorted interval lists; touching
/// endpoints do not count.
template <typename Scalar>
std::vector<TimeInterval<Scalar>> intersect_intervals(const std::vector<TimeInterval<Scalar>>& lhs,
                                                      const std::vector<TimeInterval<Scalar>>& rhs) {
    std::vector<TimeInterval<Scalar>> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < lhs.size() && j < rhs.size()) {
        const Scalar lo = std::max(lhs[i].start, rhs[j].start);
        const Scalar hi = std::min(lhs[i].end, rhs[j].end);
        if (hi > lo) {
            out.push_back({lo, hi});
        }
        if (lhs[i].end < rhs[j].end) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

/// sqrt(d_x^2 + d_y^2) at t, the planar distance from the agent to the
/// rectangle spanned by both bands.
template <typename Scalar>
Scalar joint_distance(Scalar t, const AgentTrajectory<Scalar>& traj, const UncertaintyBoundary<Scalar>& bx,
                      const UncertaintyBoundary<Scalar>& by) {
    return std::hypot(min_distance_to_region(t, traj.x, bx), min_distance_to_region(t, traj.y, by));
}

template <typename Scalar>
CollisionReport<Scalar> check_collision(const AgentTrajectory<Scalar>& traj, const UncertaintyBoundary<Scalar>& bx,
                                        const UncertaintyBoundary<Scalar>& by, const SafetyConfig<Scalar>& cfg,
                                        const TimeInterval<Scalar>& horizon) {
    if (std::abs(bx.horizon.start - by.horizon.start) > Scalar(kKnotTolerance) ||
        std::abs(bx.horizon.end - by.horizon.end) > Scalar(kKnotTolerance)) {
        throw InvalidInput("check_collision: x and y boundaries have different horizons");
    }
    CollisionReport<Scalar> report;
    report.intervals_x = collision_intervals_axis(traj.x, bx, cfg, horizon);
    report.intervals_y = collision_intervals_axis(traj.y, by, cfg, horizon);
    report.joint = intersect_intervals(report.intervals_x, report.intervals_y);
    report.verdict = !report.joint.empty();
    for (int k = 0; k < kJointDistanceGrid; ++k) {
        const Scalar t = horizon.start + horizon.length() * Scalar(k) / Scalar(kJointDistanceGrid - 1);
        report.min_joint_distance = std::min(report.min_joint_distance, joint_distance(t, traj, bx, by));
    }
    return report;
}

} // namespace gpcp

#endif // GPCP_COLLISION_HPP
