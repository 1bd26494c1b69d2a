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

#ifndef GPCP_POLYNOMIAL_HPP
#define GPCP_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <Eigen/Core>
#include <Eigen/LU>

#include "gpcp/errors.hpp"
#include "gpcp/kernels.hpp"

namespace gpcp {

/// Real polynomial in the local coordinate s = (t - origin) / scale.
///
/// Coefficients are stored in ascending degree; the leading coefficient
/// may be zero, so degree() is an upper bound. Operator() takes the
/// global time t, local() takes s directly.
template <typename Scalar>
class Polynomial {
public:
    using VectorType = Vector<Scalar>;

    Polynomial() : coeffs_(VectorType::Zero(1)) {}

    explicit Polynomial(VectorType coeffs, Scalar origin = Scalar(0), Scalar scale = Scalar(1))
        : coeffs_(std::move(coeffs)), origin_(origin), scale_(scale) {
        if (coeffs_.size() == 0) {
            coeffs_ = VectorType::Zero(1);
        }
        if (!(scale_ > 0)) {
            throw InvalidInput("Polynomial: coordinate scale must be positive");
        }
    }

    Polynomial(std::initializer_list<Scalar> coeffs)
        : Polynomial(VectorType(Eigen::Map<const VectorType>(coeffs.begin(), Eigen::Index(coeffs.size())))) {}

    const VectorType& coeffs() const { return coeffs_; }
    Scalar origin() const { return origin_; }
    Scalar scale() const { return scale_; }
    Eigen::Index degree() const { return coeffs_.size() - 1; }

    Scalar to_local(Scalar t) const { return (t - origin_) / scale_; }
    Scalar to_global(Scalar s) const { return origin_ + scale_ * s; }

    Scalar local(Scalar s) const {
        Scalar acc = 0;
        for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) {
            acc = acc * s + coeffs_(k);
        }
        return acc;
    }

    Scalar operator()(Scalar t) const { return local(to_local(t)); }

    /// Derivative with respect to the global time t.
    Polynomial derivative() const {
        if (coeffs_.size() <= 1) {
            return Polynomial(VectorType::Zero(1), origin_, scale_);
        }
        VectorType d(coeffs_.size() - 1);
        for (Eigen::Index k = 1; k < coeffs_.size(); ++k) {
            d(k - 1) = Scalar(k) * coeffs_(k) / scale_;
        }
        return Polynomial(std::move(d), origin_, scale_);
    }

    /// The same function expressed in the coordinate (t - origin) / scale.
    Polynomial rebased(Scalar origin, Scalar scale) const {
        if (origin == origin_ && scale == scale_) {
            return *this;
        }
        // old local u = a + b * s_new
        const Scalar a = (origin - origin_) / scale_;
        const Scalar b = scale / scale_;
        VectorType acc = VectorType::Zero(coeffs_.size());
        Eigen::Index len = 1;
        acc(0) = coeffs_(coeffs_.size() - 1);
        for (Eigen::Index k = coeffs_.size() - 2; k >= 0; --k) {
            // acc <- acc * (a + b s) + c_k
            for (Eigen::Index j = len; j >= 1; --j) {
                acc(j) = acc(j) * a + acc(j - 1) * b;
            }
            acc(0) = acc(0) * a + coeffs_(k);
            ++len;
        }
        return Polynomial(std::move(acc), origin, scale);
    }

    /// Coefficients of the same function in plain powers of t.
    Polynomial monomial() const { return rebased(Scalar(0), Scalar(1)); }

    Polynomial& operator*=(Scalar k) {
        coeffs_ *= k;
        return *this;
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        const Polynomial qq = q.rebased(p.origin_, p.scale_);
        VectorType c = VectorType::Zero(std::max(p.coeffs_.size(), qq.coeffs_.size()));
        c.head(p.coeffs_.size()) += p.coeffs_;
        c.head(qq.coeffs_.size()) += qq.coeffs_;
        return Polynomial(std::move(c), p.origin_, p.scale_);
    }

    friend Polynomial operator-(const Polynomial& p) {
        return Polynomial(-p.coeffs_, p.origin_, p.scale_);
    }

    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        const Polynomial qq = q.rebased(p.origin_, p.scale_);
        VectorType c = VectorType::Zero(p.coeffs_.size() + qq.coeffs_.size() - 1);
        for (Eigen::Index i = 0; i < p.coeffs_.size(); ++i) {
            c.segment(i, qq.coeffs_.size()) += p.coeffs_(i) * qq.coeffs_;
        }
        return Polynomial(std::move(c), p.origin_, p.scale_);
    }

    friend Polynomial operator*(Scalar k, Polynomial p) { return p *= k; }
    friend Polynomial operator*(Polynomial p, Scalar k) { return p *= k; }

    friend Polynomial operator+(const Polynomial& p, Scalar k) {
        Polynomial out = p;
        out.coeffs_(0) += k;
        return out;
    }
    friend Polynomial operator-(const Polynomial& p, Scalar k) { return p + (-k); }

private:
    VectorType coeffs_;
    Scalar origin_{0};
    Scalar scale_{1};
};

/// Interpolating polynomial of degree nodes.size() - 1 through
/// (nodes[i], values[i]), solved as a Vandermonde system in the local
/// coordinate (t - origin) / scale.
template <typename Scalar>
Polynomial<Scalar> interpolate(const Eigen::Ref<const Vector<Scalar>>& nodes,
                               const Eigen::Ref<const Vector<Scalar>>& values, Scalar origin,
                               Scalar scale) {
    const Eigen::Index n = nodes.size();
    if (n == 0 || values.size() != n) {
        throw InvalidInput("interpolate: nodes and values must be non-empty and equally sized");
    }
    Matrix<Scalar> vander(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Scalar s = (nodes(i) - origin) / scale;
        Scalar power = 1;
        for (Eigen::Index k = 0; k < n; ++k) {
            vander(i, k) = power;
            power *= s;
        }
    }
    Eigen::FullPivLU<Matrix<Scalar>> lu(vander);
    if (!lu.isInvertible()) {
        throw InvalidInput("interpolate: interpolation nodes must be distinct");
    }
    return Polynomial<Scalar>(lu.solve(values), origin, scale);
}

} // namespace gpcp

#endif // GPCP_POLYNOMIAL_HPP
