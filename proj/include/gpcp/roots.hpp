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

#ifndef GPCP_ROOTS_HPP
#define GPCP_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "gpcp/errors.hpp"
#include "gpcp/kernels.hpp"

namespace gpcp {

namespace detail {

template <typename Scalar>
Scalar horner(const Vector<Scalar>& c, Scalar x) {
    Scalar acc = 0;
    for (Eigen::Index k = c.size() - 1; k >= 0; --k) {
        acc = acc * x + c(k);
    }
    return acc;
}

// Drops leading coefficients that are negligible against the largest one.
template <typename Scalar>
Vector<Scalar> trimmed(const Vector<Scalar>& c, Scalar rel_tol) {
    const Scalar big = c.size() ? c.cwiseAbs().maxCoeff() : Scalar(0);
    Eigen::Index n = c.size();
    while (n > 1 && std::abs(c(n - 1)) <= rel_tol * big) {
        --n;
    }
    return c.head(std::max<Eigen::Index>(n, 1));
}

template <typename Scalar>
Vector<Scalar> normalized(Vector<Scalar> c) {
    const Scalar big = c.cwiseAbs().maxCoeff();
    if (big > 0) {
        c /= big;
    }
    return c;
}

template <typename Scalar>
Vector<Scalar> differentiate(const Vector<Scalar>& c) {
    if (c.size() <= 1) {
        return Vector<Scalar>::Zero(1);
    }
    Vector<Scalar> d(c.size() - 1);
    for (Eigen::Index k = 1; k < c.size(); ++k) {
        d(k - 1) = Scalar(k) * c(k);
    }
    return d;
}

// Remainder of num / den, both ascending; den's leading coefficient nonzero.
template <typename Scalar>
Vector<Scalar> remainder(Vector<Scalar> num, const Vector<Scalar>& den) {
    const Eigen::Index dn = den.size() - 1;
    for (Eigen::Index k = num.size() - 1; k >= dn; --k) {
        const Scalar factor = num(k) / den(dn);
        num.segment(k - dn, dn + 1) -= factor * den;
        num(k) = 0;
    }
    return dn == 0 ? Vector<Scalar>::Zero(1) : Vector<Scalar>(num.head(dn));
}

} // namespace detail

/// Sturm sequence of a real polynomial (ascending coefficients), used to
/// count distinct real roots on half-open intervals (a, b].
template <typename Scalar>
class SturmSequence {
public:
    static constexpr double kTrimTolerance = 1e-14;
    static constexpr double kZeroRemainder = 1e-11;

    explicit SturmSequence(const Vector<Scalar>& coeffs) {
        Vector<Scalar> p0 = detail::normalized(detail::trimmed(coeffs, Scalar(kTrimTolerance)));
        chain_.push_back(p0);
        if (p0.size() <= 1) {
            return;
        }
        chain_.push_back(detail::normalized(detail::differentiate(p0)));
        while (chain_.back().size() > 1) {
            const Vector<Scalar>& prev = chain_[chain_.size() - 2];
            Vector<Scalar> r = -detail::remainder(prev, chain_.back());
            if (r.cwiseAbs().maxCoeff() <= Scalar(kZeroRemainder)) {
                break;
            }
            chain_.push_back(detail::normalized(detail::trimmed(r, Scalar(kTrimTolerance))));
        }
    }

    std::size_t length() const { return chain_.size(); }
    const Vector<Scalar>& base() const { return chain_.front(); }

    int sign_changes(Scalar x) const {
        int changes = 0;
        int last = 0;
        for (const auto& p : chain_) {
            const Scalar v = detail::horner(p, x);
            const int s = (v > 0) - (v < 0);
            if (s == 0) {
                continue;
            }
            if (last != 0 && s != last) {
                ++changes;
            }
            last = s;
        }
        return changes;
    }

    /// Number of distinct real roots in (a, b].
    int count(Scalar a, Scalar b) const { return sign_changes(a) - sign_changes(b); }

private:
    std::vector<Vector<Scalar>> chain_;
};

/// All distinct real roots of the polynomial in [lo, hi], to absolute
/// tolerance `tol`. Sturm counts drive the subdivision; roots with a sign
/// change are refined by bisection, even-multiplicity roots by subdivision.
template <typename Scalar>
std::vector<Scalar> real_roots(const Vector<Scalar>& coeffs, Scalar lo, Scalar hi, Scalar tol) {
    std::vector<Scalar> roots;
    const SturmSequence<Scalar> sturm(coeffs);
    const Vector<Scalar>& p = sturm.base();
    if (p.size() <= 1) {
        return roots;
    }
    // Sturm counts are unreliable at a root of p, so endpoint roots are
    // recorded directly and the search starts just inside them.
    Scalar a0 = lo;
    Scalar b0 = hi;
    if (detail::horner(p, lo) == Scalar(0)) {
        roots.push_back(lo);
        a0 = lo + tol;
    }
    if (detail::horner(p, hi) == Scalar(0)) {
        roots.push_back(hi);
        b0 = hi - tol;
    }

    auto bisect = [&](Scalar a, Scalar b) {
        Scalar fa = detail::horner(p, a);
        while (b - a > tol) {
            const Scalar m = Scalar(0.5) * (a + b);
            const Scalar fm = detail::horner(p, m);
            if (fm == Scalar(0)) {
                return m;
            }
            if ((fm > 0) == (fa > 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return Scalar(0.5) * (a + b);
    };

    struct Job {
        Scalar a, b;
        int va, vb;
        int depth;
    };
    std::vector<Job> stack;
    if (b0 > a0) {
        stack.push_back({a0, b0, sturm.sign_changes(a0), sturm.sign_changes(b0), 0});
    }
    constexpr int kMaxDepth = 200;
    while (!stack.empty()) {
        const Job job = stack.back();
        stack.pop_back();
        const int n = job.va - job.vb;
        if (n <= 0) {
            continue;
        }
        if (job.depth > kMaxDepth) {
            throw RootIsolationError("real_roots: subdivision did not converge", 0);
        }
        const Scalar fa = detail::horner(p, job.a);
        const Scalar fb = detail::horner(p, job.b);
        if (n == 1 && fb == Scalar(0)) {
            roots.push_back(job.b);
            continue;
        }
        if (n == 1 && ((fa > 0) != (fb > 0)) && fa != Scalar(0)) {
            roots.push_back(bisect(job.a, job.b));
            continue;
        }
        if (job.b - job.a <= tol) {
            roots.push_back(Scalar(0.5) * (job.a + job.b));
            continue;
        }
        const Scalar m = Scalar(0.5) * (job.a + job.b);
        const int vm = sturm.sign_changes(m);
        stack.push_back({m, job.b, vm, job.vb, job.depth + 1});
        stack.push_back({job.a, m, job.va, vm, job.depth + 1});
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [tol](Scalar x, Scalar y) { return std::abs(x - y) <= tol; }),
                roots.end());
    return roots;
}

} // namespace gpcp

#endif // GPCP_ROOTS_HPP
