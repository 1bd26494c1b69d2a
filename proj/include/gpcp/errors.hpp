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

#ifndef GPCP_ERRORS_HPP
#define GPCP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gpcp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the caller's data was violated.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A kernel was evaluated at a shifted time that is not strictly positive.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The Gram-plus-noise system could not be factorized even with jitter.
class ConditioningError : public Error {
public:
    ConditioningError(const std::string& what, double jitter)
        : Error(what), jitter_(jitter) {}

    /// Largest relative diagonal jitter that was attempted.
    double jitter() const noexcept { return jitter_; }

private:
    double jitter_;
};

/// A fitted polynomial failed to reproduce the posterior on held-out times.
class BasisMismatchError : public Error {
public:
    BasisMismatchError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Root isolation did not converge on a trajectory segment.
class RootIsolationError : public Error {
public:
    RootIsolationError(const std::string& what, std::size_t segment)
        : Error(what), segment_(segment) {}

    std::size_t segment() const noexcept { return segment_; }

private:
    std::size_t segment_;
};

} // namespace gpcp

#endif // GPCP_ERRORS_HPP
