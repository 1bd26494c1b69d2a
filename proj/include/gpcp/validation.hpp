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

#ifndef GPCP_VALIDATION_HPP
#define GPCP_VALIDATION_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gpcp {

struct ValidationOptions {
    int seed_count{50};
    std::uint64_t first_seed{0};
    /// Degree of the mean polynomial under test. Anything but 3 is a
    /// deliberately broken build used as a negative control.
    int mean_degree{3};
    /// Dense sign-scan resolution for the interval check.
    int scan_points{20000};
};

struct ValidationCheck {
    std::string name;
    bool passed{false};
    std::string detail;
};

struct ValidationSummary {
    std::vector<ValidationCheck> checks;
    std::vector<std::string> failures;

    bool all_passed() const;
};

inline constexpr double kOutcomeRate = 0.9;
inline constexpr double kCrossingCoverage = 0.95;
inline constexpr double kBasisExactTolerance = 1e-7;
inline constexpr int kBasisGridPoints = 200;

/// Runs both scenarios over the seed range and checks polynomial
/// exactness, interval agreement with a dense scan, and outcome rates.
ValidationSummary run_validation(const ValidationOptions& options);

/// Fixed-width pass/fail table followed by per-seed failures.
void print_summary(const ValidationSummary& summary, std::ostream& os);

} // namespace gpcp

#endif // GPCP_VALIDATION_HPP
