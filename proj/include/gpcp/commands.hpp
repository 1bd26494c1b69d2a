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

#ifndef GPCP_COMMANDS_HPP
#define GPCP_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "gpcp/validation.hpp"

namespace gpcp {

inline constexpr int kExitSafe = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCollision = 2;

/// Flags shared by simulate and check. Unset fields fall back to the
/// config file, then to built-in defaults.
struct OutputFlags {
    std::optional<std::filesystem::path> out;
    std::optional<int> grid;
    std::optional<std::string> only_candidate;
    std::optional<double> safety_multiplier;
};

struct SimulateArgs {
    std::optional<std::string> scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> config;
    OutputFlags flags;
};

struct CheckArgs {
    std::filesystem::path config;
    OutputFlags flags;
};

/// Each command returns kExitSafe, kExitCollision or kExitError and never
/// throws; diagnostics go to `err`.
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidationOptions& options, std::ostream& out, std::ostream& err);

} // namespace gpcp

#endif // GPCP_COMMANDS_HPP
