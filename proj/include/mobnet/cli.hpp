/*
 * Copyright 2026 The mobnet Authors. All rights reserved.
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
 */

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mobnet::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kSuccess = 0,
  kIoFailure = 1,
  kUsageError = 2,
  kEmptyResult = 3,
};

/// Report names accepted by `report --report`, in output order.
const std::vector<std::string>& report_names();

/// Runs `mobnet <subcommand> ...`; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace mobnet::cli
