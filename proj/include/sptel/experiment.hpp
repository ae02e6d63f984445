// Copyright 2026 The sptel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sptel/error_spec.hpp"

namespace sptel {

inline constexpr int kConfigSchemaVersion = 1;

/// Config problem located by a JSON pointer ("/sweep/values/3") or, for
/// syntax errors, by "line L, column C".
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

  private:
    std::string where_;
};

/// `{"zz":[3,5,0.3]}`, `{"x1q":[7,"X",0.4]}`, `{"depol2q":0.02}`.
nlohmann::json error_to_json(const ErrorSpec& e);
ErrorSpec error_from_json(const nlohmann::json& j, const std::string& where = "");

/// `start:stop:step` (inclusive, tolerant of rounding) or `a,b,c`.
std::vector<double> parse_value_list(std::string_view text);

nlohmann::json parse_config_text(std::string_view text);
nlohmann::json load_config(const std::filesystem::path& file);
/// Throws ConfigError naming the first offending field.
void validate_config(const nlohmann::json& cfg);

struct ExperimentResult {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json manifest;
};

struct RunOptions {
    std::size_t threads = 0;  // 0: SPT_THREADS or hardware concurrency
};

/// Validates and evaluates every sweep point; rows come back in sweep order.
ExperimentResult run_experiment(const nlohmann::json& cfg, const RunOptions& options = {});
std::string to_csv(const ExperimentResult& r);
/// Writes the CSV and manifest; returns the paths written.
std::pair<std::filesystem::path, std::filesystem::path> write_outputs(const ExperimentResult& r,
                                                                      const std::filesystem::path& csv,
                                                                      std::filesystem::path manifest = {});

std::uint64_t fnv1a64(std::string_view data);
std::string version_string();

struct BuiltinExperiment {
    std::string name;
    std::string description;
    nlohmann::json config;
};

const std::vector<BuiltinExperiment>& list_builtin_experiments();

}  // namespace sptel
