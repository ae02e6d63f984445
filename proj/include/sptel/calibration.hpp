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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sptel/error_spec.hpp"
#include "sptel/graph.hpp"
#include "sptel/teleport.hpp"

namespace sptel {

struct CalibrationOptions {
    std::vector<InputState> known_states{InputState{0.0, 0.0}, InputState::parse("+")};
    std::size_t shots = 200;  // per known state per path
    std::uint64_t seed = 0;
    /// Use branch-averaged fidelities instead of sampled estimates.
    bool exact = false;
};

struct PathScore {
    std::string path_id;
    std::string label;
    std::vector<double> per_state;  // one estimate per known state
    double fidelity = 0.0;          // unweighted mean over the known states
    double stderr_ = 0.0;
};

struct CalibrationResult {
    std::vector<PathScore> table;  // sorted by path id
    std::string chosen;            // path id, or "unprotected"
    bool unprotected = false;
};

/// Teleports each known state along every named path and keeps the best one.
/// Ties go to the lexicographically first path id; when every path scores
/// below 2/3 the result is "unprotected".
CalibrationResult calibrate_path(const GraphSpec& g, std::span<const ErrorSpec> errors,
                                 const CalibrationOptions& options = {});

struct RowVote {
    std::string path_id;
    int e_z = 0;  // input-frame byproduct exponents for this row's recipe
    int e_x = 0;
};

struct MajorityVoteResult {
    MeasurementRecord record;
    std::vector<RowVote> votes;  // row0, row1, row2
    std::optional<int> majority_row;    // a row that agrees with the majority frame
    std::optional<std::string> flagged; // dissenting row path, if exactly one dissents
    bool all_disagree = false;
    int e_z = 0;  // majority frame
    int e_x = 0;
    double fidelity = 0.0;  // output corrected with the majority frame vs the input
};

/// One shot on a 3-row hourglass: every row recipe reads the same record and
/// the majority frame decides the correction.
MajorityVoteResult majority_vote_teleport(const GraphSpec& g3, std::span<const ErrorSpec> errors,
                                          const InputState& input, std::uint64_t seed);

/// Same decision rule applied to every branch; returns the total probability of
/// branches in which `corrupted_row` is the one flagged.
double majority_vote_detection_rate(const GraphSpec& g3, std::span<const ErrorSpec> errors, const InputState& input,
                                    std::string_view corrupted_row);

}  // namespace sptel
