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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sptel/error_spec.hpp"
#include "sptel/graph.hpp"
#include "sptel/paths.hpp"
#include "sptel/state.hpp"

namespace sptel {

/// |phi> = cos(polar/2)|0> + e^{i azimuth} sin(polar/2)|1>.
struct InputState {
    double polar = 0.0;
    double azimuth = 0.0;

    std::array<cplx, 2> amplitudes() const;
    std::array<double, 3> bloch() const;
    /// `polar:a,b`, `azimuth:b` (equator), or one of `0`, `1`, `+`, `-`, `+i`, `-i`.
    static InputState parse(std::string_view text);
    std::string str() const;
};

enum class OutputFixup { Identity, Hadamard };
std::string to_string(OutputFixup f);

/// Output-frame byproduct U = Z^z X^x with
/// z = z_offset + sum of outcomes on z_exponent_vertices (mod 2), likewise x.
/// The teleported output is |out> = fixup * U * |phi>.
struct ByproductOperator {
    std::string path_id;
    std::vector<int> z_exponent_vertices;
    std::vector<int> x_exponent_vertices;
    int z_offset = 0;
    int x_offset = 0;
    OutputFixup fixup = OutputFixup::Identity;

    /// Exponents (z, x) for a measurement record.
    std::pair<int, int> evaluate(const MeasurementRecord& rec) const;
    /// fixup^dagger * U^dagger: maps the measured output back onto the input state.
    Mat2 correction(const MeasurementRecord& rec) const;
};

/// Derived from the path's symmetry pair; throws UnknownElementError for an
/// unknown path and std::invalid_argument when the path strings are not
/// compatible with the graph's measurement bases.
ByproductOperator byproduct_for_path(const GraphSpec& g, std::string_view path_id);

enum class ChannelClass { Quantum, Classical, Random };
std::string to_string(ChannelClass c);
/// Quantum iff F > 2/3; Random within 0.05 of 1/2; Classical otherwise.
ChannelClass classify_channel(double fidelity);

struct TeleportResult {
    MeasurementRecord record;
    std::string path_id;
    std::array<cplx, 4> corrected_output{};  // 2x2 density matrix, row-major
    double fidelity = 0.0;                   // overlap with the input for this shot
    int success = 0;                         // outcome of measuring the output in the input basis
};

struct TeleportRun {
    std::vector<TeleportResult> shots;
    double fidelity = 0.0;  // fraction of successful input-basis measurements
    double stderr_ = 0.0;
    ChannelClass channel = ChannelClass::Random;
};

enum class SamplingMode {
    Joint,       // draw the full outcome pattern from the exact branch distribution
    Sequential,  // measure vertex by vertex on a copy of the state
};

struct TeleportOptions {
    std::size_t shots = 1000;
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::Joint;
    bool keep_shots = true;
};

/// Resource circuit with the input vertex prepared in `input` instead of |+>.
GateList teleport_circuit(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input);
/// Measurement plan covering every non-output vertex with its graph basis.
std::vector<PlannedMeasurement> measurement_plan(const GraphSpec& g);

TeleportRun run_teleport(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input,
                         std::string_view path_id, const TeleportOptions& options);

/// Branch-averaged fidelity of the corrected output; density-matrix engine when
/// the errors include depolarizing noise.
double fidelity_exact(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input,
                      std::string_view path_id);

/// Branch-averaged corrected output density matrix.
std::array<cplx, 4> average_output(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input,
                                   std::string_view path_id);

struct TomographyResult {
    std::array<double, 3> bloch{};  // reconstructed (<X>, <Y>, <Z>)
    std::array<cplx, 4> rho{};
    double fidelity = 0.0;  // Tr(rho_in rho_m)
    bool clipped = false;   // raw Bloch vector fell outside the unit ball
};

/// Estimates the corrected output by measuring it `shots_per_basis` times in each of X, Y, Z.
TomographyResult tomography_teleport(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input,
                                     std::string_view path_id, std::size_t shots_per_basis, std::uint64_t seed);

/// Bloch-vector reconstruction shared with the tests; clips into the unit ball.
TomographyResult reconstruct_from_bloch(std::array<double, 3> r, const InputState& input);

}  // namespace sptel
