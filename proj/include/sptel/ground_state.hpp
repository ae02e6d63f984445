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
#include <string>
#include <string_view>
#include <vector>

#include "sptel/graph.hpp"
#include "sptel/pauli.hpp"
#include "sptel/state.hpp"
#include "sptel/teleport.hpp"

namespace sptel {

/// Real-coefficient sum of Pauli strings, applied matrix-free.
class PauliSum {
  public:
    explicit PauliSum(std::size_t num_qubits) : n_(num_qubits) {}
    void add(double coeff, const PauliString& p);
    std::size_t num_qubits() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    /// out = H * in (out is overwritten).
    void apply(const cplx* in, cplx* out) const;
    double expectation(const StateVector& psi) const;

  private:
    struct Term {
        cplx coeff;  // includes i^(k + #Y)
        std::uint64_t xmask;
        std::uint64_t zmask;
    };
    std::size_t n_;
    std::vector<Term> terms_;
};

enum class HamiltonianFamily { HY, HZ, HZLower };
std::string to_string(HamiltonianFamily f);
HamiltonianFamily hamiltonian_family_from_string(std::string_view s);

/// Perturbed hourglass resource Hamiltonian on L = rows*n + 2 qubits (m, bulk, O):
/// -cos(alpha) sum K_j - sin(alpha) sum of Y (HY), Z (HZ) or lower-row Z (HZLower) on bulk sites.
struct HamiltonianSpec {
    HamiltonianFamily family = HamiltonianFamily::HY;
    int n = 2;
    int rows = 2;
    double alpha = 0.0;
    std::size_t num_qubits() const { return static_cast<std::size_t>(rows * n + 2); }
};

PauliSum build_hamiltonian(const HamiltonianSpec& spec);
/// The perturbation terms alone (unit coefficients), for symmetry certificates.
std::vector<PauliString> perturbation_terms(const HamiltonianSpec& spec);

struct LanczosOptions {
    std::size_t krylov_dim = 120;
    std::size_t max_restarts = 60;
    double tol = 1e-8;             // residual ||H psi - E psi||
    double degeneracy_gap = 1e-10;
    bool compute_gap = true;
    std::uint64_t seed = 12345;
    std::size_t dense_cutoff = 256;  // below this dimension use dense diagonalisation
};

struct GroundState {
    StateVector psi{0};
    double energy = 0.0;
    double residual = 0.0;
    double gap = 0.0;  // E1 - E0 when computed, else NaN
    bool converged = false;
    bool degenerate = false;
    std::size_t matvecs = 0;
};

/// Lowest eigenpair by restarted Lanczos with full reorthogonalisation.
GroundState lowest_eigenpair(const PauliSum& h, const LanczosOptions& options = {});
GroundState ground_state(const HamiltonianSpec& spec, const LanczosOptions& options = {});

struct GslabOutcome {
    double success_frequency = 0.0;  // sampled
    double success_exact = 0.0;      // branch-averaged
    std::size_t shots = 0;
};

/// Attaches an equatorial input (azimuth phi) to the resource, entangles it with m by CZ,
/// measures everything but the output in the graph bases, then rotates the output
/// about Z by (-1)^(1+l_rot) phi, applies H, measures, and flips the bit when l_flip is odd.
/// l_rot and l_flip are the X and Z byproduct exponents of `path`. Success iff the bit is 0.
GslabOutcome teleport_through_ground_state(const HamiltonianSpec& spec, const StateVector& resource, double phi,
                                           std::string_view path, std::size_t shots, std::uint64_t seed);

/// For a general input on the Bloch sphere: branch-averaged overlap of the
/// corrected output with the input.
double ground_state_fidelity(const HamiltonianSpec& spec, const StateVector& resource, const InputState& input,
                             std::string_view path);

enum class InputSampling { XYPlane, BlochSphere };

struct SweepRow {
    HamiltonianFamily family;
    double alpha = 0.0;
    int n = 0;
    std::size_t num_qubits = 0;  // N = L + 1 including the input
    std::string path;
    std::size_t inputs = 0;
    std::size_t shots = 0;
    double mean_success = 0.0;
    double stderr_ = 0.0;
    double mean_exact = 0.0;
    bool degenerate = false;
    double energy = 0.0;
};

struct SweepOptions {
    std::vector<std::string> paths{"upper", "lower"};
    std::size_t inputs = 25;
    std::size_t shots = 100;
    std::uint64_t seed = 7;
    InputSampling sampling = InputSampling::XYPlane;
    int rows = 2;
};

std::vector<SweepRow> fidelity_vs_alpha_sweep(HamiltonianFamily family, const std::vector<double>& alphas,
                                              const std::vector<int>& ns, const SweepOptions& options);

/// Builds the full graph-plus-input state: |input> (x) resource, then CZ(I, m).
StateVector attach_input(const StateVector& resource, const std::array<cplx, 2>& input);

}  // namespace sptel
