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
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sptel/graph.hpp"
#include "sptel/kernels.hpp"
#include "sptel/pauli.hpp"
#include "sptel/rng.hpp"

namespace sptel {

inline constexpr std::size_t kMaxStateQubits = 16;
inline constexpr std::size_t kMaxDensityQubits = 10;

using Mat2 = std::array<cplx, 4>;  // row-major

namespace gates {
Mat2 hadamard();
Mat2 rz(double gamma);  // e^{-i gamma Z / 2}
Mat2 rx(double alpha);  // e^{-i alpha X / 2}
Mat2 ry(double beta);   // e^{-i beta Y / 2}
Mat2 pauli(Letter l);
Mat2 mul(const Mat2& a, const Mat2& b);
Mat2 adjoint(const Mat2& a);
/// Unitary taking the eigenbasis of the measured operator onto Z (H for X, H S^dagger for Y).
Mat2 to_z_basis(MeasureBasis b);
}  // namespace gates

/// Pure state over num_qubits; qubit q lives at basis bit (num_qubits - 1 - q).
class StateVector {
  public:
    explicit StateVector(std::size_t num_qubits);  // |0...0>
    static StateVector from_amplitudes(std::vector<cplx> amps);

    std::size_t num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }
    unsigned bit(std::size_t q) const { return static_cast<unsigned>(n_ - 1 - q); }

    void apply_1q(std::size_t q, const Mat2& m);
    /// e^{-i phi Z_a Z_b}
    void apply_zz(std::size_t a, std::size_t b, double phi);
    /// Multiplies by the Pauli operator including its phase.
    void apply_pauli(const PauliString& p);

    double norm() const;
    void normalize();

    bool consumed(std::size_t q) const { return consumed_.at(q); }
    void mark_consumed(std::size_t q) { consumed_.at(q) = true; }

  private:
    std::size_t n_;
    std::vector<cplx> amps_;
    std::vector<bool> consumed_;
};

/// Mixed state stored row-major as a 4^n vector: element (r, c) at r * 2^n + c.
class DensityMatrix {
  public:
    explicit DensityMatrix(std::size_t num_qubits);  // |0...0><0...0|
    explicit DensityMatrix(const StateVector& psi);
    static DensityMatrix from_matrix(std::size_t num_qubits, std::vector<cplx> elements);

    std::size_t num_qubits() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    cplx operator()(std::size_t r, std::size_t c) const { return data_[r * dim() + c]; }
    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }
    unsigned bit(std::size_t q) const { return static_cast<unsigned>(n_ - 1 - q); }

    void apply_1q(std::size_t q, const Mat2& m);
    void apply_zz(std::size_t a, std::size_t b, double phi);
    /// rho -> (1 - 15p/16) rho + (p/16) sum over the 15 non-identity Pauli pairs P rho P.
    void apply_depolarizing_2q(std::size_t a, std::size_t b, double p);
    void apply_pauli_conjugation(const PauliString& p);  // rho -> P rho P^dagger

    cplx trace() const;
    double hermiticity_error() const;
    double purity() const;

    bool consumed(std::size_t q) const { return consumed_.at(q); }
    void mark_consumed(std::size_t q) { consumed_.at(q) = true; }

  private:
    std::size_t n_;
    std::vector<cplx> data_;
    std::vector<bool> consumed_;
};

void apply_gate(StateVector& psi, const Gate& g);
void apply_gate(DensityMatrix& rho, const Gate& g);
/// Runs the gate list from |0...0>. Throws CapacityError beyond the caps and
/// std::invalid_argument for depolarizing gates on a pure state.
StateVector prepare_state(const GateList& gl);
DensityMatrix prepare_density(const GateList& gl);
bool has_mixed_gates(const GateList& gl);

struct MeasurementRecord {
    std::map<int, int> outcomes;  // site id -> bit (0 = +1 eigenvalue)
    std::map<int, MeasureBasis> bases;
    double probability = 1.0;
};

/// Born-rule measurement of qubit q; collapses and renormalises. The qubit is
/// left in the measured eigenstate and marked consumed.
int measure(StateVector& psi, std::size_t q, MeasureBasis basis, Rng& rng);
int measure(DensityMatrix& rho, std::size_t q, MeasureBasis basis, Rng& rng);
/// Projects onto a given outcome; returns its probability (state untouched when it is 0).
double project_outcome(StateVector& psi, std::size_t q, MeasureBasis basis, int bit);
double project_outcome(DensityMatrix& rho, std::size_t q, MeasureBasis basis, int bit);

struct PlannedMeasurement {
    int site = 0;           // label stored in the record (vertex id)
    std::size_t qubit = 0;  // tensor position
    MeasureBasis basis = MeasureBasis::X;
};

struct Branch {
    MeasurementRecord record;
    /// Normalised conditional state of the unmeasured qubits (ascending positions).
    std::vector<cplx> output;
};

struct MixedBranch {
    MeasurementRecord record;
    /// Normalised conditional density matrix of the unmeasured qubits, row-major.
    std::vector<cplx> output;
};

/// Every outcome pattern of `plan` with exact probability. Zero-probability
/// branches are kept with an empty output.
std::vector<Branch> enumerate_branches(const StateVector& psi, std::span<const PlannedMeasurement> plan);
std::vector<MixedBranch> enumerate_branches(const DensityMatrix& rho, std::span<const PlannedMeasurement> plan);

/// Reduced density matrix on `keep` (ascending tensor positions in the result).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix reduced_density(const StateVector& psi, std::span<const std::size_t> keep);

/// <psi|P|psi> for Hermitian P; throws std::invalid_argument on a +-i phase.
double expectation(const StateVector& psi, const PauliString& p);
double expectation(const DensityMatrix& rho, const PauliString& p);

}  // namespace sptel
