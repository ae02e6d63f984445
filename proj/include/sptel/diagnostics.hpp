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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sptel/graph.hpp"
#include "sptel/pauli.hpp"
#include "sptel/state.hpp"

namespace sptel {

struct EntanglementSpectrum {
    std::vector<std::size_t> region_a;  // tensor positions
    std::vector<double> eigenvalues;    // descending, length 2^|A|
    /// Index groups of the nonzero eigenvalues that agree within the tolerance.
    std::vector<std::vector<std::size_t>> degeneracy_classes;
    std::vector<double> nonzero(double cutoff = 1e-12) const;
};

/// Spectrum of Tr_B |psi><psi| for region A. Eigenvalues within rel_tol * max(a, b)
/// share a class; eigenvalues below 1e-12 are treated as zero and not classed.
EntanglementSpectrum entanglement_spectrum(const StateVector& psi, std::span<const std::size_t> region_a,
                                           double rel_tol = 1e-8);
EntanglementSpectrum entanglement_spectrum(const GraphSpec& g, const StateVector& psi,
                                           std::span<const int> region_a_vertices, double rel_tol = 1e-8);

struct ReducedSymmetry {
    PauliString full;
    PauliString reduced;  // on |A| qubits, phase dropped
    double commutator_norm = 0.0;  // ||[rho_A, reduced]||_F
};

struct ReducedSymmetryReport {
    std::vector<ReducedSymmetry> symmetries;
    /// Index pairs of reduced strings that anticommute while both commute with rho_A.
    std::vector<std::pair<std::size_t, std::size_t>> anticommuting_pairs;
    bool forces_degeneracy() const { return !anticommuting_pairs.empty(); }
};

ReducedSymmetryReport reduced_symmetry_check(const StateVector& psi, std::span<const std::size_t> region_a,
                                             std::span<const PauliString> strings, double commute_tol = 1e-8);

/// String order parameter on an hourglass resource (the graph without its input
/// vertex, L = 2n+2 qubits ordered m, bulk, O).
struct SopOperator {
    PauliString printed;   // Z pair at column l-1, Y on columns L/2-2r, X on the output
    PauliString used;      // stabilizer product actually evaluated
    bool repaired = false; // printed form was not a product of resource stabilizers
    int l = 0;
    std::string note;
};

SopOperator sop_operator(int n, int rows, int L, int row);
double string_order_parameter(const StateVector& resource, const SopOperator& op);
double string_order_parameter(const StateVector& resource, int n, int rows, int L, int row);

/// Resource stabilizers: hourglass stabilizers with the input vertex removed,
/// on L = N - 1 qubits.
std::vector<PauliString> resource_stabilizers(const GraphSpec& hourglass);
/// Whether `op` equals, including sign, a product of the given resource stabilizers
/// (each of which has its only X/Y letter on its own site).
bool is_stabilizer_product(const PauliString& op, std::span<const PauliString> stabs);

}  // namespace sptel
