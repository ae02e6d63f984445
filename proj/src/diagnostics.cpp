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

#include "sptel/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "sptel/errors.hpp"
#include "sptel/symmetry.hpp"

namespace sptel {

namespace {

Eigen::MatrixXcd to_eigen(const DensityMatrix& rho) {
    const auto d = static_cast<Eigen::Index>(rho.dim());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
            m(r, c) = rho(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    return m;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
    const std::size_t d = std::size_t{1} << p.num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    const cplx phase = std::pow(cplx{0, 1}, static_cast<int>((p.log_i() + p.y_count()) % 4));
    const auto xm = p.x_mask(), zm = p.z_mask();
    for (std::size_t c = 0; c < d; ++c) {
        const double s = (std::popcount(c & zm) & 1) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(c ^ xm), static_cast<Eigen::Index>(c)) = phase * s;
    }
    return m;
}

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> qs, std::size_t n) {
    std::vector<std::size_t> v(qs.begin(), qs.end());
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw std::invalid_argument("region has repeated qubits");
    for (auto q : v)
        if (q >= n) throw std::out_of_range("region qubit out of range");
    return v;
}

}  // namespace

std::vector<double> EntanglementSpectrum::nonzero(double cutoff) const {
    std::vector<double> out;
    for (double x : eigenvalues)
        if (x > cutoff) out.push_back(x);
    return out;
}

EntanglementSpectrum entanglement_spectrum(const StateVector& psi, std::span<const std::size_t> region_a,
                                           double rel_tol) {
    const std::size_t n = psi.num_qubits();
    const auto a = sorted_unique(region_a, n);
    if (a.empty() || a.size() == n) throw std::invalid_argument("entanglement cut must be a proper nonempty subset");
    std::vector<std::size_t> b;
    for (std::size_t q = 0; q < n; ++q)
        if (!std::binary_search(a.begin(), a.end(), q)) b.push_back(q);

    // Nonzero spectra of rho_A and rho_B coincide; diagonalise the smaller one.
    const auto& small = a.size() <= b.size() ? a : b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(reduced_density(psi, small)),
                                                      Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    ev.resize(std::size_t{1} << a.size(), 0.0);

    EntanglementSpectrum spec;
    spec.region_a = a;
    spec.eigenvalues = ev;
    for (std::size_t i = 0; i < ev.size() && ev[i] > 1e-12;) {
        std::vector<std::size_t> cls{i};
        std::size_t j = i + 1;
        while (j < ev.size() && ev[j] > 1e-12 && ev[i] - ev[j] <= rel_tol * ev[i]) cls.push_back(j++);
        spec.degeneracy_classes.push_back(std::move(cls));
        i = j;
    }
    return spec;
}

EntanglementSpectrum entanglement_spectrum(const GraphSpec& g, const StateVector& psi,
                                           std::span<const int> region_a_vertices, double rel_tol) {
    std::vector<std::size_t> qs;
    for (int v : region_a_vertices) qs.push_back(g.position(v));
    return entanglement_spectrum(psi, qs, rel_tol);
}

ReducedSymmetryReport reduced_symmetry_check(const StateVector& psi, std::span<const std::size_t> region_a,
                                             std::span<const PauliString> strings, double commute_tol) {
    const auto a = sorted_unique(region_a, psi.num_qubits());
    if (a.empty()) throw std::invalid_argument("reduced symmetry check needs a nonempty region");
    const Eigen::MatrixXcd rho = to_eigen(reduced_density(psi, a));
    ReducedSymmetryReport rep;
    for (const auto& s : strings) {
        if (s.num_qubits() != psi.num_qubits()) throw DimensionError("symmetry string size does not match the state");
        ReducedSymmetry rs;
        rs.full = s;
        rs.reduced = PauliString(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) rs.reduced.set_letter(j, s.letter(a[j]));
        const Eigen::MatrixXcd p = pauli_matrix(rs.reduced);
        rs.commutator_norm = (rho * p - p * rho).norm();
        rep.symmetries.push_back(std::move(rs));
    }
    for (std::size_t i = 0; i < rep.symmetries.size(); ++i)
        for (std::size_t j = i + 1; j < rep.symmetries.size(); ++j) {
            const auto& si = rep.symmetries[i];
            const auto& sj = rep.symmetries[j];
            if (si.commutator_norm < commute_tol && sj.commutator_norm < commute_tol &&
                !commutes(si.reduced, sj.reduced))
                rep.anticommuting_pairs.emplace_back(i, j);
        }
    return rep;
}

std::vector<PauliString> resource_stabilizers(const GraphSpec& hourglass) {
    const std::size_t in = hourglass.position(hourglass.input_id());
    if (in != 0) throw std::invalid_argument("resource layout expects the input at position 0");
    std::vector<PauliString> out;
    const std::size_t L = hourglass.num_qubits() - 1;
    for (std::size_t q = 1; q < hourglass.num_qubits(); ++q) {
        const PauliString k = stabilizer_for_vertex(hourglass, hourglass.id_at(q));
        PauliString r(L);
        for (std::size_t j = 0; j < L; ++j) r.set_letter(j, k.letter(j + 1));
        out.push_back(std::move(r));
    }
    return out;
}

bool is_stabilizer_product(const PauliString& op, std::span<const PauliString> stabs) {
    if (stabs.empty()) return op.is_identity() && op.log_i() == 0;
    PauliString prod(op.num_qubits());
    for (std::size_t j = 0; j < op.num_qubits(); ++j)
        if (static_cast<unsigned>(op.letter(j)) & 1u) prod *= stabs[j];
    return prod == op;
}

SopOperator sop_operator(int n, int rows, int L, int row) {
    if (L != 2 * n + 2) throw std::invalid_argument("SOP length L must equal 2n+2 for the hourglass resource");
    if (row < 0 || row >= rows) throw std::invalid_argument("SOP row out of range");
    const GraphSpec g = build_hourglass(n, rows);
    const auto stabs = resource_stabilizers(g);
    const std::size_t len = static_cast<std::size_t>(L);
    auto rpos = [&](int id) { return g.position(id) - 1; };

    SopOperator op;
    op.l = L / 2 - 2 * (L / 8);
    op.printed = PauliString(len);
    std::string skipped;
    if (op.l - 1 >= 1 && op.l - 1 <= n) {
        for (int k = 0; k < rows; ++k) op.printed.set_letter(rpos(hourglass_vertex(n, rows, op.l - 1, k)), Letter::Z);
    } else {
        skipped += " Z-pair column " + std::to_string(op.l - 1);
    }
    for (int r = L / 8; 4 * r < L; ++r) {
        const int col = L / 2 - 2 * r;
        if (col >= 1 && col <= n)
            op.printed.set_letter(rpos(hourglass_vertex(n, rows, col, row)), Letter::Y);
        else
            skipped += " Y column " + std::to_string(col);
    }
    op.printed.set_letter(rpos(g.output_id()), Letter::X);

    if (is_stabilizer_product(op.printed, stabs) && skipped.empty()) {
        op.used = op.printed;
        return op;
    }
    // Nearest stabilizer product that keeps the Z pair at l-1 and the X on the
    // output: stabilizers of columns l, l+2, ..., n-1 along `row`, then the output.
    op.used = stabs[rpos(g.output_id())];
    for (int col = op.l; col <= n - 1; col += 2) op.used *= stabs[rpos(hourglass_vertex(n, rows, col, row))];
    op.repaired = true;
    op.note = "printed string " + op.printed.str() + " is not a stabilizer product";
    if (!skipped.empty()) op.note += " (outside the lattice:" + skipped + ")";
    op.note += "; evaluating " + op.used.str();
    return op;
}

double string_order_parameter(const StateVector& resource, const SopOperator& op) {
    return expectation(resource, op.used);
}

double string_order_parameter(const StateVector& resource, int n, int rows, int L, int row) {
    if (resource.num_qubits() != static_cast<std::size_t>(L))
        throw DimensionError("resource has " + std::to_string(resource.num_qubits()) + " qubits, SOP expects L=" +
                             std::to_string(L));
    return string_order_parameter(resource, sop_operator(n, rows, L, row));
}

}  // namespace sptel
