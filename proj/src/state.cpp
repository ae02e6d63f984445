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

#include "sptel/state.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sptel/errors.hpp"

namespace sptel {

namespace gates {

Mat2 hadamard() {
    const double s = std::numbers::sqrt2 / 2;
    return {cplx{s}, cplx{s}, cplx{s}, cplx{-s}};
}

Mat2 rz(double gamma) { return {std::polar(1.0, -gamma / 2), 0.0, 0.0, std::polar(1.0, gamma / 2)}; }

Mat2 rx(double alpha) {
    const double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
    return {cplx{c}, cplx{0, -s}, cplx{0, -s}, cplx{c}};
}

Mat2 ry(double beta) {
    const double c = std::cos(beta / 2), s = std::sin(beta / 2);
    return {cplx{c}, cplx{-s}, cplx{s}, cplx{c}};
}

Mat2 pauli(Letter l) {
    switch (l) {
        case Letter::I: return {1.0, 0.0, 0.0, 1.0};
        case Letter::X: return {0.0, 1.0, 1.0, 0.0};
        case Letter::Y: return {0.0, cplx{0, -1}, cplx{0, 1}, 0.0};
        case Letter::Z: return {1.0, 0.0, 0.0, -1.0};
    }
    return {};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Mat2 adjoint(const Mat2& a) { return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}; }

Mat2 to_z_basis(MeasureBasis b) {
    switch (b) {
        case MeasureBasis::X: return hadamard();
        case MeasureBasis::Y:
        case MeasureBasis::MinusY: return mul(hadamard(), Mat2{1.0, 0.0, 0.0, cplx{0, -1}});
        case MeasureBasis::Z: return pauli(Letter::I);
        case MeasureBasis::None: break;
    }
    throw std::invalid_argument("no measurement basis given");
}

}  // namespace gates

namespace {

void check_qubit(std::size_t q, std::size_t n) {
    if (q >= n) throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n));
}

Mat2 conj(const Mat2& m) { return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])}; }

int flip_for(MeasureBasis b) { return b == MeasureBasis::MinusY ? 1 : 0; }

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : n_(num_qubits), consumed_(num_qubits, false) {
    if (num_qubits > kMaxStateQubits)
        throw CapacityError("statevector simulation is limited to " + std::to_string(kMaxStateQubits) +
                            " qubits, requested " + std::to_string(num_qubits));
    amps_.assign(std::size_t{1} << n_, cplx{});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size()))
        throw DimensionError("amplitude count must be a power of two");
    StateVector s(static_cast<std::size_t>(std::countr_zero(amps.size())));
    s.amps_ = std::move(amps);
    return s;
}

void StateVector::apply_1q(std::size_t q, const Mat2& m) {
    check_qubit(q, n_);
    kernels().apply_1q(amps_.data(), amps_.size(), bit(q), m.data());
}

void StateVector::apply_zz(std::size_t a, std::size_t b, double phi) {
    check_qubit(a, n_);
    check_qubit(b, n_);
    if (a == b) throw std::invalid_argument("ZZ rotation needs two distinct qubits");
    const std::uint64_t mask = (std::uint64_t{1} << bit(a)) | (std::uint64_t{1} << bit(b));
    kernels().apply_parity_phase(amps_.data(), amps_.size(), mask, std::polar(1.0, -phi), std::polar(1.0, phi));
}

void StateVector::apply_pauli(const PauliString& p) {
    if (p.num_qubits() != n_) throw DimensionError("Pauli string size does not match the state");
    std::vector<cplx> out(amps_.size(), cplx{});
    const cplx phase = std::pow(cplx{0, 1}, static_cast<int>((p.log_i() + p.y_count()) % 4));
    kernels().pauli_accumulate(out.data(), amps_.data(), amps_.size(), p.x_mask(), p.z_mask(), phase);
    amps_ = std::move(out);
}

double StateVector::norm() const { return std::sqrt(kernels().dot(amps_.data(), amps_.data(), amps_.size()).real()); }

void StateVector::normalize() {
    const double nrm = norm();
    if (nrm == 0.0) throw std::domain_error("cannot normalise a zero state");
    for (auto& a : amps_) a /= nrm;
}

DensityMatrix::DensityMatrix(std::size_t num_qubits) : n_(num_qubits), consumed_(num_qubits, false) {
    if (num_qubits > kMaxDensityQubits)
        throw CapacityError("density-matrix simulation is limited to " + std::to_string(kMaxDensityQubits) +
                            " qubits, requested " + std::to_string(num_qubits));
    data_.assign(std::size_t{1} << (2 * n_), cplx{});
    data_[0] = 1.0;
}

DensityMatrix::DensityMatrix(const StateVector& psi) : DensityMatrix(psi.num_qubits()) {
    const auto& a = psi.amplitudes();
    const std::size_t d = a.size();
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) data_[r * d + c] = a[r] * std::conj(a[c]);
    for (std::size_t q = 0; q < n_; ++q)
        if (psi.consumed(q)) consumed_[q] = true;
}

DensityMatrix DensityMatrix::from_matrix(std::size_t num_qubits, std::vector<cplx> elements) {
    DensityMatrix rho(num_qubits);
    if (elements.size() != rho.data_.size()) throw DimensionError("density matrix needs 4^n elements");
    rho.data_ = std::move(elements);
    return rho;
}

void DensityMatrix::apply_1q(std::size_t q, const Mat2& m) {
    check_qubit(q, n_);
    const Mat2 mc = conj(m);
    kernels().apply_1q(data_.data(), data_.size(), static_cast<unsigned>(n_) + bit(q), m.data());
    kernels().apply_1q(data_.data(), data_.size(), bit(q), mc.data());
}

void DensityMatrix::apply_zz(std::size_t a, std::size_t b, double phi) {
    check_qubit(a, n_);
    check_qubit(b, n_);
    if (a == b) throw std::invalid_argument("ZZ rotation needs two distinct qubits");
    const std::uint64_t col = (std::uint64_t{1} << bit(a)) | (std::uint64_t{1} << bit(b));
    const std::uint64_t row = col << n_;
    kernels().apply_parity_phase(data_.data(), data_.size(), row, std::polar(1.0, -phi), std::polar(1.0, phi));
    kernels().apply_parity_phase(data_.data(), data_.size(), col, std::polar(1.0, phi), std::polar(1.0, -phi));
}

void DensityMatrix::apply_pauli_conjugation(const PauliString& p) {
    if (p.num_qubits() != n_) throw DimensionError("Pauli string size does not match the state");
    // Row side picks up i^(k+#Y), column side its conjugate, so no net phase.
    const std::uint64_t xm = (p.x_mask() << n_) | p.x_mask();
    const std::uint64_t zm = (p.z_mask() << n_) | p.z_mask();
    std::vector<cplx> out(data_.size(), cplx{});
    kernels().pauli_accumulate(out.data(), data_.data(), data_.size(), xm, zm, 1.0);
    data_ = std::move(out);
}

void DensityMatrix::apply_depolarizing_2q(std::size_t a, std::size_t b, double p) {
    check_qubit(a, n_);
    check_qubit(b, n_);
    if (a == b) throw std::invalid_argument("depolarizing channel needs two distinct qubits");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing probability outside [0,1]");
    if (p == 0.0) return;
    std::vector<cplx> out(data_.size());
    const double keep = 1.0 - 15.0 * p / 16.0;
    for (std::size_t i = 0; i < data_.size(); ++i) out[i] = keep * data_[i];
    const auto& k = kernels();
    for (int la = 0; la < 4; ++la) {
        for (int lb = 0; lb < 4; ++lb) {
            if (la == 0 && lb == 0) continue;
            PauliString ps(n_);
            ps.set_letter(a, static_cast<Letter>(la));
            ps.set_letter(b, static_cast<Letter>(lb));
            const std::uint64_t xm = (ps.x_mask() << n_) | ps.x_mask();
            const std::uint64_t zm = (ps.z_mask() << n_) | ps.z_mask();
            k.pauli_accumulate(out.data(), data_.data(), data_.size(), xm, zm, p / 16.0);
        }
    }
    data_ = std::move(out);
}

cplx DensityMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t r = 0; r < dim(); ++r) t += (*this)(r, r);
    return t;
}

double DensityMatrix::hermiticity_error() const {
    double err = 0.0;
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t c = r; c < dim(); ++c) err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return err;
}

double DensityMatrix::purity() const {
    double s = 0.0;
    for (const auto& x : data_) s += std::norm(x);
    return s;
}

namespace {

template <typename State>
void apply_gate_impl(State& s, const Gate& g) {
    switch (g.kind) {
        case GateKind::InitPlus:
        case GateKind::Hadamard: s.apply_1q(g.q0, gates::hadamard()); break;
        case GateKind::Rz: s.apply_1q(g.q0, gates::rz(g.angle)); break;
        case GateKind::Rx: s.apply_1q(g.q0, gates::rx(g.angle)); break;
        case GateKind::Ry: s.apply_1q(g.q0, gates::ry(g.angle)); break;
        case GateKind::Ising: s.apply_zz(g.q0, g.q1, std::numbers::pi / 4 + g.angle); break;
        case GateKind::ZZ: s.apply_zz(g.q0, g.q1, g.angle); break;
        case GateKind::Depolarize2q:
            if constexpr (std::is_same_v<State, DensityMatrix>)
                s.apply_depolarizing_2q(g.q0, g.q1, g.angle);
            else
                throw std::invalid_argument("depolarizing noise needs the density-matrix engine");
            break;
    }
}

}  // namespace

void apply_gate(StateVector& psi, const Gate& g) { apply_gate_impl(psi, g); }
void apply_gate(DensityMatrix& rho, const Gate& g) { apply_gate_impl(rho, g); }

bool has_mixed_gates(const GateList& gl) {
    for (const auto& g : gl.ops)
        if (g.kind == GateKind::Depolarize2q) return true;
    return false;
}

StateVector prepare_state(const GateList& gl) {
    StateVector psi(gl.num_qubits);
    for (const auto& g : gl.ops) apply_gate(psi, g);
    return psi;
}

DensityMatrix prepare_density(const GateList& gl) {
    DensityMatrix rho(gl.num_qubits);
    for (const auto& g : gl.ops) apply_gate(rho, g);
    return rho;
}

namespace {

void check_measurable(std::size_t q, std::size_t n, bool consumed) {
    check_qubit(q, n);
    if (consumed) throw std::logic_error("qubit " + std::to_string(q) + " was already measured");
}

// Probability of Z-bit 1 after rotation on each representation.
double prob_one(const StateVector& s, std::size_t q) {
    return kernels().prob_one(s.amplitudes().data(), s.dim(), s.bit(q));
}

double prob_one(const DensityMatrix& r, std::size_t q) {
    double p = 0.0;
    const std::size_t m = std::size_t{1} << r.bit(q);
    for (std::size_t i = 0; i < r.dim(); ++i)
        if (i & m) p += r(i, i).real();
    return p;
}

void collapse(StateVector& s, std::size_t q, int zbit, double p) {
    kernels().project(s.amplitudes().data(), s.dim(), s.bit(q), static_cast<unsigned>(zbit), 1.0 / std::sqrt(p));
}

void collapse(DensityMatrix& r, std::size_t q, int zbit, double p) {
    const auto& k = kernels();
    const auto n = static_cast<unsigned>(r.num_qubits());
    k.project(r.data().data(), r.data().size(), n + r.bit(q), static_cast<unsigned>(zbit), 1.0);
    k.project(r.data().data(), r.data().size(), r.bit(q), static_cast<unsigned>(zbit), 1.0 / p);
}

template <typename State>
double project_impl(State& s, std::size_t q, MeasureBasis basis, int bit) {
    check_measurable(q, s.num_qubits(), s.consumed(q));
    if (bit != 0 && bit != 1) throw std::invalid_argument("outcome bit must be 0 or 1");
    const Mat2 u = gates::to_z_basis(basis);
    const int zbit = bit ^ flip_for(basis);
    s.apply_1q(q, u);
    const double p1 = prob_one(s, q);
    const double p = zbit ? p1 : 1.0 - p1;
    if (p > 0.0) {
        collapse(s, q, zbit, p);
        s.mark_consumed(q);
    }
    s.apply_1q(q, gates::adjoint(u));
    return std::clamp(p, 0.0, 1.0);
}

template <typename State>
int measure_impl(State& s, std::size_t q, MeasureBasis basis, Rng& rng) {
    check_measurable(q, s.num_qubits(), s.consumed(q));
    const Mat2 u = gates::to_z_basis(basis);
    s.apply_1q(q, u);
    const double p1 = std::clamp(prob_one(s, q), 0.0, 1.0);
    const int zbit = rng.uniform() < p1 ? 1 : 0;
    collapse(s, q, zbit, zbit ? p1 : 1.0 - p1);
    s.mark_consumed(q);
    s.apply_1q(q, gates::adjoint(u));
    return zbit ^ flip_for(basis);
}

struct BranchLayout {
    std::vector<std::uint64_t> measured_bits;  // basis-index bit per plan entry
    std::vector<std::uint64_t> output_bits;    // basis-index bit per unmeasured qubit
    std::size_t outcome_index(std::size_t pattern) const {
        std::size_t idx = 0;
        const std::size_t k = measured_bits.size();
        for (std::size_t j = 0; j < k; ++j)
            if ((pattern >> (k - 1 - j)) & 1u) idx |= std::size_t{1} << measured_bits[j];
        return idx;
    }
    std::size_t output_index(std::size_t o) const {
        std::size_t idx = 0;
        const std::size_t r = output_bits.size();
        for (std::size_t j = 0; j < r; ++j)
            if ((o >> (r - 1 - j)) & 1u) idx |= std::size_t{1} << output_bits[j];
        return idx;
    }
};

template <typename State>
BranchLayout layout_for(State& rotated, std::span<const PlannedMeasurement> plan) {
    const std::size_t n = rotated.num_qubits();
    std::vector<bool> measured(n, false);
    BranchLayout lay;
    for (const auto& pm : plan) {
        check_measurable(pm.qubit, n, rotated.consumed(pm.qubit));
        if (measured[pm.qubit]) throw std::invalid_argument("qubit measured twice in one plan");
        measured[pm.qubit] = true;
        rotated.apply_1q(pm.qubit, gates::to_z_basis(pm.basis));
        lay.measured_bits.push_back(rotated.bit(pm.qubit));
    }
    for (std::size_t q = 0; q < n; ++q)
        if (!measured[q]) lay.output_bits.push_back(rotated.bit(q));
    if (lay.measured_bits.size() > 20) throw CapacityError("branch enumeration limited to 20 measured qubits");
    return lay;
}

MeasurementRecord record_for(std::span<const PlannedMeasurement> plan, std::size_t pattern) {
    MeasurementRecord rec;
    const std::size_t k = plan.size();
    for (std::size_t j = 0; j < k; ++j) {
        const int zbit = static_cast<int>((pattern >> (k - 1 - j)) & 1u);
        rec.outcomes[plan[j].site] = zbit ^ flip_for(plan[j].basis);
        rec.bases[plan[j].site] = plan[j].basis;
    }
    return rec;
}

}  // namespace

int measure(StateVector& psi, std::size_t q, MeasureBasis basis, Rng& rng) { return measure_impl(psi, q, basis, rng); }
int measure(DensityMatrix& rho, std::size_t q, MeasureBasis basis, Rng& rng) { return measure_impl(rho, q, basis, rng); }
double project_outcome(StateVector& psi, std::size_t q, MeasureBasis basis, int bit) {
    return project_impl(psi, q, basis, bit);
}
double project_outcome(DensityMatrix& rho, std::size_t q, MeasureBasis basis, int bit) {
    return project_impl(rho, q, basis, bit);
}

std::vector<Branch> enumerate_branches(const StateVector& psi, std::span<const PlannedMeasurement> plan) {
    StateVector rot = psi;
    const BranchLayout lay = layout_for(rot, plan);
    const std::size_t out_dim = std::size_t{1} << lay.output_bits.size();
    std::vector<std::size_t> out_idx(out_dim);
    for (std::size_t o = 0; o < out_dim; ++o) out_idx[o] = lay.output_index(o);

    std::vector<Branch> branches;
    const std::size_t patterns = std::size_t{1} << plan.size();
    branches.reserve(patterns);
    const auto& a = rot.amplitudes();
    for (std::size_t m = 0; m < patterns; ++m) {
        Branch b;
        b.record = record_for(plan, m);
        const std::size_t base = lay.outcome_index(m);
        std::vector<cplx> out(out_dim);
        double p = 0.0;
        for (std::size_t o = 0; o < out_dim; ++o) {
            out[o] = a[base | out_idx[o]];
            p += std::norm(out[o]);
        }
        b.record.probability = p;
        if (p > 0.0) {
            const double s = 1.0 / std::sqrt(p);
            for (auto& x : out) x *= s;
            b.output = std::move(out);
        }
        branches.push_back(std::move(b));
    }
    return branches;
}

std::vector<MixedBranch> enumerate_branches(const DensityMatrix& rho, std::span<const PlannedMeasurement> plan) {
    DensityMatrix rot = rho;
    const BranchLayout lay = layout_for(rot, plan);
    const std::size_t out_dim = std::size_t{1} << lay.output_bits.size();
    std::vector<std::size_t> out_idx(out_dim);
    for (std::size_t o = 0; o < out_dim; ++o) out_idx[o] = lay.output_index(o);

    std::vector<MixedBranch> branches;
    const std::size_t patterns = std::size_t{1} << plan.size();
    branches.reserve(patterns);
    for (std::size_t m = 0; m < patterns; ++m) {
        MixedBranch b;
        b.record = record_for(plan, m);
        const std::size_t base = lay.outcome_index(m);
        std::vector<cplx> out(out_dim * out_dim);
        double p = 0.0;
        for (std::size_t r = 0; r < out_dim; ++r) {
            for (std::size_t c = 0; c < out_dim; ++c) out[r * out_dim + c] = rot(base | out_idx[r], base | out_idx[c]);
            p += out[r * out_dim + r].real();
        }
        b.record.probability = std::max(p, 0.0);
        if (p > 0.0) {
            for (auto& x : out) x /= p;
            b.output = std::move(out);
        }
        branches.push_back(std::move(b));
    }
    return branches;
}

namespace {

struct TraceLayout {
    std::vector<std::size_t> keep_index;   // kept-subsystem value -> full index contribution
    std::vector<std::size_t> trace_index;  // traced-subsystem value -> full index contribution
};

TraceLayout trace_layout(std::size_t n, std::span<const std::size_t> keep) {
    if (keep.empty()) throw std::invalid_argument("partial trace needs a nonempty keep set");
    std::vector<bool> kept(n, false);
    std::vector<std::size_t> ks(keep.begin(), keep.end());
    std::sort(ks.begin(), ks.end());
    for (auto q : ks) {
        check_qubit(q, n);
        if (kept[q]) throw std::invalid_argument("keep set has repeated qubits");
        kept[q] = true;
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q)
        if (!kept[q]) traced.push_back(q);
    auto build = [n](const std::vector<std::size_t>& qs) {
        std::vector<std::size_t> idx(std::size_t{1} << qs.size(), 0);
        for (std::size_t v = 0; v < idx.size(); ++v)
            for (std::size_t j = 0; j < qs.size(); ++j)
                if ((v >> (qs.size() - 1 - j)) & 1u) idx[v] |= std::size_t{1} << (n - 1 - qs[j]);
        return idx;
    };
    return {build(ks), build(traced)};
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    const TraceLayout lay = trace_layout(rho.num_qubits(), keep);
    const std::size_t d = lay.keep_index.size();
    std::vector<cplx> out(d * d, cplx{});
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            cplx s = 0.0;
            for (auto e : lay.trace_index) s += rho(lay.keep_index[r] | e, lay.keep_index[c] | e);
            out[r * d + c] = s;
        }
    return DensityMatrix::from_matrix(keep.size(), std::move(out));
}

DensityMatrix reduced_density(const StateVector& psi, std::span<const std::size_t> keep) {
    const TraceLayout lay = trace_layout(psi.num_qubits(), keep);
    if (keep.size() > kMaxDensityQubits) throw CapacityError("reduced density matrix too large");
    const std::size_t d = lay.keep_index.size();
    const auto& a = psi.amplitudes();
    std::vector<cplx> out(d * d, cplx{});
    for (auto e : lay.trace_index)
        for (std::size_t r = 0; r < d; ++r) {
            const cplx ar = a[lay.keep_index[r] | e];
            if (ar == cplx{}) continue;
            for (std::size_t c = 0; c < d; ++c) out[r * d + c] += ar * std::conj(a[lay.keep_index[c] | e]);
        }
    return DensityMatrix::from_matrix(keep.size(), std::move(out));
}

namespace {

cplx pauli_phase(const PauliString& p) {
    if (!p.is_hermitian()) throw std::invalid_argument("expectation needs a Hermitian Pauli string (phase +-1)");
    return std::pow(cplx{0, 1}, static_cast<int>((p.log_i() + p.y_count()) % 4));
}

}  // namespace

double expectation(const StateVector& psi, const PauliString& p) {
    if (p.num_qubits() != psi.num_qubits()) throw DimensionError("Pauli string size does not match the state");
    const cplx ph = pauli_phase(p);
    return (ph * kernels().pauli_inner(psi.amplitudes().data(), psi.dim(), p.x_mask(), p.z_mask())).real();
}

double expectation(const DensityMatrix& rho, const PauliString& p) {
    if (p.num_qubits() != rho.num_qubits()) throw DimensionError("Pauli string size does not match the state");
    const cplx ph = pauli_phase(p);
    const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
    cplx s = 0.0;
    // Tr(P rho) = sum_r phase * sign(r ^ x) * rho(r ^ x, r).
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        const std::size_t c = r ^ xm;
        const double sg = (std::popcount(c & zm) & 1) ? -1.0 : 1.0;
        s += sg * rho(c, r);
    }
    return (ph * s).real();
}

}  // namespace sptel
