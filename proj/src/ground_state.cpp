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

#include "sptel/ground_state.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sptel/diagnostics.hpp"
#include "sptel/errors.hpp"
#include "sptel/kernels.hpp"
#include "sptel/paths.hpp"
#include "sptel/rng.hpp"

namespace sptel {

void PauliSum::add(double coeff, const PauliString& p) {
    if (p.num_qubits() != n_) throw DimensionError("Pauli term size does not match the Hamiltonian");
    if (!p.is_hermitian()) throw std::invalid_argument("Hamiltonian terms must be Hermitian");
    const cplx phase = std::pow(cplx{0, 1}, static_cast<int>((p.log_i() + p.y_count()) % 4));
    terms_.push_back({coeff * phase, p.x_mask(), p.z_mask()});
}

void PauliSum::apply(const cplx* in, cplx* out) const {
    const std::size_t d = std::size_t{1} << n_;
    std::fill(out, out + d, cplx{});
    const auto& k = kernels();
    for (const auto& t : terms_) k.pauli_accumulate(out, in, d, t.xmask, t.zmask, t.coeff);
}

double PauliSum::expectation(const StateVector& psi) const {
    std::vector<cplx> h(psi.dim());
    apply(psi.amplitudes().data(), h.data());
    return kernels().dot(psi.amplitudes().data(), h.data(), psi.dim()).real();
}

std::string to_string(HamiltonianFamily f) {
    switch (f) {
        case HamiltonianFamily::HY: return "hy";
        case HamiltonianFamily::HZ: return "hz";
        case HamiltonianFamily::HZLower: return "hz_lower";
    }
    return "?";
}

HamiltonianFamily hamiltonian_family_from_string(std::string_view s) {
    if (s == "hy") return HamiltonianFamily::HY;
    if (s == "hz") return HamiltonianFamily::HZ;
    if (s == "hz_lower") return HamiltonianFamily::HZLower;
    throw std::invalid_argument("unknown Hamiltonian family '" + std::string(s) + "' (hy, hz, hz_lower)");
}

std::vector<PauliString> perturbation_terms(const HamiltonianSpec& spec) {
    const GraphSpec g = build_hourglass(spec.n, spec.rows);
    const std::size_t L = spec.num_qubits();
    std::vector<PauliString> terms;
    for (int i = 1; i <= spec.n; ++i)
        for (int k = 0; k < spec.rows; ++k) {
            if (spec.family == HamiltonianFamily::HZLower && k != 1) continue;
            const Letter l = spec.family == HamiltonianFamily::HY ? Letter::Y : Letter::Z;
            terms.push_back(PauliString::single(L, g.position(hourglass_vertex(spec.n, spec.rows, i, k)) - 1, l));
        }
    return terms;
}

PauliSum build_hamiltonian(const HamiltonianSpec& spec) {
    if (!(spec.alpha >= 0.0 && spec.alpha <= std::numbers::pi / 2 + 1e-12))
        throw std::invalid_argument("alpha must lie in [0, pi/2]");
    if (spec.num_qubits() > kMaxStateQubits)
        throw CapacityError("ground-state lab limited to " + std::to_string(kMaxStateQubits) + " resource qubits");
    const GraphSpec g = build_hourglass(spec.n, spec.rows);
    PauliSum h(spec.num_qubits());
    const double c = std::cos(spec.alpha), s = std::sin(spec.alpha);
    if (c != 0.0)
        for (const auto& k : resource_stabilizers(g)) h.add(-c, k);
    if (s != 0.0)
        for (const auto& p : perturbation_terms(spec)) h.add(-s, p);
    return h;
}

namespace {

using Vec = Eigen::VectorXcd;

GroundState dense_lowest(const PauliSum& h) {
    const std::size_t d = std::size_t{1} << h.num_qubits();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<cplx> e(d), col(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::fill(e.begin(), e.end(), cplx{});
        e[j] = 1.0;
        h.apply(e.data(), col.data());
        for (std::size_t i = 0; i < d; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    GroundState gs;
    std::vector<cplx> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    gs.psi = StateVector::from_amplitudes(std::move(v));
    gs.energy = es.eigenvalues()(0);
    gs.gap = d > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0) : std::numeric_limits<double>::infinity();
    gs.matvecs = d;
    const Eigen::VectorXcd psi = es.eigenvectors().col(0);
    gs.residual = (m * psi - gs.energy * psi).norm();
    gs.converged = true;
    return gs;
}

struct LanczosResult {
    Vec vec;
    double value = 0.0;
    double residual = 0.0;
    bool converged = false;
    std::size_t matvecs = 0;
};

// Restarted Lanczos for the lowest eigenpair orthogonal to `deflate`.
LanczosResult lanczos(const PauliSum& h, const LanczosOptions& opt, const std::vector<Vec>& deflate,
                      std::uint64_t stream) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << h.num_qubits());
    auto project_out = [&deflate](Vec& w) {
        for (const auto& u : deflate) w -= u * u.dot(w);
    };
    auto matvec = [&h, d](const Vec& in) {
        Vec out(d);
        h.apply(in.data(), out.data());
        return out;
    };

    Rng rng(opt.seed, stream);
    Vec v0(d);
    for (Eigen::Index i = 0; i < d; ++i) v0(i) = cplx{rng.uniform() - 0.5, rng.uniform() - 0.5};
    project_out(v0);
    v0.normalize();

    LanczosResult res;
    const auto m = static_cast<Eigen::Index>(std::min<std::size_t>(opt.krylov_dim, static_cast<std::size_t>(d)));
    std::vector<Vec> basis;
    basis.reserve(static_cast<std::size_t>(m) + 1);
    for (std::size_t restart = 0; restart <= opt.max_restarts; ++restart) {
        basis.clear();
        basis.push_back(v0);
        std::vector<double> a, b;
        for (Eigen::Index j = 0; j < m; ++j) {
            Vec w = matvec(basis.back());
            ++res.matvecs;
            a.push_back(basis.back().dot(w).real());
            // Full reorthogonalisation, twice for stability.
            for (int pass = 0; pass < 2; ++pass) {
                project_out(w);
                for (const auto& u : basis) w -= u * u.dot(w);
            }
            const double beta = w.norm();
            if (j + 1 == m || beta < 1e-13) break;
            b.push_back(beta);
            basis.push_back(w / beta);
        }
        const auto k = static_cast<Eigen::Index>(a.size());
        Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(a.data(), k);
        Eigen::VectorXd sub = k > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(b.data(), k - 1))
                                    : Eigen::VectorXd(0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub);
        const Eigen::VectorXd s = tri.eigenvectors().col(0);
        Vec y = Vec::Zero(d);
        for (Eigen::Index i = 0; i < k; ++i) y += s(i) * basis[static_cast<std::size_t>(i)];
        project_out(y);
        y.normalize();
        const Vec hy = matvec(y);
        ++res.matvecs;
        const double e = y.dot(hy).real();
        res.vec = y;
        res.value = e;
        res.residual = (hy - e * y).norm();
        if (res.residual < opt.tol) {
            res.converged = true;
            break;
        }
        v0 = y;
    }
    return res;
}

}  // namespace

GroundState lowest_eigenpair(const PauliSum& h, const LanczosOptions& options) {
    const std::size_t d = std::size_t{1} << h.num_qubits();
    GroundState gs;
    if (d <= options.dense_cutoff) {
        gs = dense_lowest(h);
    } else {
        const LanczosResult r0 = lanczos(h, options, {}, 0);
        gs.psi = StateVector::from_amplitudes(std::vector<cplx>(r0.vec.data(), r0.vec.data() + r0.vec.size()));
        gs.energy = r0.value;
        gs.residual = r0.residual;
        gs.converged = r0.converged;
        gs.matvecs = r0.matvecs;
        gs.gap = std::numeric_limits<double>::quiet_NaN();
        if (options.compute_gap) {
            const LanczosResult r1 = lanczos(h, options, {r0.vec}, 1);
            gs.gap = r1.value - r0.value;
            gs.matvecs += r1.matvecs;
        }
    }
    gs.degenerate = !std::isnan(gs.gap) && gs.gap < options.degeneracy_gap;
    return gs;
}

GroundState ground_state(const HamiltonianSpec& spec, const LanczosOptions& options) {
    return lowest_eigenpair(build_hamiltonian(spec), options);
}

StateVector attach_input(const StateVector& resource, const std::array<cplx, 2>& input) {
    const std::size_t L = resource.num_qubits();
    StateVector full(L + 1);
    auto& a = full.amplitudes();
    const auto& r = resource.amplitudes();
    const std::size_t d = r.size();
    for (std::size_t i = 0; i < d; ++i) {
        a[i] = input[0] * r[i];
        a[d + i] = input[1] * r[i];
    }
    // CZ between the input (top bit) and m (next bit).
    const std::size_t both = d | (d >> 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((i & both) == both) a[i] = -a[i];
    return full;
}

namespace {

struct GslabBranches {
    std::vector<Branch> branches;
    ByproductOperator bp;
};

GslabBranches gslab_branches(const HamiltonianSpec& spec, const StateVector& resource,
                             const std::array<cplx, 2>& input, std::string_view path) {
    if (resource.num_qubits() != spec.num_qubits())
        throw DimensionError("resource state size does not match the Hamiltonian");
    const GraphSpec g = build_hourglass(spec.n, spec.rows);
    const StateVector full = attach_input(resource, input);
    const auto plan = measurement_plan(g);
    return {enumerate_branches(full, plan), byproduct_for_path(g, path)};
}

// Input-frame exponents (e_z, e_x): after undoing the fixup the output is Z^ez X^ex |phi>.
std::pair<int, int> input_frame(const ByproductOperator& bp, const MeasurementRecord& rec) {
    const auto [zo, xo] = bp.evaluate(rec);
    return bp.fixup == OutputFixup::Hadamard ? std::pair{xo, zo} : std::pair{zo, xo};
}

}  // namespace

GslabOutcome teleport_through_ground_state(const HamiltonianSpec& spec, const StateVector& resource, double phi,
                                           std::string_view path, std::size_t shots, std::uint64_t seed) {
    const InputState in{std::numbers::pi / 2, phi};
    const GslabBranches gb = gslab_branches(spec, resource, in.amplitudes(), path);
    std::vector<double> success(gb.branches.size(), 0.0);
    std::vector<double> cdf(gb.branches.size(), 0.0);
    GslabOutcome out;
    double acc = 0.0;
    for (std::size_t b = 0; b < gb.branches.size(); ++b) {
        const auto& br = gb.branches[b];
        acc += br.record.probability;
        cdf[b] = acc;
        if (br.record.probability <= 0.0) continue;
        const auto [ez, ex] = input_frame(gb.bp, br.record);
        Mat2 u = gates::pauli(Letter::I);
        if (gb.bp.fixup == OutputFixup::Hadamard) u = gates::hadamard();
        u = gates::mul(gates::rz((ex ? 1.0 : -1.0) * phi), u);
        u = gates::mul(gates::hadamard(), u);
        const cplx amp0 = u[0] * br.output[0] + u[1] * br.output[1];
        const double p0 = std::clamp(std::norm(amp0), 0.0, 1.0);
        success[b] = ez ? 1.0 - p0 : p0;
        out.success_exact += br.record.probability * success[b];
    }
    if (shots > 0) {
        Rng root(seed);
        std::size_t hits = 0;
        for (std::size_t s = 0; s < shots; ++s) {
            Rng rng = root.split(s);
            const double u = rng.uniform() * acc;
            std::size_t b = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            b = std::min(b, cdf.size() - 1);
            while (gb.branches[b].record.probability <= 0.0 && b + 1 < cdf.size()) ++b;
            hits += rng.uniform() < success[b] ? 1 : 0;
        }
        out.success_frequency = static_cast<double>(hits) / static_cast<double>(shots);
    }
    out.shots = shots;
    return out;
}

double ground_state_fidelity(const HamiltonianSpec& spec, const StateVector& resource, const InputState& input,
                             std::string_view path) {
    const GslabBranches gb = gslab_branches(spec, resource, input.amplitudes(), path);
    const auto a = input.amplitudes();
    double f = 0.0;
    for (const auto& br : gb.branches) {
        if (br.record.probability <= 0.0) continue;
        const Mat2 c = gb.bp.correction(br.record);
        const cplx o0 = c[0] * br.output[0] + c[1] * br.output[1];
        const cplx o1 = c[2] * br.output[0] + c[3] * br.output[1];
        f += br.record.probability * std::norm(std::conj(a[0]) * o0 + std::conj(a[1]) * o1);
    }
    return std::clamp(f, 0.0, 1.0);
}

std::vector<SweepRow> fidelity_vs_alpha_sweep(HamiltonianFamily family, const std::vector<double>& alphas,
                                              const std::vector<int>& ns, const SweepOptions& options) {
    if (alphas.empty() || ns.empty()) throw std::invalid_argument("sweep grids must be nonempty");
    if (options.inputs < 1) throw std::invalid_argument("sweep needs at least one input per point");
    std::vector<SweepRow> rows;
    const Rng root(options.seed);
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            const HamiltonianSpec spec{family, ns[ni], options.rows, alphas[ai]};
            const GroundState gs = ground_state(spec);
            const Rng cell = root.split(ni * alphas.size() + ai);
            for (const auto& path : options.paths) {
                SweepRow row;
                row.family = family;
                row.alpha = alphas[ai];
                row.n = ns[ni];
                row.num_qubits = spec.num_qubits() + 1;
                row.path = path;
                row.inputs = options.inputs;
                row.shots = options.shots;
                row.degenerate = gs.degenerate;
                row.energy = gs.energy;
                for (std::size_t k = 0; k < options.inputs; ++k) {
                    Rng in_rng = cell.split(k);
                    const std::uint64_t shot_seed = in_rng.next();
                    if (options.sampling == InputSampling::XYPlane) {
                        const double phi = 2 * std::numbers::pi * in_rng.uniform();
                        const GslabOutcome o =
                            teleport_through_ground_state(spec, gs.psi, phi, path, options.shots, shot_seed);
                        row.mean_success += o.success_frequency;
                        row.mean_exact += o.success_exact;
                    } else {
                        const double polar = std::acos(1.0 - 2.0 * in_rng.uniform());
                        const double az = 2 * std::numbers::pi * in_rng.uniform();
                        const double f = ground_state_fidelity(spec, gs.psi, {polar, az}, path);
                        Rng shot_rng(shot_seed);
                        std::size_t hits = 0;
                        for (std::size_t s = 0; s < options.shots; ++s) hits += shot_rng.uniform() < f ? 1 : 0;
                        row.mean_success += options.shots ? static_cast<double>(hits) / options.shots : 0.0;
                        row.mean_exact += f;
                    }
                }
                const double k = static_cast<double>(options.inputs);
                row.mean_success /= k;
                row.mean_exact /= k;
                const double total = k * static_cast<double>(options.shots);
                row.stderr_ = total > 0 ? std::sqrt(row.mean_success * (1 - row.mean_success) / total) : 0.0;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

}  // namespace sptel
