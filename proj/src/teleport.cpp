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

#include "sptel/teleport.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sptel/errors.hpp"

namespace sptel {

std::array<cplx, 2> InputState::amplitudes() const {
    return {cplx{std::cos(polar / 2)}, std::polar(std::sin(polar / 2), azimuth)};
}

std::array<double, 3> InputState::bloch() const {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

namespace {

double parse_double(std::string_view s, std::string_view whole) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad input state '" + std::string(whole) + "'");
    return v;
}

}  // namespace

InputState InputState::parse(std::string_view text) {
    constexpr double pi = std::numbers::pi;
    if (text == "0") return {0.0, 0.0};
    if (text == "1") return {pi, 0.0};
    if (text == "+") return {pi / 2, 0.0};
    if (text == "-") return {pi / 2, pi};
    if (text == "+i") return {pi / 2, pi / 2};
    if (text == "-i") return {pi / 2, -pi / 2};
    if (text.rfind("polar:", 0) == 0) {
        const auto body = text.substr(6);
        const auto c = body.find(',');
        if (c == std::string_view::npos) return {parse_double(body, text), 0.0};
        return {parse_double(body.substr(0, c), text), parse_double(body.substr(c + 1), text)};
    }
    if (text.rfind("azimuth:", 0) == 0) return {pi / 2, parse_double(text.substr(8), text)};
    throw std::invalid_argument("bad input state '" + std::string(text) + "'");
}

std::string InputState::str() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "polar:%.17g,%.17g", polar, azimuth);
    return buf;
}

std::string to_string(OutputFixup f) { return f == OutputFixup::Identity ? "identity" : "hadamard"; }

std::string to_string(ChannelClass c) {
    switch (c) {
        case ChannelClass::Quantum: return "quantum";
        case ChannelClass::Classical: return "classical";
        case ChannelClass::Random: return "random";
    }
    return "?";
}

ChannelClass classify_channel(double fidelity) {
    if (fidelity > 2.0 / 3.0) return ChannelClass::Quantum;
    if (std::abs(fidelity - 0.5) <= 0.05) return ChannelClass::Random;
    return ChannelClass::Classical;
}

std::pair<int, int> ByproductOperator::evaluate(const MeasurementRecord& rec) const {
    auto sum = [&rec](const std::vector<int>& vs, int offset) {
        int s = offset;
        for (int v : vs) {
            const auto it = rec.outcomes.find(v);
            if (it == rec.outcomes.end())
                throw std::invalid_argument("measurement record lacks vertex " + std::to_string(v));
            s += it->second;
        }
        return s & 1;
    };
    return {sum(z_exponent_vertices, z_offset), sum(x_exponent_vertices, x_offset)};
}

Mat2 ByproductOperator::correction(const MeasurementRecord& rec) const {
    const auto [z, x] = evaluate(rec);
    Mat2 c = gates::pauli(Letter::I);
    if (z) c = gates::pauli(Letter::Z);
    if (x) c = gates::mul(gates::pauli(Letter::X), c);
    if (fixup == OutputFixup::Hadamard) c = gates::mul(gates::hadamard(), c);
    return c;
}

ByproductOperator byproduct_for_path(const GraphSpec& g, std::string_view path_id) {
    const NamedPath& p = g.path(path_id);
    const PathSymmetry ps = path_symmetry(g, p);
    if (!ps.measurable)
        throw std::invalid_argument("path '" + p.id + "' has symmetry strings that do not match the measurement bases");

    const std::size_t in = g.position(g.input_id());
    const std::size_t out = g.position(g.output_id());
    // Middle support of each string, and the constant bit from its sign and
    // from measurements done in the negated basis.
    auto middle = [&](const PauliString& s, std::vector<int>& vs) {
        int offset = s.sign() < 0 ? 1 : 0;
        for (std::size_t q = 0; q < g.num_qubits(); ++q) {
            if (q == in || q == out || s.letter(q) == Letter::I) continue;
            vs.push_back(g.id_at(q));
            if (g.vertices()[q].basis == MeasureBasis::MinusY) offset ^= 1;
        }
        return offset;
    };
    // Input frame: |out> = O Z^ez X^ex |phi>, ez from the x-type string plus the input outcome.
    std::vector<int> ez_set{g.input_id()};
    std::vector<int> ex_set;
    const int ez_off = middle(ps.x_string, ez_set);
    const int ex_off = middle(ps.z_string, ex_set);
    std::sort(ez_set.begin(), ez_set.end());

    ByproductOperator b;
    b.path_id = p.id;
    const Letter px = ps.x_string.letter(out);
    const Letter pz = ps.z_string.letter(out);
    if (px == Letter::X && pz == Letter::Z) {
        b.fixup = OutputFixup::Identity;
        b.z_exponent_vertices = ez_set;
        b.z_offset = ez_off;
        b.x_exponent_vertices = ex_set;
        b.x_offset = ex_off;
    } else if (px == Letter::Z && pz == Letter::X) {
        // H Z^a X^b H = X^a Z^b: the exponents trade places in the output frame.
        b.fixup = OutputFixup::Hadamard;
        b.z_exponent_vertices = ex_set;
        b.z_offset = ex_off;
        b.x_exponent_vertices = ez_set;
        b.x_offset = ez_off;
    } else {
        throw std::invalid_argument("path '" + p.id + "' output letters need a fixup other than I or H");
    }
    return b;
}

GateList teleport_circuit(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input) {
    GateList gl = compile_preparation(g, errors);
    const std::size_t in = g.position(g.input_id());
    auto it = std::find_if(gl.ops.begin(), gl.ops.end(),
                           [in](const Gate& op) { return op.kind == GateKind::InitPlus && op.q0 == in; });
    it = gl.ops.erase(it);
    const Gate prep[] = {{GateKind::Ry, in, in, input.polar}, {GateKind::Rz, in, in, input.azimuth}};
    gl.ops.insert(gl.ops.begin(), std::begin(prep), std::end(prep));
    return gl;
}

std::vector<PlannedMeasurement> measurement_plan(const GraphSpec& g) {
    std::vector<PlannedMeasurement> plan;
    for (std::size_t q = 0; q < g.num_qubits(); ++q) {
        const Vertex& v = g.vertices()[q];
        if (v.role == Role::Output) continue;
        plan.push_back({v.id, q, v.basis});
    }
    return plan;
}

namespace {

using Rho2 = std::array<cplx, 4>;

Rho2 pure_rho(const std::vector<cplx>& psi) {
    return {psi[0] * std::conj(psi[0]), psi[0] * std::conj(psi[1]), psi[1] * std::conj(psi[0]),
            psi[1] * std::conj(psi[1])};
}

Rho2 conjugate(const Mat2& c, const Rho2& r) {
    return gates::mul(gates::mul(c, Mat2{r[0], r[1], r[2], r[3]}), gates::adjoint(c));
}

double overlap(const InputState& input, const Rho2& r) {
    const auto a = input.amplitudes();
    const cplx v = std::conj(a[0]) * (r[0] * a[0] + r[1] * a[1]) + std::conj(a[1]) * (r[2] * a[0] + r[3] * a[1]);
    return std::clamp(v.real(), 0.0, 1.0);
}

double pauli_value(const Rho2& r, Letter l) {
    switch (l) {
        case Letter::X: return 2.0 * r[1].real();
        case Letter::Y: return -2.0 * r[1].imag();
        case Letter::Z: return (r[0] - r[3]).real();
        case Letter::I: break;
    }
    return 1.0;
}

struct BranchSet {
    std::vector<MeasurementRecord> records;
    std::vector<Rho2> outputs;  // uncorrected output states
    std::vector<double> cdf;
};

BranchSet collect_branches(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input) {
    const GateList gl = teleport_circuit(g, errors, input);
    const auto plan = measurement_plan(g);
    BranchSet bs;
    auto push = [&bs](MeasurementRecord rec, Rho2 rho) {
        const double p = rec.probability;
        bs.cdf.push_back((bs.cdf.empty() ? 0.0 : bs.cdf.back()) + p);
        bs.records.push_back(std::move(rec));
        bs.outputs.push_back(rho);
    };
    if (has_mixed_gates(gl)) {
        const DensityMatrix rho = prepare_density(gl);
        for (auto& b : enumerate_branches(rho, plan))
            push(std::move(b.record), b.output.empty() ? Rho2{} : Rho2{b.output[0], b.output[1], b.output[2], b.output[3]});
    } else {
        const StateVector psi = prepare_state(gl);
        for (auto& b : enumerate_branches(psi, plan))
            push(std::move(b.record), b.output.empty() ? Rho2{} : pure_rho(b.output));
    }
    return bs;
}

std::size_t sample_branch(const BranchSet& bs, Rng& rng) {
    const double u = rng.uniform() * bs.cdf.back();
    auto it = std::upper_bound(bs.cdf.begin(), bs.cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - bs.cdf.begin());
    if (idx >= bs.cdf.size()) idx = bs.cdf.size() - 1;
    // Skip zero-width intervals left by impossible branches.
    while (bs.records[idx].probability <= 0.0 && idx + 1 < bs.cdf.size()) ++idx;
    return idx;
}

template <typename State>
std::pair<MeasurementRecord, Rho2> sequential_shot(State st, const GraphSpec& g,
                                                  std::span<const PlannedMeasurement> plan, Rng& rng) {
    MeasurementRecord rec;
    for (const auto& pm : plan) {
        rec.outcomes[pm.site] = measure(st, pm.qubit, pm.basis, rng);
        rec.bases[pm.site] = pm.basis;
    }
    const std::size_t keep[] = {g.position(g.output_id())};
    DensityMatrix out = [&] {
        if constexpr (std::is_same_v<State, StateVector>)
            return reduced_density(st, keep);
        else
            return partial_trace(st, keep);
    }();
    return {rec, Rho2{out(0, 0), out(0, 1), out(1, 0), out(1, 1)}};
}

}  // namespace

TeleportRun run_teleport(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input,
                         std::string_view path_id, const TeleportOptions& options) {
    if (options.shots < 1) throw std::invalid_argument("teleportation needs at least one shot");
    const ByproductOperator bp = byproduct_for_path(g, path_id);
    Rng root(options.seed);
    TeleportRun run;
    std::size_t successes = 0;

    auto finish_shot = [&](MeasurementRecord rec, const Rho2& raw, Rng& rng) {
        TeleportResult r;
        r.corrected_output = conjugate(bp.correction(rec), raw);
        r.fidelity = overlap(input, r.corrected_output);
        r.success = rng.uniform() < r.fidelity ? 1 : 0;
        successes += static_cast<std::size_t>(r.success);
        if (options.keep_shots) {
            r.record = std::move(rec);
            r.path_id = bp.path_id;
            run.shots.push_back(std::move(r));
        }
    };

    if (options.mode == SamplingMode::Joint) {
        const BranchSet bs = collect_branches(g, errors, input);
        for (std::size_t s = 0; s < options.shots; ++s) {
            Rng rng = root.split(s);
            const std::size_t b = sample_branch(bs, rng);
            finish_shot(bs.records[b], bs.outputs[b], rng);
        }
    } else {
        const GateList gl = teleport_circuit(g, errors, input);
        const auto plan = measurement_plan(g);
        if (has_mixed_gates(gl)) {
            const DensityMatrix rho = prepare_density(gl);
            for (std::size_t s = 0; s < options.shots; ++s) {
                Rng rng = root.split(s);
                auto [rec, raw] = sequential_shot(rho, g, plan, rng);
                finish_shot(std::move(rec), raw, rng);
            }
        } else {
            const StateVector psi = prepare_state(gl);
            for (std::size_t s = 0; s < options.shots; ++s) {
                Rng rng = root.split(s);
                auto [rec, raw] = sequential_shot(psi, g, plan, rng);
                finish_shot(std::move(rec), raw, rng);
            }
        }
    }
    const double n = static_cast<double>(options.shots);
    run.fidelity = static_cast<double>(successes) / n;
    run.stderr_ = std::sqrt(run.fidelity * (1.0 - run.fidelity) / n);
    run.channel = classify_channel(run.fidelity);
    return run;
}

std::array<cplx, 4> average_output(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input,
                                   std::string_view path_id) {
    const ByproductOperator bp = byproduct_for_path(g, path_id);
    const BranchSet bs = collect_branches(g, errors, input);
    Rho2 avg{};
    for (std::size_t b = 0; b < bs.records.size(); ++b) {
        const double p = bs.records[b].probability;
        if (p <= 0.0) continue;
        const Rho2 c = conjugate(bp.correction(bs.records[b]), bs.outputs[b]);
        for (int k = 0; k < 4; ++k) avg[k] += p * c[k];
    }
    return avg;
}

double fidelity_exact(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input,
                      std::string_view path_id) {
    return overlap(input, average_output(g, errors, input, path_id));
}

TomographyResult reconstruct_from_bloch(std::array<double, 3> r, const InputState& input) {
    TomographyResult t;
    const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (len > 1.0) {
        t.clipped = true;
        for (auto& x : r) x /= len;
    }
    t.bloch = r;
    t.rho = {cplx{(1 + r[2]) / 2}, cplx{r[0] / 2, -r[1] / 2}, cplx{r[0] / 2, r[1] / 2}, cplx{(1 - r[2]) / 2}};
    const auto b = input.bloch();
    t.fidelity = (1.0 + b[0] * r[0] + b[1] * r[1] + b[2] * r[2]) / 2.0;
    return t;
}

TomographyResult tomography_teleport(const GraphSpec& g, std::span<const ErrorSpec> errors, const InputState& input,
                                     std::string_view path_id, std::size_t shots_per_basis, std::uint64_t seed) {
    if (shots_per_basis < 1) throw std::invalid_argument("tomography needs at least one shot per basis");
    const ByproductOperator bp = byproduct_for_path(g, path_id);
    const BranchSet bs = collect_branches(g, errors, input);
    std::vector<Rho2> corrected(bs.outputs.size());
    for (std::size_t b = 0; b < bs.outputs.size(); ++b)
        if (bs.records[b].probability > 0.0) corrected[b] = conjugate(bp.correction(bs.records[b]), bs.outputs[b]);

    const Letter axes[] = {Letter::X, Letter::Y, Letter::Z};
    std::array<double, 3> r{};
    Rng root(seed);
    for (int a = 0; a < 3; ++a) {
        Rng basis_rng = root.split(static_cast<std::uint64_t>(a));
        long plus = 0;
        for (std::size_t s = 0; s < shots_per_basis; ++s) {
            Rng rng = basis_rng.split(s);
            const std::size_t b = sample_branch(bs, rng);
            const double p_plus = (1.0 + pauli_value(corrected[b], axes[a])) / 2.0;
            plus += rng.uniform() < p_plus ? 1 : -1;
        }
        r[static_cast<std::size_t>(a)] = static_cast<double>(plus) / static_cast<double>(shots_per_basis);
    }
    return reconstruct_from_bloch(r, input);
}

}  // namespace sptel
