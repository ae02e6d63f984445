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

#include "sptel/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sptel/parallel.hpp"
#include "sptel/rng.hpp"

namespace sptel {

CalibrationResult calibrate_path(const GraphSpec& g, std::span<const ErrorSpec> errors,
                                 const CalibrationOptions& options) {
    if (g.paths().size() < 2) throw std::invalid_argument("calibration needs a graph with at least two paths");
    if (options.known_states.empty()) throw std::invalid_argument("calibration needs at least one known state");
    if (!options.exact && options.shots == 0) throw std::invalid_argument("calibration needs shots > 0");

    std::vector<const NamedPath*> paths;
    for (const auto& p : g.paths()) paths.push_back(&p);
    std::sort(paths.begin(), paths.end(), [](const NamedPath* a, const NamedPath* b) { return a->id < b->id; });

    const Rng root(options.seed);
    const std::size_t k = options.known_states.size();
    CalibrationResult res;
    res.table = parallel_map(paths.size(), [&](std::size_t pi) {
        PathScore score;
        score.path_id = paths[pi]->id;
        score.label = paths[pi]->label;
        double var = 0.0;
        for (std::size_t si = 0; si < k; ++si) {
            const InputState& in = options.known_states[si];
            double f;
            if (options.exact) {
                f = fidelity_exact(g, errors, in, score.path_id);
            } else {
                const std::uint64_t seed = root.split(pi * k + si).next();
                const TeleportRun run =
                    run_teleport(g, errors, in, score.path_id, {options.shots, seed, SamplingMode::Joint, false});
                f = run.fidelity;
                var += run.stderr_ * run.stderr_;
            }
            score.per_state.push_back(f);
            score.fidelity += f;
        }
        score.fidelity /= static_cast<double>(k);
        score.stderr_ = std::sqrt(var) / static_cast<double>(k);
        return score;
    });

    // Strict comparison keeps the earliest id on ties.
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.table.size(); ++i)
        if (res.table[i].fidelity > res.table[best].fidelity) best = i;
    if (res.table[best].fidelity < 2.0 / 3.0) {
        res.unprotected = true;
        res.chosen = "unprotected";
    } else {
        res.chosen = res.table[best].path_id;
    }
    return res;
}

namespace {

struct RowSetup {
    std::vector<Branch> branches;
    std::vector<ByproductOperator> bps;
};

RowSetup row_setup(const GraphSpec& g3, std::span<const ErrorSpec> errors, const InputState& input) {
    if (g3.family != "hourglass" || g3.hourglass_rows != 3)
        throw std::invalid_argument("majority vote needs a 3-row hourglass graph");
    const GateList circuit = teleport_circuit(g3, errors, input);
    if (has_mixed_gates(circuit)) throw std::invalid_argument("majority vote is defined for coherent errors only");
    RowSetup s;
    s.branches = enumerate_branches(prepare_state(circuit), measurement_plan(g3));
    for (const char* row : {"row0", "row1", "row2"}) s.bps.push_back(byproduct_for_path(g3, row));
    return s;
}

MajorityVoteResult decide(const RowSetup& s, const Branch& br, const InputState& input) {
    MajorityVoteResult r;
    r.record = br.record;
    for (const auto& bp : s.bps) {
        const auto [zo, xo] = bp.evaluate(br.record);
        RowVote v{bp.path_id, zo, xo};
        if (bp.fixup == OutputFixup::Hadamard) std::swap(v.e_z, v.e_x);
        r.votes.push_back(v);
    }
    auto same = [&](int a, int b) { return r.votes[a].e_z == r.votes[b].e_z && r.votes[a].e_x == r.votes[b].e_x; };
    const bool s01 = same(0, 1), s02 = same(0, 2), s12 = same(1, 2);
    if (s01 || s02) r.majority_row = 0;
    else if (s12) r.majority_row = 1;
    else r.all_disagree = true;
    if (s01 && !s02) r.flagged = r.votes[2].path_id;
    else if (s02 && !s01) r.flagged = r.votes[1].path_id;
    else if (s12 && !s01) r.flagged = r.votes[0].path_id;

    if (r.majority_row) {
        const int m = *r.majority_row;
        r.e_z = r.votes[m].e_z;
        r.e_x = r.votes[m].e_x;
        const Mat2 c = s.bps[m].correction(br.record);
        const auto a = input.amplitudes();
        const cplx o0 = c[0] * br.output[0] + c[1] * br.output[1];
        const cplx o1 = c[2] * br.output[0] + c[3] * br.output[1];
        r.fidelity = std::clamp(std::norm(std::conj(a[0]) * o0 + std::conj(a[1]) * o1), 0.0, 1.0);
    }
    return r;
}

}  // namespace

MajorityVoteResult majority_vote_teleport(const GraphSpec& g3, std::span<const ErrorSpec> errors,
                                          const InputState& input, std::uint64_t seed) {
    const RowSetup s = row_setup(g3, errors, input);
    Rng rng(seed);
    double total = 0.0;
    for (const auto& b : s.branches) total += b.record.probability;
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t pick = s.branches.size() - 1;
    for (std::size_t i = 0; i < s.branches.size(); ++i) {
        acc += s.branches[i].record.probability;
        if (u < acc && s.branches[i].record.probability > 0.0) {
            pick = i;
            break;
        }
    }
    return decide(s, s.branches[pick], input);
}

double majority_vote_detection_rate(const GraphSpec& g3, std::span<const ErrorSpec> errors, const InputState& input,
                                    std::string_view corrupted_row) {
    const RowSetup s = row_setup(g3, errors, input);
    const std::string want = g3.path(corrupted_row).id;
    double rate = 0.0;
    for (const auto& b : s.branches) {
        if (b.record.probability <= 0.0) continue;
        const MajorityVoteResult r = decide(s, b, input);
        if (r.flagged && g3.path(*r.flagged).id == want) rate += b.record.probability;
    }
    return rate;
}

}  // namespace sptel
