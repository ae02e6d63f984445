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

#include <numbers>

#include "sptel/experiment.hpp"
#include "sptel/graph.hpp"

namespace sptel {

namespace {

using nlohmann::json;

json base(const std::string& name, const std::string& description, const std::string& protocol,
          std::uint64_t seed) {
    return {{"schema_version", kConfigSchemaVersion},
            {"name", name},
            {"description", description},
            {"protocol", protocol},
            {"seed", seed},
            {"output", {{"csv", "results/" + name + ".csv"}}}};
}

json eps_range() { return {{"range", {-0.45, 0.45, 0.05}}}; }

std::vector<BuiltinExperiment> make_catalog() {
    constexpr double pi = std::numbers::pi;
    std::vector<BuiltinExperiment> c;
    auto add = [&c](json cfg) {
        c.push_back({cfg["name"].get<std::string>(), cfg["description"].get<std::string>(), std::move(cfg)});
    };

    json fig3 = base("fig3_diamond",
                     "Diamond graph: fidelity of the green (p1) and blue (p2) paths versus ZZ crosstalk on link 3-5, "
                     "averaged over 20 random Bloch-sphere inputs",
                     "teleport", 2024);
    fig3["graph"] = "diamond";
    fig3["paths"] = {"p1", "p2"};
    fig3["inputs"] = {{"random", 20}, {"sampling", "bloch"}};
    fig3["shots"] = 0;
    fig3["sweep"] = {{"parameter", "strength"}, {"targets", {{{"zz", {3, 5, 0.0}}}}}, {"values", eps_range()}};
    add(fig3);

    json fig5 = base("fig5_hourglass",
                     "Hourglass n=2: upper and lower path fidelities versus a rotation exp(-i theta (X3 + X5)/2) "
                     "on the two lower bulk vertices",
                     "teleport", 2024);
    fig5["graph"] = "hourglass:n=2";
    fig5["paths"] = {"upper", "lower"};
    fig5["inputs"] = {{"random", 20}, {"sampling", "bloch"}};
    fig5["shots"] = 0;
    json thetas = json::array();
    for (int k = 0; k <= 12; ++k) thetas.push_back(k * pi / 12);
    fig5["sweep"] = {{"parameter", "strength"},
                     {"targets", {{{"x1q", {3, "X", 0.0}}}, {{"x1q", {5, "X", 0.0}}}}},
                     {"values", thetas}};
    add(fig5);

    json fig6 = base("fig6_hy_fidelity",
                     "Teleportation success through the ground state of the symmetric Y-field Hamiltonian, "
                     "25 equatorial inputs x 100 shots per alpha",
                     "gslab", 7);
    fig6["hamiltonian"] = "hy";
    fig6["n"] = {2};
    fig6["paths"] = {"upper", "lower"};
    fig6["inputs"] = {{"random", 25}, {"sampling", "xy"}};
    fig6["shots"] = 100;
    fig6["sweep"] = {{"parameter", "alpha"}, {"values", {{"range", {0.0, 1.5, 0.1}}}}};
    add(fig6);

    json fig7 = base("fig7_sop_hy", "String order parameter of the Y-field Hamiltonian ground state versus alpha",
                     "sop", 12345);
    fig7["hamiltonian"] = "hy";
    fig7["L"] = {6, 10, 14};
    fig7["row"] = 0;
    fig7["sweep"] = {{"parameter", "alpha"}, {"values", {{"range", {0.0, 1.5, 0.05}}}}};
    add(fig7);

    json fig8 = base("fig8_hz_lower",
                     "Ground-state teleportation fidelity versus alpha for the Hamiltonian with Z fields on the lower "
                     "row only, N = 7, 11, 15, 100 random Bloch-sphere inputs",
                     "gslab", 8);
    fig8["hamiltonian"] = "hz_lower";
    fig8["n"] = {2, 4, 6};
    fig8["paths"] = {"upper", "lower"};
    fig8["inputs"] = {{"random", 100}, {"sampling", "bloch"}};
    fig8["shots"] = 100;
    fig8["sweep"] = {{"parameter", "alpha"}, {"values", {0.3, 0.6, 1.0}}};
    add(fig8);

    json fig9 = base("fig9_depolarizing",
                     "Diamond fidelity for a +z input versus ZZ crosstalk on link 3-5 under two-qubit depolarizing "
                     "noise at two bounding probabilities",
                     "teleport", 2024);
    fig9["graph"] = "diamond";
    fig9["paths"] = {"p1", "p2"};
    fig9["inputs"] = {"0"};
    fig9["shots"] = 0;
    fig9["depolarizing"] = {0.02, 0.05};
    fig9["sweep"] = {{"parameter", "strength"}, {"targets", {{{"zz", {3, 5, 0.0}}}}}, {"values", eps_range()}};
    add(fig9);

    json fig10 = base("fig10_tomography",
                      "Tomographic reconstruction of the diamond output for an equatorial input at azimuth pi/4 "
                      "versus ZZ crosstalk on link 3-5",
                      "tomography", 10);
    fig10["graph"] = "diamond";
    fig10["paths"] = {"p1", "p2"};
    fig10["inputs"] = {"azimuth:0.7853981633974483"};
    fig10["shots"] = 2000;
    fig10["sweep"] = {{"parameter", "strength"},
                      {"targets", {{{"zz", {3, 5, 0.0}}}}},
                      {"values", {{"range", {-0.45, 0.45, 0.15}}}}};
    add(fig10);

    json spectra = base("spectra_chain_diamond",
                        "Entanglement spectra of the 6-site chain and the diamond across the cut {4,5,6}, "
                        "with and without ZZ crosstalk on link 3-5",
                        "spectrum", 0);
    spectra["cases"] = {{{"graph", "chain:6"}, {"cut", {4, 5, 6}}},
                        {{"graph", "diamond"}, {"cut", {4, 5, 6}}},
                        {{"graph", "diamond"}, {"cut", {4, 5, 6}}, {"errors", {{{"zz", {3, 5, 0.3}}}}}}};
    add(spectra);

    json cal = base("calibration_demo",
                    "Path calibration with |0> and |+> on the 3-row hourglass (n=2) for single errors on each bulk "
                    "vertex, plus one majority-vote shot per placement",
                    "calibrate", 3);
    cal["graph"] = "hourglass:n=2,rows=3";
    cal["shots"] = 200;
    json placements = json::array();
    for (int i = 1; i <= 2; ++i)
        for (int k = 0; k < 3; ++k) placements.push_back({{"x1q", {hourglass_vertex(2, 3, i, k), "Z", pi}}});
    placements.push_back({{"x1q", {hourglass_vertex(2, 3, 1, 1), "X", 0.9}}});
    placements.push_back({{"x1q", {hourglass_vertex(2, 3, 2, 2), "X", 0.9}}});
    cal["sweep"] = {{"parameter", "placement"}, {"values", placements}};
    add(cal);
    return c;
}

}  // namespace

const std::vector<BuiltinExperiment>& list_builtin_experiments() {
    static const std::vector<BuiltinExperiment> catalog = make_catalog();
    return catalog;
}

}  // namespace sptel
