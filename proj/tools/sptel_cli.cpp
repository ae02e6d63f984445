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

// Command-line front end. Every sweep command builds an experiment config and
// goes through the same validator and runner as `run`.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "sptel/calibration.hpp"
#include "sptel/diagnostics.hpp"
#include "sptel/errors.hpp"
#include "sptel/experiment.hpp"
#include "sptel/graph.hpp"
#include "sptel/kernels.hpp"
#include "sptel/teleport.hpp"

using namespace sptel;
using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRefused = 3;

json errors_json(const std::vector<std::string>& specs) {
    json arr = json::array();
    for (const auto& s : specs) arr.push_back(error_to_json(parse_error_spec(s)));
    return arr;
}

json values_json(const std::string& text) {
    json arr = json::array();
    for (double v : parse_value_list(text)) arr.push_back(v);
    return arr;
}

json int_list(const std::string& text) {
    json arr = json::array();
    for (double v : parse_value_list(text)) arr.push_back(static_cast<int>(v));
    return arr;
}

json base_config(const std::string& name, const std::string& protocol, std::uint64_t seed, const std::string& out) {
    return {{"schema_version", kConfigSchemaVersion},
            {"name", name},
            {"protocol", protocol},
            {"seed", seed},
            {"output", {{"csv", out.empty() ? "-" : out}}}};
}

void emit(const json& cfg, const std::string& out, const std::string& manifest, std::size_t threads) {
    const ExperimentResult r = run_experiment(cfg, {threads});
    if (out.empty() || out == "-") {
        std::cout << to_csv(r);
        return;
    }
    const auto [csv, man] = write_outputs(r, out, manifest);
    std::cerr << "wrote " << csv.string() << " (" << r.rows.size() << " rows) and " << man.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulation of string-symmetry protected teleportation on graph states"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "worker threads (default: SPT_THREADS or all cores)");
    std::string backend = "auto";
    app.add_option("--kernels", backend, "amplitude kernels: auto, scalar or avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    // teleport
    auto* tel = app.add_subcommand("teleport", "teleportation fidelity along graph paths");
    std::string graph = "diamond", out, manifest;
    std::vector<std::string> paths, error_specs, sweep_errors, inputs;
    std::string values, depol;
    std::size_t shots = 0, random_inputs = 0;
    std::string sampling = "bloch";
    std::uint64_t seed = 0;
    tel->add_option("--graph", graph, "chain:N, diamond, hourglass:n=..,rows=.. or a JSON file");
    tel->add_option("--path", paths, "path id or alias (repeatable; default all)");
    tel->add_option("--error", error_specs, "fixed error: zz:a,b,eps | x1q:v,AXIS,theta | depol2q:p");
    tel->add_option("--sweep-error", sweep_errors, "error whose strength follows --values (repeatable)");
    tel->add_option("--values", values, "sweep values, start:stop:step or a,b,c");
    tel->add_option("--depol", depol, "two-qubit depolarizing probabilities, one series each");
    tel->add_option("--input", inputs, "input state: 0, 1, +, -, +i, -i, polar:a,b or azimuth:b");
    tel->add_option("--random-inputs", random_inputs, "average over this many random inputs instead");
    tel->add_option("--sampling", sampling, "random input distribution")->check(CLI::IsMember({"bloch", "xy"}));
    tel->add_option("--shots", shots, "shots per input; 0 gives the exact branch average");
    tel->add_option("--seed", seed);
    tel->add_option("--out", out, "CSV file (default: stdout)");
    tel->add_option("--manifest", manifest);

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "entanglement spectrum of a graph state across a cut");
    std::string cut;
    spec->add_option("--graph", graph);
    spec->add_option("--cut", cut, "region A vertex ids, e.g. 4,5,6")->required();
    spec->add_option("--error", error_specs);
    spec->add_option("--out", out);

    // sop
    auto* sop = app.add_subcommand("sop", "string order parameter of perturbed hourglass ground states");
    std::string family = "hy", lengths = "6,10,14", alphas = "0:1.5:0.05";
    int rows = 2, sop_row = 0;
    sop->add_option("--hamiltonian", family)->check(CLI::IsMember({"hy", "hz", "hz_lower"}));
    sop->add_option("--alpha-sweep", alphas);
    sop->add_option("--L", lengths, "resource sizes L = rows*n + 2");
    sop->add_option("--rows", rows);
    sop->add_option("--row", sop_row, "row whose string is evaluated");
    sop->add_option("--seed", seed);
    sop->add_option("--out", out);
    sop->add_option("--manifest", manifest);

    // gslab
    auto* gs = app.add_subcommand("gslab", "teleportation through perturbed ground states");
    std::string ns = "2";
    std::size_t gs_inputs = 25, gs_shots = 100;
    std::uint64_t gs_seed = 7;
    std::vector<std::string> gs_paths{"upper", "lower"};
    std::string gs_sampling = "xy";
    gs->add_option("--family", family)->check(CLI::IsMember({"hy", "hz", "hz_lower"}));
    gs->add_option("--n", ns, "bulk column counts, e.g. 2,4");
    gs->add_option("--alpha", alphas, "alpha grid");
    gs->add_option("--inputs", gs_inputs);
    gs->add_option("--sampling", gs_sampling)->check(CLI::IsMember({"bloch", "xy"}));
    gs->add_option("--shots", gs_shots);
    gs->add_option("--seed", gs_seed);
    gs->add_option("--rows", rows);
    gs->add_option("--path", gs_paths);
    gs->add_option("--out", out);
    gs->add_option("--manifest", manifest);

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "choose an uncorrupted path by teleporting known states");
    std::size_t cal_shots = 200;
    bool exact = false;
    cal->add_option("--graph", graph);
    cal->add_option("--error", error_specs);
    cal->add_option("--shots", cal_shots);
    cal->add_flag("--exact", exact, "use branch-averaged fidelities");
    cal->add_option("--seed", seed);

    // run
    auto* run = app.add_subcommand("run", "run an experiment config");
    std::string config;
    run->add_option("config", config, "JSON config file or builtin name")->required();
    run->add_option("--out", out, "override the CSV path");
    run->add_option("--manifest", manifest, "override the manifest path");

    // list
    auto* lst = app.add_subcommand("list", "builtin experiment catalog");
    std::string write_dir, show;
    lst->add_option("--write-dir", write_dir, "write every builtin config into this directory");
    lst->add_option("--show", show, "print one builtin config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; every other parse failure is a usage error.
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        set_kernel_backend(backend);
        if (*tel) {
            json cfg = base_config("teleport", "teleport", seed, out);
            cfg["graph"] = graph;
            cfg["errors"] = errors_json(error_specs);
            if (!paths.empty()) cfg["paths"] = paths;
            if (random_inputs > 0) cfg["inputs"] = {{"random", random_inputs}, {"sampling", sampling}};
            else cfg["inputs"] = inputs.empty() ? std::vector<std::string>{"0"} : inputs;
            cfg["shots"] = shots;
            if (!sweep_errors.empty() || !values.empty()) {
                if (sweep_errors.empty() || values.empty()) throw ConfigError("--values", "needs --sweep-error too");
                cfg["sweep"] = {{"parameter", "strength"}, {"targets", errors_json(sweep_errors)}, {"values", values_json(values)}};
            }
            if (!depol.empty()) cfg["depolarizing"] = values_json(depol);
            emit(cfg, out, manifest, threads);
        } else if (*spec) {
            json cfg = base_config("spectrum", "spectrum", 0, out);
            json c = {{"graph", graph}, {"cut", int_list(cut)}};
            if (!error_specs.empty()) c["errors"] = errors_json(error_specs);
            cfg["cases"] = json::array({c});
            if (!out.empty()) {
                emit(cfg, out, manifest, threads);
            } else {
                validate_config(cfg);
                const GraphSpec g = parse_graph_arg(graph);
                std::vector<ErrorSpec> errs;
                for (const auto& s : error_specs) errs.push_back(parse_error_spec(s));
                std::vector<int> region;
                for (const auto& v : c["cut"]) region.push_back(v.get<int>());
                const auto es = entanglement_spectrum(g, prepare_state(compile_preparation(g, errs)), region);
                std::printf("graph %s, cut %s\nnonzero eigenvalues:", g.name().c_str(), cut.c_str());
                for (double e : es.nonzero()) std::printf(" %.12g", e);
                std::printf("\ndegeneracy classes:");
                for (const auto& cls : es.degeneracy_classes) std::printf(" %zu-fold", cls.size());
                std::printf("\n");
            }
        } else if (*sop) {
            json cfg = base_config("sop", "sop", seed ? seed : 12345, out);
            cfg["hamiltonian"] = family;
            cfg["L"] = int_list(lengths);
            cfg["rows"] = rows;
            cfg["row"] = sop_row;
            cfg["sweep"] = {{"parameter", "alpha"}, {"values", values_json(alphas)}};
            emit(cfg, out, manifest, threads);
        } else if (*gs) {
            json cfg = base_config("gslab", "gslab", gs_seed, out);
            cfg["hamiltonian"] = family;
            cfg["n"] = int_list(ns);
            cfg["rows"] = rows;
            cfg["paths"] = gs_paths;
            cfg["inputs"] = {{"random", gs_inputs}, {"sampling", gs_sampling}};
            cfg["shots"] = gs_shots;
            cfg["sweep"] = {{"parameter", "alpha"}, {"values", values_json(alphas)}};
            emit(cfg, out, manifest, threads);
        } else if (*cal) {
            const GraphSpec g = parse_graph_arg(graph);
            std::vector<ErrorSpec> errs;
            for (const auto& s : error_specs) errs.push_back(parse_error_spec(s));
            CalibrationOptions opt;
            opt.shots = cal_shots;
            opt.seed = seed;
            opt.exact = exact;
            const CalibrationResult r = calibrate_path(g, errs, opt);
            std::printf("%-10s %-10s %10s %10s\n", "path", "label", "fidelity", "stderr");
            for (const auto& s : r.table)
                std::printf("%-10s %-10s %10.4f %10.4f\n", s.path_id.c_str(), s.label.c_str(), s.fidelity, s.stderr_);
            std::printf("selected: %s\n", r.chosen.c_str());
            if (g.family == "hourglass" && g.hourglass_rows == 3) {
                const auto mv = majority_vote_teleport(g, errs, opt.known_states.front(), seed);
                std::printf("majority vote: %s\n", mv.all_disagree ? "all rows disagree"
                                                   : mv.flagged ? ("flagged " + *mv.flagged).c_str()
                                                                : "all rows agree");
            }
        } else if (*run) {
            json cfg;
            bool builtin = false;
            for (const auto& b : list_builtin_experiments())
                if (b.name == config && !std::filesystem::exists(config)) {
                    cfg = b.config;
                    builtin = true;
                }
            if (!builtin) cfg = load_config(config);
            validate_config(cfg);
            const std::string csv = out.empty() ? cfg["output"]["csv"].get<std::string>() : out;
            std::string man = manifest;
            if (man.empty() && out.empty() && cfg["output"].contains("manifest"))
                man = cfg["output"]["manifest"].get<std::string>();
            emit(cfg, csv, man, threads);
        } else if (*lst) {
            const auto& catalog = list_builtin_experiments();
            if (!show.empty()) {
                for (const auto& b : catalog)
                    if (b.name == show) {
                        std::cout << b.config.dump(2) << "\n";
                        return 0;
                    }
                std::cerr << "unknown builtin experiment '" << show << "'\n";
                return kExitConfig;
            }
            if (!write_dir.empty()) {
                std::filesystem::create_directories(write_dir);
                for (const auto& b : catalog) {
                    std::ofstream f(std::filesystem::path(write_dir) / (b.name + ".json"));
                    f << b.config.dump(2) << "\n";
                }
            }
            for (const auto& b : catalog) std::printf("%-24s %s\n", b.name.c_str(), b.description.c_str());
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error at " << e.what() << "\n";
        return kExitConfig;
    } catch (const CapacityError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitRefused;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
