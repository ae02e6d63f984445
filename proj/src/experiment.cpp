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

#include "sptel/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Core>

#include "sptel/calibration.hpp"
#include "sptel/diagnostics.hpp"
#include "sptel/errors.hpp"
#include "sptel/graph.hpp"
#include "sptel/ground_state.hpp"
#include "sptel/kernels.hpp"
#include "sptel/parallel.hpp"
#include "sptel/rng.hpp"
#include "sptel/teleport.hpp"

#ifndef SPTEL_VERSION
#define SPTEL_VERSION "0.0.0"
#endif

namespace sptel {

using nlohmann::json;

std::string version_string() { return SPTEL_VERSION; }

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

json error_to_json(const ErrorSpec& e) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ZZCrosstalk>) return {{"zz", {v.a, v.b, v.epsilon}}};
            else if constexpr (std::is_same_v<T, SingleQubitError>)
                return {{"x1q", {v.vertex, std::string(1, letter_char(v.axis)), v.theta}}};
            else return {{"depol2q", v.p}};
        },
        e);
}

ErrorSpec error_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || j.size() != 1)
        throw ConfigError(where, "error must be an object with one key: zz, x1q or depol2q");
    const std::string key = j.begin().key();
    const json& v = j.begin().value();
    const std::string at = where + "/" + key;
    auto num = [&](const json& x, const std::string& w) {
        if (!x.is_number()) throw ConfigError(w, "expected a number");
        return x.get<double>();
    };
    auto integer = [&](const json& x, const std::string& w) {
        if (!x.is_number_integer()) throw ConfigError(w, "expected an integer vertex id");
        return x.get<int>();
    };
    if (key == "zz") {
        if (!v.is_array() || v.size() != 3) throw ConfigError(at, "expected [a, b, epsilon]");
        return ZZCrosstalk{integer(v[0], at + "/0"), integer(v[1], at + "/1"), num(v[2], at + "/2")};
    }
    if (key == "x1q") {
        if (!v.is_array() || v.size() != 3 || !v[1].is_string()) throw ConfigError(at, "expected [vertex, axis, theta]");
        const std::string ax = v[1].get<std::string>();
        if (ax != "X" && ax != "Y" && ax != "Z") throw ConfigError(at + "/1", "axis must be X, Y or Z");
        return SingleQubitError{integer(v[0], at + "/0"), letter_from_char(ax[0]), num(v[2], at + "/2")};
    }
    if (key == "depol2q") {
        const double p = num(v, at);
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(at, "probability must lie in [0, 1]");
        return Depolarizing2q{p};
    }
    throw ConfigError(where, "unknown error kind '" + key + "'");
}

namespace {

double round12(double v) { return std::round(v * 1e12) / 1e12; }

std::vector<double> expand_range(double start, double stop, double step) {
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw std::invalid_argument("range too long");
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(round12(start + static_cast<double>(i) * step));
    return out;
}

double parse_num(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("bad number '" + std::string(s) + "'");
    return v;
}

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string g12(double v) {
    if (v == 0.0) v = 0.0;  // drop negative zero
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, ptr);
}

}  // namespace

std::vector<double> parse_value_list(std::string_view text) {
    std::vector<double> out;
    if (text.empty()) return out;
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t pos = 0;
        while (true) {
            const auto c = text.find(':', pos);
            parts.push_back(parse_num(text.substr(pos, c - pos)));
            if (c == std::string_view::npos) break;
            pos = c + 1;
        }
        if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step");
        return expand_range(parts[0], parts[1], parts[2]);
    }
    std::size_t pos = 0;
    while (true) {
        const auto c = text.find(',', pos);
        out.push_back(parse_num(text.substr(pos, c - pos)));
        if (c == std::string_view::npos) break;
        pos = c + 1;
    }
    return out;
}

json parse_config_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), "invalid JSON");
    }
}

json load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError(file.string(), "cannot open config");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

// Typed form of a validated config.
struct InputSet {
    std::vector<InputState> states;
    std::string label;
};

struct Plan {
    json cfg;
    std::string name, protocol;
    std::uint64_t seed = 0;
    std::string graph_label;
    std::optional<GraphSpec> graph;
    bool has_graph = false;
    std::vector<ErrorSpec> errors;
    std::vector<std::string> paths;
    InputSet inputs;
    InputSampling sampling = InputSampling::XYPlane;
    std::size_t random_inputs = 0;
    std::size_t shots = 0;
    std::string parameter = "none";
    std::vector<double> values;
    bool has_sweep = false;
    std::vector<ErrorSpec> targets;
    std::vector<std::vector<ErrorSpec>> placements;
    std::vector<double> depolarizing{0.0};
    struct Case {
        std::string label;
        std::optional<GraphSpec> graph;
        std::vector<int> cut;
        std::vector<ErrorSpec> errors;
    };
    std::vector<Case> cases;
    HamiltonianFamily family = HamiltonianFamily::HY;
    std::vector<int> lengths;
    std::vector<int> ns;
    int rows = 2;
    int sop_row = 0;
    std::vector<InputState> known_states;
};

const std::set<std::string> kProtocols{"teleport", "tomography", "spectrum", "sop", "gslab", "calibrate"};

const std::map<std::string, std::set<std::string>> kAllowedKeys{
    {"teleport", {"graph", "errors", "paths", "inputs", "shots", "sweep", "depolarizing"}},
    {"tomography", {"graph", "errors", "paths", "inputs", "shots", "sweep"}},
    {"spectrum", {"cases", "sweep"}},
    {"sop", {"hamiltonian", "L", "rows", "row", "sweep"}},
    {"gslab", {"hamiltonian", "n", "rows", "paths", "inputs", "shots", "sweep"}},
    {"calibrate", {"graph", "errors", "shots", "known_states", "sweep"}},
};

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + "/" + key, "required field missing");
    return obj.at(key);
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError(where, "expected a string");
    return j.get<std::string>();
}

std::uint64_t get_uint(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw ConfigError(where, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError(where, "expected an integer");
    return j.get<int>();
}

std::vector<int> get_int_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where, "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], where + "/" + std::to_string(i)));
    return out;
}

std::vector<ErrorSpec> get_errors(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where, "expected an array of errors");
    std::vector<ErrorSpec> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(error_from_json(j[i], where + "/" + std::to_string(i)));
    return out;
}

std::vector<double> get_values(const json& j, const std::string& where) {
    if (j.is_array()) {
        std::vector<double> out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_number()) throw ConfigError(where + "/" + std::to_string(i), "expected a number");
            out.push_back(j[i].get<double>());
        }
        return out;
    }
    if (j.is_object() && j.contains("range") && j.size() == 1) {
        const json& r = j.at("range");
        if (!r.is_array() || r.size() != 3 || !r[0].is_number() || !r[1].is_number() || !r[2].is_number())
            throw ConfigError(where + "/range", "expected [start, stop, step]");
        try {
            return expand_range(r[0].get<double>(), r[1].get<double>(), r[2].get<double>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where + "/range", e.what());
        }
    }
    throw ConfigError(where, "expected an array of numbers or {\"range\": [start, stop, step]}");
}

std::pair<GraphSpec, std::string> get_graph(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return {parse_graph_arg(j.get<std::string>()), j.get<std::string>()};
        if (j.is_object()) {
            GraphSpec g = graph_from_json(j);
            return {g, "json:" + g.name()};
        }
    } catch (const CapacityError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(where, e.what());
    }
    throw ConfigError(where, "expected a graph string or a graph object");
}

void check_errors_on_graph(const GraphSpec& g, const std::vector<ErrorSpec>& errs, const std::string& where) {
    for (const auto& e : errs) {
        if (const auto* zz = std::get_if<ZZCrosstalk>(&e)) {
            if (!g.has_vertex(zz->a) || !g.has_vertex(zz->b) || zz->a == zz->b)
                throw ConfigError(where, "crosstalk " + to_string(e) + " names unknown or repeated vertices");
        } else if (const auto* sq = std::get_if<SingleQubitError>(&e)) {
            if (!g.has_vertex(sq->vertex)) throw ConfigError(where, "error " + to_string(e) + " names an unknown vertex");
        }
    }
}

InputSet get_inputs(const json& j, const std::string& where, std::uint64_t seed, Plan& plan) {
    InputSet set;
    if (j.is_array()) {
        if (j.empty()) throw ConfigError(where, "need at least one input");
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string w = where + "/" + std::to_string(i);
            try {
                set.states.push_back(InputState::parse(get_string(j[i], w)));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(w, e.what());
            }
        }
        set.label = j.size() == 1 ? j[0].get<std::string>() : "list:" + std::to_string(j.size());
        return set;
    }
    if (!j.is_object()) throw ConfigError(where, "expected a list of states or {\"random\": k, \"sampling\": ...}");
    for (const auto& [k, v] : j.items())
        if (k != "random" && k != "sampling") throw ConfigError(where + "/" + k, "unknown field");
    const std::size_t count = get_uint(field(j, "random", where), where + "/random");
    if (count == 0) throw ConfigError(where + "/random", "need at least one input");
    const std::string sampling = j.contains("sampling") ? get_string(j["sampling"], where + "/sampling") : "bloch";
    if (sampling != "bloch" && sampling != "xy") throw ConfigError(where + "/sampling", "expected bloch or xy");
    plan.sampling = sampling == "xy" ? InputSampling::XYPlane : InputSampling::BlochSphere;
    plan.random_inputs = count;
    Rng rng(seed, 1);
    for (std::size_t i = 0; i < count; ++i) {
        if (sampling == "xy") {
            set.states.push_back({std::numbers::pi / 2, 2 * std::numbers::pi * rng.uniform()});
        } else {
            const double polar = std::acos(1.0 - 2.0 * rng.uniform());
            set.states.push_back({polar, 2 * std::numbers::pi * rng.uniform()});
        }
    }
    set.label = "random:" + std::to_string(count) + ":" + sampling;
    return set;
}

void require_capacity(std::size_t qubits, bool mixed) {
    const std::size_t cap = mixed ? kMaxDensityQubits : kMaxStateQubits;
    if (qubits > cap)
        throw CapacityError(std::string(mixed ? "density-matrix" : "statevector") + " run needs " +
                            std::to_string(qubits) + " qubits; the cap is " + std::to_string(cap));
}

Plan make_plan(const json& cfg) {
    Plan p;
    p.cfg = cfg;
    if (!cfg.is_object()) throw ConfigError("/", "config must be a JSON object");
    const auto version = get_int(field(cfg, "schema_version", ""), "/schema_version");
    if (version != kConfigSchemaVersion)
        throw ConfigError("/schema_version", "unsupported version " + std::to_string(version) + " (expected " +
                                                 std::to_string(kConfigSchemaVersion) + ")");
    p.name = get_string(field(cfg, "name", ""), "/name");
    p.protocol = get_string(field(cfg, "protocol", ""), "/protocol");
    if (!kProtocols.count(p.protocol))
        throw ConfigError("/protocol", "unknown protocol '" + p.protocol +
                                           "' (teleport, tomography, spectrum, sop, gslab, calibrate)");
    p.seed = get_uint(field(cfg, "seed", ""), "/seed");
    const json& out = field(cfg, "output", "");
    if (!out.is_object()) throw ConfigError("/output", "expected an object");
    get_string(field(out, "csv", "/output"), "/output/csv");
    if (out.contains("manifest")) get_string(out["manifest"], "/output/manifest");
    for (const auto& [k, v] : out.items())
        if (k != "csv" && k != "manifest") throw ConfigError("/output/" + k, "unknown field");

    const auto& allowed = kAllowedKeys.at(p.protocol);
    for (const auto& [k, v] : cfg.items()) {
        if (k == "schema_version" || k == "name" || k == "description" || k == "protocol" || k == "seed" ||
            k == "output")
            continue;
        if (!allowed.count(k)) throw ConfigError("/" + k, "field not used by protocol '" + p.protocol + "'");
    }
    if (cfg.contains("description")) get_string(cfg["description"], "/description");

    const bool graph_protocol = p.protocol == "teleport" || p.protocol == "tomography" || p.protocol == "calibrate";
    if (graph_protocol) {
        auto [g, label] = get_graph(field(cfg, "graph", ""), "/graph");
        p.graph = std::move(g);
        p.graph_label = label;
        p.has_graph = true;
        if (cfg.contains("errors")) p.errors = get_errors(cfg["errors"], "/errors");
        check_errors_on_graph(*p.graph, p.errors, "/errors");
    }

    if (cfg.contains("sweep")) {
        const json& sw = cfg["sweep"];
        if (!sw.is_object()) throw ConfigError("/sweep", "expected an object");
        p.parameter = get_string(field(sw, "parameter", "/sweep"), "/sweep/parameter");
        p.has_sweep = true;
        const std::string want = p.protocol == "sop" || p.protocol == "gslab" ? "alpha"
                                 : p.protocol == "calibrate"                  ? "placement"
                                                                              : "strength";
        if (p.parameter != want)
            throw ConfigError("/sweep/parameter", "protocol '" + p.protocol + "' sweeps '" + want + "'");
        for (const auto& [k, v] : sw.items()) {
            const bool ok = k == "parameter" || k == "values" || (k == "targets" && want == "strength");
            if (!ok) throw ConfigError("/sweep/" + k, "unknown field");
        }
        if (want == "placement") {
            const json& vals = field(sw, "values", "/sweep");
            if (!vals.is_array()) throw ConfigError("/sweep/values", "expected an array of error placements");
            for (std::size_t i = 0; i < vals.size(); ++i) {
                const std::string w = "/sweep/values/" + std::to_string(i);
                p.placements.push_back(vals[i].is_array() ? get_errors(vals[i], w)
                                                          : std::vector<ErrorSpec>{error_from_json(vals[i], w)});
                check_errors_on_graph(*p.graph, p.placements.back(), w);
            }
        } else {
            p.values = get_values(field(sw, "values", "/sweep"), "/sweep/values");
        }
        if (want == "strength") {
            p.targets = get_errors(field(sw, "targets", "/sweep"), "/sweep/targets");
            if (p.targets.empty()) throw ConfigError("/sweep/targets", "need at least one swept error");
            if (p.has_graph) check_errors_on_graph(*p.graph, p.targets, "/sweep/targets");
        }
        if (want == "alpha")
            for (std::size_t i = 0; i < p.values.size(); ++i)
                if (!(p.values[i] >= 0.0 && p.values[i] <= std::numbers::pi / 2 + 1e-12))
                    throw ConfigError("/sweep/values/" + std::to_string(i), "alpha must lie in [0, pi/2]");
        if (want == "strength" && p.protocol != "spectrum")
            for (const auto& t : p.targets)
                if (std::holds_alternative<Depolarizing2q>(t))
                    for (std::size_t i = 0; i < p.values.size(); ++i)
                        if (!(p.values[i] >= 0.0 && p.values[i] <= 1.0))
                            throw ConfigError("/sweep/values/" + std::to_string(i),
                                              "depolarizing probability must lie in [0, 1]");
    } else if (p.protocol == "sop" || p.protocol == "gslab" || p.protocol == "calibrate") {
        throw ConfigError("/sweep", "required field missing");
    }

    if (p.protocol == "teleport" || p.protocol == "tomography") {
        if (cfg.contains("paths")) {
            const json& ps = cfg["paths"];
            if (!ps.is_array() || ps.empty()) throw ConfigError("/paths", "expected a nonempty array of path ids");
            for (std::size_t i = 0; i < ps.size(); ++i) {
                const std::string w = "/paths/" + std::to_string(i);
                const std::string id = get_string(ps[i], w);
                try {
                    p.graph->path(id);
                } catch (const std::exception& e) {
                    throw ConfigError(w, e.what());
                }
                p.paths.push_back(id);
            }
        } else {
            for (const auto& np : p.graph->paths()) p.paths.push_back(np.id);
        }
        for (const auto& id : p.paths) {
            try {
                byproduct_for_path(*p.graph, id);
            } catch (const std::exception& e) {
                throw ConfigError("/paths", "path '" + id + "': " + e.what());
            }
        }
        p.inputs = get_inputs(field(cfg, "inputs", ""), "/inputs", p.seed, p);
        p.shots = get_uint(field(cfg, "shots", ""), "/shots");
        if (p.protocol == "tomography" && p.shots == 0) throw ConfigError("/shots", "tomography needs shots > 0");
        if (cfg.contains("depolarizing")) {
            const json& d = cfg["depolarizing"];
            p.depolarizing = get_values(d, "/depolarizing");
            for (std::size_t i = 0; i < p.depolarizing.size(); ++i)
                if (!(p.depolarizing[i] >= 0.0 && p.depolarizing[i] <= 1.0))
                    throw ConfigError("/depolarizing/" + std::to_string(i), "probability must lie in [0, 1]");
            if (p.depolarizing.empty()) throw ConfigError("/depolarizing", "need at least one probability");
        }
        bool mixed = false;
        for (double d : p.depolarizing) mixed |= d > 0.0;
        for (const auto& e : p.errors) mixed |= std::holds_alternative<Depolarizing2q>(e);
        for (const auto& e : p.targets) mixed |= std::holds_alternative<Depolarizing2q>(e);
        require_capacity(p.graph->num_qubits(), mixed);
    }

    if (p.protocol == "spectrum") {
        const json& cs = field(cfg, "cases", "");
        if (!cs.is_array() || cs.empty()) throw ConfigError("/cases", "expected a nonempty array");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string w = "/cases/" + std::to_string(i);
            if (!cs[i].is_object()) throw ConfigError(w, "expected an object");
            for (const auto& [k, v] : cs[i].items())
                if (k != "graph" && k != "cut" && k != "errors") throw ConfigError(w + "/" + k, "unknown field");
            Plan::Case c;
            auto [g, label] = get_graph(field(cs[i], "graph", w), w + "/graph");
            c.graph = std::move(g);
            c.label = label;
            c.cut = get_int_list(field(cs[i], "cut", w), w + "/cut");
            if (c.cut.empty()) throw ConfigError(w + "/cut", "need at least one vertex");
            for (std::size_t k = 0; k < c.cut.size(); ++k)
                if (!c.graph->has_vertex(c.cut[k]))
                    throw ConfigError(w + "/cut/" + std::to_string(k), "unknown vertex " + std::to_string(c.cut[k]));
            if (cs[i].contains("errors")) c.errors = get_errors(cs[i]["errors"], w + "/errors");
            check_errors_on_graph(*c.graph, c.errors, w + "/errors");
            check_errors_on_graph(*c.graph, p.targets, "/sweep/targets");
            for (const auto& e : c.errors)
                if (std::holds_alternative<Depolarizing2q>(e))
                    throw ConfigError(w + "/errors", "spectra are computed for coherent errors only");
            require_capacity(c.graph->num_qubits(), false);
            p.cases.push_back(std::move(c));
        }
        for (const auto& e : p.targets)
            if (std::holds_alternative<Depolarizing2q>(e))
                throw ConfigError("/sweep/targets", "spectra are computed for coherent errors only");
    }

    if (p.protocol == "sop" || p.protocol == "gslab") {
        try {
            p.family = hamiltonian_family_from_string(get_string(field(cfg, "hamiltonian", ""), "/hamiltonian"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("/hamiltonian", e.what());
        }
        if (cfg.contains("rows")) p.rows = get_int(cfg["rows"], "/rows");
        if (p.rows != 2 && p.rows != 3) throw ConfigError("/rows", "rows must be 2 or 3");
    }
    if (p.protocol == "sop") {
        p.lengths = get_int_list(field(cfg, "L", ""), "/L");
        for (std::size_t i = 0; i < p.lengths.size(); ++i) {
            const int L = p.lengths[i];
            const std::string w = "/L/" + std::to_string(i);
            if (L < 2 + p.rows || (L - 2) % p.rows != 0)
                throw ConfigError(w, "L must equal rows*n + 2 with n >= 1");
            require_capacity(static_cast<std::size_t>(L), false);
        }
        if (cfg.contains("row")) p.sop_row = get_int(cfg["row"], "/row");
        if (p.sop_row < 0 || p.sop_row >= p.rows) throw ConfigError("/row", "row index out of range");
    }
    if (p.protocol == "gslab") {
        p.ns = get_int_list(field(cfg, "n", ""), "/n");
        for (std::size_t i = 0; i < p.ns.size(); ++i) {
            if (p.ns[i] < 1) throw ConfigError("/n/" + std::to_string(i), "n must be at least 1");
            require_capacity(static_cast<std::size_t>(p.rows * p.ns[i] + 3), false);
        }
        p.paths = {"upper", "lower"};
        if (cfg.contains("paths")) {
            p.paths.clear();
            const json& ps = cfg["paths"];
            if (!ps.is_array() || ps.empty()) throw ConfigError("/paths", "expected a nonempty array of path ids");
            for (std::size_t i = 0; i < ps.size(); ++i) p.paths.push_back(get_string(ps[i], "/paths/" + std::to_string(i)));
        }
        for (int n : p.ns) {
            const GraphSpec g = build_hourglass(n, p.rows);
            for (const auto& id : p.paths) {
                try {
                    g.path(id);
                } catch (const std::exception& e) {
                    throw ConfigError("/paths", e.what());
                }
            }
        }
        const json& in = field(cfg, "inputs", "");
        if (!in.is_object()) throw ConfigError("/inputs", "gslab expects {\"random\": k, \"sampling\": ...}");
        get_inputs(in, "/inputs", p.seed, p);
        p.shots = get_uint(field(cfg, "shots", ""), "/shots");
    }
    if (p.protocol == "calibrate") {
        p.shots = cfg.contains("shots") ? get_uint(cfg["shots"], "/shots") : 200;
        if (p.graph->paths().size() < 2) throw ConfigError("/graph", "calibration needs at least two paths");
        if (cfg.contains("known_states")) {
            const json& ks = cfg["known_states"];
            if (!ks.is_array() || ks.empty()) throw ConfigError("/known_states", "expected a nonempty array");
            for (std::size_t i = 0; i < ks.size(); ++i) {
                const std::string w = "/known_states/" + std::to_string(i);
                try {
                    p.known_states.push_back(InputState::parse(get_string(ks[i], w)));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(w, e.what());
                }
            }
        } else {
            p.known_states = CalibrationOptions{}.known_states;
        }
        require_capacity(p.graph->num_qubits(), false);
    }
    return p;
}

using Row = std::vector<std::string>;
using Task = std::function<std::vector<Row>()>;

std::string join_errors(const std::vector<ErrorSpec>& errs) {
    std::string s;
    for (const auto& e : errs) {
        if (!s.empty()) s += ' ';
        s += to_string(e);
    }
    return s.empty() ? "none" : s;
}

std::vector<ErrorSpec> errors_at(const Plan& p, const std::vector<ErrorSpec>& base, double value, double depol) {
    std::vector<ErrorSpec> errs = base;
    for (const auto& t : p.targets) errs.push_back(with_strength(t, value));
    if (depol > 0.0) errs.push_back(Depolarizing2q{depol});
    return errs;
}

std::vector<double> point_values(const Plan& p) {
    if (p.has_sweep) return p.values;
    return {std::numeric_limits<double>::quiet_NaN()};
}

std::string value_str(double v) { return std::isnan(v) ? "" : shortest(v); }

void teleport_tasks(const Plan& p, std::vector<std::string>& header, std::vector<Task>& tasks) {
    header = {"experiment", "seed", "graph", "errors", "parameter", "value", "p_depol", "path",
              "input", "inputs", "shots", "fidelity", "stderr", "channel_class"};
    const Rng root(p.seed);
    const auto values = point_values(p);
    for (double v : values)
        for (double d : p.depolarizing) {
            const std::size_t index = tasks.size();
            tasks.push_back([&p, v, d, index, root] {
                const auto errs = errors_at(p, p.errors, v, d);
                std::vector<Row> rows;
                for (std::size_t k = 0; k < p.paths.size(); ++k) {
                    double sum = 0.0;
                    for (std::size_t i = 0; i < p.inputs.states.size(); ++i) {
                        if (p.shots == 0) {
                            sum += fidelity_exact(*p.graph, errs, p.inputs.states[i], p.paths[k]);
                        } else {
                            const std::uint64_t s = root.split(index).split(k).split(i).next();
                            sum += run_teleport(*p.graph, errs, p.inputs.states[i], p.paths[k],
                                                {p.shots, s, SamplingMode::Joint, false})
                                       .fidelity;
                        }
                    }
                    const double n = static_cast<double>(p.inputs.states.size());
                    const double f = std::clamp(sum / n, 0.0, 1.0);
                    const double se = p.shots ? std::sqrt(f * (1 - f) / (n * static_cast<double>(p.shots))) : 0.0;
                    rows.push_back({p.name, std::to_string(p.seed), p.graph_label, join_errors(errs), p.parameter,
                                    value_str(v), shortest(d), p.paths[k], p.inputs.label,
                                    std::to_string(p.inputs.states.size()), std::to_string(p.shots), g12(f), g12(se),
                                    to_string(classify_channel(f))});
                }
                return rows;
            });
        }
}

void tomography_tasks(const Plan& p, std::vector<std::string>& header, std::vector<Task>& tasks) {
    header = {"experiment", "seed", "graph", "errors", "parameter", "value", "path", "input",
              "shots_per_basis", "bloch_x", "bloch_y", "bloch_z", "fidelity", "clipped"};
    const Rng root(p.seed);
    for (double v : point_values(p)) {
        const std::size_t index = tasks.size();
        tasks.push_back([&p, v, index, root] {
            const auto errs = errors_at(p, p.errors, v, 0.0);
            std::vector<Row> rows;
            for (std::size_t k = 0; k < p.paths.size(); ++k)
                for (std::size_t i = 0; i < p.inputs.states.size(); ++i) {
                    const std::uint64_t s = root.split(index).split(k).split(i).next();
                    const auto t = tomography_teleport(*p.graph, errs, p.inputs.states[i], p.paths[k], p.shots, s);
                    rows.push_back({p.name, std::to_string(p.seed), p.graph_label, join_errors(errs), p.parameter,
                                    value_str(v), p.paths[k], p.inputs.states[i].str(), std::to_string(p.shots),
                                    g12(t.bloch[0]), g12(t.bloch[1]), g12(t.bloch[2]), g12(t.fidelity),
                                    t.clipped ? "1" : "0"});
                }
            return rows;
        });
    }
}

void spectrum_tasks(const Plan& p, std::vector<std::string>& header, std::vector<Task>& tasks) {
    header = {"experiment", "seed", "graph", "errors", "cut", "parameter", "value", "rank", "nonzero_eigenvalues",
              "degeneracy_classes"};
    for (const auto& c : p.cases)
        for (double v : point_values(p)) {
            tasks.push_back([&p, &c, v] {
                const auto errs = errors_at(p, c.errors, v, 0.0);
                const StateVector psi = prepare_state(compile_preparation(*c.graph, errs));
                const auto es = entanglement_spectrum(*c.graph, psi, c.cut);
                std::string cut, evs, deg;
                for (int x : c.cut) cut += (cut.empty() ? "" : ";") + std::to_string(x);
                const auto nz = es.nonzero();
                for (double e : nz) evs += (evs.empty() ? "" : ";") + g12(e);
                for (const auto& cls : es.degeneracy_classes) deg += (deg.empty() ? "" : ";") + std::to_string(cls.size());
                return std::vector<Row>{{p.name, std::to_string(p.seed), c.label, join_errors(errs), cut, p.parameter,
                                         value_str(v), std::to_string(nz.size()), evs, deg}};
            });
        }
}

void sop_tasks(const Plan& p, std::vector<std::string>& header, std::vector<Task>& tasks) {
    header = {"experiment", "seed", "hamiltonian", "L", "n", "rows", "alpha", "row", "operator", "repaired",
              "sop", "energy", "residual", "converged"};
    for (int L : p.lengths)
        for (double a : p.values) {
            tasks.push_back([&p, L, a] {
                const int n = (L - 2) / p.rows;
                const HamiltonianSpec spec{p.family, n, p.rows, a};
                LanczosOptions opt;
                opt.compute_gap = false;
                opt.seed = p.seed;
                const GroundState gs = ground_state(spec, opt);
                const SopOperator op = sop_operator(n, p.rows, L, p.sop_row);
                const double s = string_order_parameter(gs.psi, op);
                return std::vector<Row>{{p.name, std::to_string(p.seed), to_string(p.family), std::to_string(L),
                                         std::to_string(n), std::to_string(p.rows), shortest(a),
                                         std::to_string(p.sop_row), op.used.str(), op.repaired ? "1" : "0", g12(s),
                                         g12(gs.energy), g12(gs.residual), gs.converged ? "1" : "0"}};
            });
        }
}

void gslab_tasks(const Plan& p, std::vector<std::string>& header, std::vector<Task>& tasks) {
    header = {"experiment", "seed", "hamiltonian", "N", "n", "rows", "alpha", "path", "sampling", "inputs",
              "shots", "mean_success", "stderr", "mean_exact", "degenerate", "energy"};
    const Rng root(p.seed);
    for (int n : p.ns)
        for (double a : p.values) {
            const std::size_t index = tasks.size();
            tasks.push_back([&p, n, a, index, root] {
                SweepOptions so;
                so.paths = p.paths;
                so.inputs = p.random_inputs;
                so.shots = p.shots;
                so.seed = root.split(index).next();
                so.sampling = p.sampling;
                so.rows = p.rows;
                std::vector<Row> rows;
                for (const auto& r : fidelity_vs_alpha_sweep(p.family, {a}, {n}, so))
                    rows.push_back({p.name, std::to_string(p.seed), to_string(p.family), std::to_string(r.num_qubits),
                                    std::to_string(n), std::to_string(p.rows), shortest(a), r.path,
                                    p.sampling == InputSampling::XYPlane ? "xy" : "bloch", std::to_string(r.inputs),
                                    std::to_string(r.shots), g12(r.mean_success), g12(r.stderr_), g12(r.mean_exact),
                                    r.degenerate ? "1" : "0", g12(r.energy)});
                return rows;
            });
        }
}

void calibrate_tasks(const Plan& p, std::vector<std::string>& header, std::vector<Task>& tasks) {
    header = {"experiment", "seed", "graph", "placement", "shots", "chosen", "chosen_exact_fidelity",
              "table", "majority_flagged"};
    const Rng root(p.seed);
    for (std::size_t i = 0; i < p.placements.size(); ++i) {
        tasks.push_back([&p, i, root] {
            std::vector<ErrorSpec> errs = p.errors;
            errs.insert(errs.end(), p.placements[i].begin(), p.placements[i].end());
            CalibrationOptions opt;
            opt.known_states = p.known_states;
            opt.shots = p.shots;
            opt.seed = root.split(i).next();
            opt.exact = p.shots == 0;
            const CalibrationResult r = calibrate_path(*p.graph, errs, opt);
            std::string table;
            for (const auto& s : r.table) table += (table.empty() ? "" : ";") + s.path_id + "=" + g12(s.fidelity);
            double chosen_exact = 0.0;
            if (!r.unprotected) {
                for (const auto& st : p.known_states) chosen_exact += fidelity_exact(*p.graph, errs, st, r.chosen);
                chosen_exact /= static_cast<double>(p.known_states.size());
            }
            std::string flagged;
            if (p.graph->family == "hourglass" && p.graph->hourglass_rows == 3) {
                const auto mv = majority_vote_teleport(*p.graph, errs, p.known_states.front(), root.split(i).split(1).next());
                flagged = mv.all_disagree ? "all_disagree" : mv.flagged.value_or("none");
            }
            return std::vector<Row>{{p.name, std::to_string(p.seed), p.graph_label, join_errors(p.placements[i]),
                                     std::to_string(p.shots), r.chosen, g12(chosen_exact), table, flagged}};
        });
    }
}

std::string iso_utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

void validate_config(const json& cfg) { make_plan(cfg); }

ExperimentResult run_experiment(const json& cfg, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const Plan plan = make_plan(cfg);
    ExperimentResult res;
    std::vector<Task> tasks;
    if (plan.protocol == "teleport") teleport_tasks(plan, res.header, tasks);
    else if (plan.protocol == "tomography") tomography_tasks(plan, res.header, tasks);
    else if (plan.protocol == "spectrum") spectrum_tasks(plan, res.header, tasks);
    else if (plan.protocol == "sop") sop_tasks(plan, res.header, tasks);
    else if (plan.protocol == "gslab") gslab_tasks(plan, res.header, tasks);
    else calibrate_tasks(plan, res.header, tasks);

    const std::size_t workers = options.threads ? options.threads : worker_count();
    const auto chunks = parallel_map(tasks.size(), [&tasks](std::size_t i) { return tasks[i](); }, workers);
    for (const auto& c : chunks) res.rows.insert(res.rows.end(), c.begin(), c.end());

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(cfg.dump())));
    res.manifest = {{"experiment", plan.name},
                    {"protocol", plan.protocol},
                    {"config_hash", std::string("fnv1a64:") + hash},
                    {"seed", plan.seed},
                    {"schema_version", kConfigSchemaVersion},
                    {"sptel_version", version_string()},
                    {"eigen_version", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                          "." + std::to_string(EIGEN_MINOR_VERSION)},
                    {"kernel_backend", kernels().name},
                    {"threads", std::min(workers, std::max<std::size_t>(tasks.size(), 1))},
                    {"sweep_points", tasks.size()},
                    {"rows", res.rows.size()},
                    {"wall_time_s", wall},
                    {"finished_at", iso_utc_now()},
                    {"config", cfg}};
    return res;
}

std::string to_csv(const ExperimentResult& r) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cells[i]);
        }
        out += '\n';
    };
    line(r.header);
    for (const auto& row : r.rows) line(row);
    return out;
}

std::pair<std::filesystem::path, std::filesystem::path> write_outputs(const ExperimentResult& r,
                                                                      const std::filesystem::path& csv,
                                                                      std::filesystem::path manifest) {
    if (manifest.empty()) manifest = std::filesystem::path(csv.string() + ".manifest.json");
    for (const auto& f : {csv, manifest})
        if (f.has_parent_path()) std::filesystem::create_directories(f.parent_path());
    {
        std::ofstream out(csv, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + csv.string());
        out << to_csv(r);
    }
    json m = r.manifest;
    m["csv"] = csv.string();
    std::ofstream out(manifest, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + manifest.string());
    out << m.dump(2) << '\n';
    return {csv, manifest};
}

}  // namespace sptel
