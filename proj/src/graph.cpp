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

#include "sptel/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sptel/errors.hpp"

namespace sptel {

std::string to_string(StabilizerKind k) { return k == StabilizerKind::X ? "X" : "Y"; }

std::string to_string(Role r) {
    switch (r) {
        case Role::Input: return "input";
        case Role::Middle: return "middle";
        case Role::Output: return "output";
    }
    return "?";
}

std::string to_string(MeasureBasis b) {
    switch (b) {
        case MeasureBasis::X: return "X";
        case MeasureBasis::Y: return "Y";
        case MeasureBasis::MinusY: return "-Y";
        case MeasureBasis::Z: return "Z";
        case MeasureBasis::None: return "none";
    }
    return "?";
}

MeasureBasis measure_basis_from_string(std::string_view s) {
    if (s == "X") return MeasureBasis::X;
    if (s == "Y") return MeasureBasis::Y;
    if (s == "-Y") return MeasureBasis::MinusY;
    if (s == "Z") return MeasureBasis::Z;
    if (s == "none") return MeasureBasis::None;
    throw std::invalid_argument("unknown measurement basis '" + std::string(s) + "'");
}

std::string to_string(GateKind k) {
    switch (k) {
        case GateKind::InitPlus: return "init-plus";
        case GateKind::Rz: return "rz";
        case GateKind::Rx: return "rx";
        case GateKind::Ry: return "ry";
        case GateKind::Hadamard: return "hadamard";
        case GateKind::Ising: return "ising";
        case GateKind::ZZ: return "zz";
        case GateKind::Depolarize2q: return "depolarize2q";
    }
    return "?";
}

GraphSpec::GraphSpec(std::string name, std::vector<Vertex> vertices, std::vector<std::pair<int, int>> links,
                     std::vector<NamedPath> paths, std::map<std::string, std::string> aliases)
    : name_(std::move(name)), vertices_(std::move(vertices)), paths_(std::move(paths)), aliases_(std::move(aliases)) {
    if (vertices_.empty()) throw std::invalid_argument("graph '" + name_ + "' has no vertices");
    std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        if (vertices_[i].id == vertices_[i - 1].id)
            throw std::invalid_argument("duplicate vertex id " + std::to_string(vertices_[i].id));

    int inputs = 0;
    int outputs = 0;
    for (const auto& v : vertices_) {
        if (v.role == Role::Input) {
            ++inputs;
            input_ = v.id;
        } else if (v.role == Role::Output) {
            ++outputs;
            output_ = v.id;
            if (v.basis != MeasureBasis::None)
                throw std::invalid_argument("output vertex " + std::to_string(v.id) + " must not be measured");
        } else if (v.basis == MeasureBasis::None) {
            throw std::invalid_argument("middle vertex " + std::to_string(v.id) + " has no measurement basis");
        }
    }
    if (inputs != 1 || outputs != 1)
        throw std::invalid_argument("graph '" + name_ + "' needs exactly one input and one output vertex");
    if (vertex(input_).basis == MeasureBasis::None)
        throw std::invalid_argument("input vertex must be measured");

    std::set<std::pair<int, int>> uniq;
    for (auto [a, b] : links) {
        if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
        if (!has_vertex(a) || !has_vertex(b))
            throw UnknownElementError("link (" + std::to_string(a) + "," + std::to_string(b) +
                                      ") references an unknown vertex");
        uniq.insert({std::min(a, b), std::max(a, b)});
    }
    links_.assign(uniq.begin(), uniq.end());

    for (const auto& p : paths_) {
        if (p.vertices.size() < 2 || p.vertices.front() != input_ || p.vertices.back() != output_)
            throw std::invalid_argument("path '" + p.id + "' must run from the input to the output vertex");
        for (std::size_t i = 1; i < p.vertices.size(); ++i)
            if (!has_link(p.vertices[i - 1], p.vertices[i]))
                throw std::invalid_argument("path '" + p.id + "' uses missing link (" +
                                            std::to_string(p.vertices[i - 1]) + "," +
                                            std::to_string(p.vertices[i]) + ")");
    }
    for (const auto& [alias, target] : aliases_) {
        bool found = false;
        for (const auto& p : paths_) found |= p.id == target;
        if (!found) throw std::invalid_argument("alias '" + alias + "' points to unknown path '" + target + "'");
    }
}

bool GraphSpec::has_vertex(int id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const Vertex& v, int key) { return v.id < key; });
    return it != vertices_.end() && it->id == id;
}

bool GraphSpec::has_link(int a, int b) const {
    return std::binary_search(links_.begin(), links_.end(), std::pair{std::min(a, b), std::max(a, b)});
}

std::size_t GraphSpec::position(int id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const Vertex& v, int key) { return v.id < key; });
    if (it == vertices_.end() || it->id != id)
        throw UnknownElementError("graph '" + name_ + "' has no vertex " + std::to_string(id));
    return static_cast<std::size_t>(it - vertices_.begin());
}

const Vertex& GraphSpec::vertex(int id) const { return vertices_[position(id)]; }

std::vector<int> GraphSpec::neighbors(int id) const {
    position(id);
    std::vector<int> out;
    for (auto [a, b] : links_) {
        if (a == id) out.push_back(b);
        if (b == id) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const NamedPath& GraphSpec::path(std::string_view id_or_alias) const {
    std::string key(id_or_alias);
    if (auto it = aliases_.find(key); it != aliases_.end()) key = it->second;
    for (const auto& p : paths_)
        if (p.id == key) return p;
    throw UnknownElementError("graph '" + name_ + "' has no path '" + std::string(id_or_alias) + "'");
}

double preparation_theta(StabilizerKind kind, std::size_t degree) {
    // Each e^{-i pi/4 ZZ} equals CZ times e^{-i pi/4 Z} on both ends (up to a
    // global phase); theta cancels that and adds e^{-i pi/4 Z} for Y-kind.
    constexpr double quarter = std::numbers::pi / 4;
    double theta = quarter * static_cast<double>(degree) - (kind == StabilizerKind::Y ? quarter : 0.0);
    theta = std::remainder(theta, 2 * std::numbers::pi);
    return theta;
}

namespace {

void assign_thetas(std::vector<Vertex>& vertices, const std::vector<std::pair<int, int>>& links) {
    for (auto& v : vertices) {
        std::size_t degree = 0;
        for (auto [a, b] : links) degree += (a == v.id) + (b == v.id);
        v.theta = preparation_theta(v.kind, degree);
    }
}

Vertex make_vertex(int id, std::string label, StabilizerKind kind, Role role, MeasureBasis basis) {
    Vertex v;
    v.id = id;
    v.label = std::move(label);
    v.kind = kind;
    v.role = role;
    v.basis = basis;
    return v;
}

}  // namespace

GraphSpec build_chain(int n_vertices) {
    if (n_vertices < 3) throw std::invalid_argument("chain needs at least 3 vertices");
    std::vector<Vertex> vs;
    std::vector<std::pair<int, int>> links;
    NamedPath path{"chain", "chain", {}};
    for (int i = 1; i <= n_vertices; ++i) {
        const bool end = i == 1 || i == n_vertices;
        const Role role = i == 1 ? Role::Input : (i == n_vertices ? Role::Output : Role::Middle);
        const MeasureBasis basis = i == 1 ? MeasureBasis::X : (i == n_vertices ? MeasureBasis::None : MeasureBasis::Y);
        vs.push_back(make_vertex(i, std::to_string(i), end ? StabilizerKind::X : StabilizerKind::Y, role, basis));
        if (i > 1) links.emplace_back(i - 1, i);
        path.vertices.push_back(i);
    }
    assign_thetas(vs, links);
    GraphSpec g("chain:" + std::to_string(n_vertices), std::move(vs), std::move(links), {path});
    g.family = "chain";
    return g;
}

GraphSpec build_diamond() {
    std::vector<Vertex> vs;
    for (int i = 1; i <= 6; ++i) {
        const bool end = i == 1 || i == 6;
        const Role role = i == 1 ? Role::Input : (i == 6 ? Role::Output : Role::Middle);
        vs.push_back(make_vertex(i, std::to_string(i), end ? StabilizerKind::X : StabilizerKind::Y, role,
                                 i == 6 ? MeasureBasis::None : MeasureBasis::X));
    }
    std::vector<std::pair<int, int>> links{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}, {3, 5}};
    assign_thetas(vs, links);
    // Alternating positions along a path give the two symmetry subsets:
    // p1 -> {1,3,5},{2,4,6}; p2 -> {1,4,5},{2,3,6}.
    std::vector<NamedPath> paths{{"p1", "green", {1, 2, 3, 4, 5, 6}}, {"p2", "blue", {1, 2, 4, 3, 5, 6}}};
    GraphSpec g("diamond", std::move(vs), std::move(links), std::move(paths), {{"green", "p1"}, {"blue", "p2"}});
    g.family = "diamond";
    return g;
}

int hourglass_vertex(int n, int rows, int column, int row) {
    if (column < 1 || column > n || row < 0 || row >= rows)
        throw UnknownElementError("hourglass has no bulk site (" + std::to_string(column) + "," +
                                  std::to_string(row) + ")");
    return 3 + rows * (column - 1) + (rows - 1 - row);
}

GraphSpec build_hourglass(int n, int rows) {
    if (n < 1) throw std::invalid_argument("hourglass needs n >= 1");
    if (rows != 2 && rows != 3) throw std::invalid_argument("hourglass rows must be 2 or 3");
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(rows);
    if (count > 4096) throw CapacityError("hourglass path enumeration limited to 4096 paths");

    const int in = 1;
    const int m = 2;
    const int out = 3 + rows * n;
    std::vector<Vertex> vs;
    vs.push_back(make_vertex(in, "I", StabilizerKind::X, Role::Input, MeasureBasis::X));
    vs.push_back(make_vertex(m, "m", StabilizerKind::X, Role::Middle, MeasureBasis::X));
    for (int i = 1; i <= n; ++i)
        for (int k = 0; k < rows; ++k)
            vs.push_back(make_vertex(hourglass_vertex(n, rows, i, k),
                                     "(" + std::to_string(i) + "," + std::to_string(k) + ")", StabilizerKind::Y,
                                     Role::Middle, MeasureBasis::Y));
    vs.push_back(make_vertex(out, "O", StabilizerKind::X, Role::Output, MeasureBasis::None));

    std::vector<std::pair<int, int>> links{{in, m}};
    for (int k = 0; k < rows; ++k) {
        links.emplace_back(m, hourglass_vertex(n, rows, 1, k));
        links.emplace_back(hourglass_vertex(n, rows, n, k), out);
    }
    for (int i = 1; i < n; ++i)
        for (int k = 0; k < rows; ++k)
            for (int k2 = 0; k2 < rows; ++k2)
                links.emplace_back(hourglass_vertex(n, rows, i, k), hourglass_vertex(n, rows, i + 1, k2));
    assign_thetas(vs, links);

    std::vector<NamedPath> paths;
    std::vector<int> choice(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t rem = c;
        for (int i = n - 1; i >= 0; --i) {
            choice[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(rows));
            rem /= static_cast<std::size_t>(rows);
        }
        NamedPath p;
        p.id = "k=";
        p.vertices = {in, m};
        for (int i = 1; i <= n; ++i) {
            const int k = choice[static_cast<std::size_t>(i - 1)];
            p.id += static_cast<char>('0' + k);
            p.vertices.push_back(hourglass_vertex(n, rows, i, k));
        }
        p.vertices.push_back(out);
        p.label = p.id;
        paths.push_back(std::move(p));
    }
    std::map<std::string, std::string> aliases;
    for (int r = 0; r < rows; ++r) aliases["row" + std::to_string(r)] = "k=" + std::string(static_cast<std::size_t>(n), static_cast<char>('0' + r));
    aliases["upper"] = aliases["row0"];
    aliases["lower"] = aliases["row1"];

    GraphSpec g("hourglass:n=" + std::to_string(n) + ",rows=" + std::to_string(rows), std::move(vs),
                std::move(links), std::move(paths), std::move(aliases));
    g.family = "hourglass";
    g.hourglass_n = n;
    g.hourglass_rows = rows;
    return g;
}

GraphSpec parse_graph_arg(std::string_view text) {
    const std::string s(text);
    if (s == "diamond") return build_diamond();
    if (s.rfind("chain:", 0) == 0) return build_chain(std::stoi(s.substr(6)));
    if (s.rfind("hourglass", 0) == 0) {
        int n = 2;
        int rows = 2;
        if (s.size() > 9) {
            if (s[9] != ':') throw std::invalid_argument("bad graph spec '" + s + "'");
            std::stringstream ss(s.substr(10));
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) {
                    n = std::stoi(item);
                } else if (item.substr(0, eq) == "n") {
                    n = std::stoi(item.substr(eq + 1));
                } else if (item.substr(0, eq) == "rows") {
                    rows = std::stoi(item.substr(eq + 1));
                } else {
                    throw std::invalid_argument("unknown hourglass parameter '" + item + "'");
                }
            }
        }
        return build_hourglass(n, rows);
    }
    std::ifstream f(s);
    if (!f) throw std::invalid_argument("graph '" + s + "' is neither a builtin family nor a readable file");
    return graph_from_json(nlohmann::json::parse(f));
}

nlohmann::json graph_to_json(const GraphSpec& g) {
    nlohmann::json j;
    j["name"] = g.name();
    j["family"] = g.family;
    if (g.family == "hourglass") j["hourglass"] = {{"n", g.hourglass_n}, {"rows", g.hourglass_rows}};
    auto& vs = j["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices())
        vs.push_back({{"id", v.id},
                      {"label", v.label},
                      {"kind", to_string(v.kind)},
                      {"role", to_string(v.role)},
                      {"theta", v.theta},
                      {"basis", to_string(v.basis)}});
    auto& ls = j["links"] = nlohmann::json::array();
    for (auto [a, b] : g.links()) ls.push_back({a, b});
    auto& ps = j["paths"] = nlohmann::json::array();
    for (const auto& p : g.paths()) ps.push_back({{"id", p.id}, {"label", p.label}, {"vertices", p.vertices}});
    j["aliases"] = g.aliases();
    return j;
}

GraphSpec graph_from_json(const nlohmann::json& j) {
    std::vector<Vertex> vs;
    for (const auto& jv : j.at("vertices")) {
        Vertex v;
        v.id = jv.at("id").get<int>();
        v.label = jv.value("label", std::to_string(v.id));
        const auto kind = jv.at("kind").get<std::string>();
        if (kind != "X" && kind != "Y") throw std::invalid_argument("vertex kind must be X or Y");
        v.kind = kind == "X" ? StabilizerKind::X : StabilizerKind::Y;
        const auto role = jv.at("role").get<std::string>();
        if (role == "input")
            v.role = Role::Input;
        else if (role == "output")
            v.role = Role::Output;
        else if (role == "middle")
            v.role = Role::Middle;
        else
            throw std::invalid_argument("unknown vertex role '" + role + "'");
        v.basis = measure_basis_from_string(jv.at("basis").get<std::string>());
        v.theta = jv.value("theta", std::nan(""));
        vs.push_back(std::move(v));
    }
    std::vector<std::pair<int, int>> links;
    for (const auto& l : j.at("links")) links.emplace_back(l.at(0).get<int>(), l.at(1).get<int>());
    bool derive_theta = false;
    for (const auto& v : vs) derive_theta |= std::isnan(v.theta);
    if (derive_theta) assign_thetas(vs, links);
    std::vector<NamedPath> paths;
    for (const auto& jp : j.at("paths"))
        paths.push_back({jp.at("id").get<std::string>(), jp.value("label", jp.at("id").get<std::string>()),
                         jp.at("vertices").get<std::vector<int>>()});
    std::map<std::string, std::string> aliases;
    if (j.contains("aliases")) aliases = j.at("aliases").get<std::map<std::string, std::string>>();
    GraphSpec g(j.value("name", std::string("custom")), std::move(vs), std::move(links), std::move(paths),
                std::move(aliases));
    g.family = j.value("family", std::string("custom"));
    if (j.contains("hourglass")) {
        g.hourglass_n = j["hourglass"].at("n").get<int>();
        g.hourglass_rows = j["hourglass"].at("rows").get<int>();
    }
    return g;
}

GateList compile_preparation(const GraphSpec& g, std::span<const ErrorSpec> errors, const PrepOptions& options) {
    GateList gl;
    gl.num_qubits = g.num_qubits();
    const auto& links = g.links();

    std::vector<double> link_eps(links.size(), 0.0);
    std::vector<ZZCrosstalk> idle;
    std::vector<SingleQubitError> single;
    std::vector<double> depol;
    for (const auto& e : errors) {
        if (const auto* zz = std::get_if<ZZCrosstalk>(&e)) {
            if (zz->a == zz->b || !g.has_vertex(zz->a) || !g.has_vertex(zz->b))
                throw UnknownElementError("crosstalk on unknown vertex pair (" + std::to_string(zz->a) + "," +
                                          std::to_string(zz->b) + ")");
            bool on_link = false;
            for (std::size_t l = 0; l < links.size(); ++l) {
                if (links[l] == std::pair{std::min(zz->a, zz->b), std::max(zz->a, zz->b)}) {
                    link_eps[l] += zz->epsilon;
                    on_link = true;
                }
            }
            if (!on_link) idle.push_back(*zz);
        } else if (const auto* sq = std::get_if<SingleQubitError>(&e)) {
            if (!g.has_vertex(sq->vertex))
                throw UnknownElementError("single-qubit error on unknown vertex " + std::to_string(sq->vertex));
            if (sq->axis == Letter::I) throw std::invalid_argument("single-qubit error axis must be X, Y or Z");
            single.push_back(*sq);
        } else {
            const double p = std::get<Depolarizing2q>(e).p;
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing probability outside [0,1]");
            depol.push_back(p);
        }
    }

    for (std::size_t q = 0; q < gl.num_qubits; ++q) gl.ops.push_back({GateKind::InitPlus, q, q, 0.0});
    for (std::size_t q = 0; q < gl.num_qubits; ++q) {
        const double theta = g.vertices()[q].theta;
        if (theta != 0.0) gl.ops.push_back({GateKind::Rz, q, q, -2.0 * theta});
    }

    std::vector<std::size_t> order = options.link_order;
    if (order.empty()) {
        order.resize(links.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    } else {
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted.size() != links.size() || sorted[i] != i)
                throw std::invalid_argument("link_order must be a permutation of the link indices");
    }
    for (auto l : order) {
        const auto [a, b] = links[l];
        const std::size_t qa = g.position(a);
        const std::size_t qb = g.position(b);
        gl.ops.push_back({GateKind::Ising, qa, qb, link_eps[l]});
        for (double p : depol)
            if (p > 0.0) gl.ops.push_back({GateKind::Depolarize2q, qa, qb, p});
    }
    for (const auto& zz : idle) gl.ops.push_back({GateKind::ZZ, g.position(zz.a), g.position(zz.b), zz.epsilon});
    for (const auto& sq : single) {
        const GateKind kind = sq.axis == Letter::X ? GateKind::Rx : (sq.axis == Letter::Y ? GateKind::Ry : GateKind::Rz);
        const std::size_t q = g.position(sq.vertex);
        gl.ops.push_back({kind, q, q, sq.theta});
    }
    if (options.append_basis_change) {
        for (std::size_t q = 0; q < gl.num_qubits; ++q) {
            switch (g.vertices()[q].basis) {
                case MeasureBasis::X: gl.ops.push_back({GateKind::Hadamard, q, q, 0.0}); break;
                case MeasureBasis::Y:
                case MeasureBasis::MinusY:
                    // H S^dagger maps Y onto Z.
                    gl.ops.push_back({GateKind::Rz, q, q, -std::numbers::pi / 2});
                    gl.ops.push_back({GateKind::Hadamard, q, q, 0.0});
                    break;
                default: break;
            }
        }
    }
    return gl;
}

}  // namespace sptel
