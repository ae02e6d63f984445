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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "sptel/error_spec.hpp"

namespace sptel {

enum class StabilizerKind { X, Y };
enum class Role { Input, Middle, Output };
/// Measurement applied to a vertex. Outcome bit 0 is the +1 eigenvalue of the
/// listed operator (so for MinusY, bit 0 means Y = -1).
enum class MeasureBasis { X, Y, MinusY, Z, None };

std::string to_string(StabilizerKind k);
std::string to_string(Role r);
std::string to_string(MeasureBasis b);
MeasureBasis measure_basis_from_string(std::string_view s);

struct Vertex {
    int id = 0;
    std::string label;
    StabilizerKind kind = StabilizerKind::X;
    Role role = Role::Middle;
    /// Angle of the e^{i theta Z} factor applied to |+> before the Ising gates.
    double theta = 0.0;
    MeasureBasis basis = MeasureBasis::X;
};

/// Named input-to-output route through the graph.
struct NamedPath {
    std::string id;
    std::string label;
    std::vector<int> vertices;
};

/// Immutable graph description. Vertex ids ascending map to tensor positions
/// ascending (smallest id = leftmost factor = most significant basis bit).
class GraphSpec {
  public:
    GraphSpec(std::string name, std::vector<Vertex> vertices, std::vector<std::pair<int, int>> links,
              std::vector<NamedPath> paths, std::map<std::string, std::string> aliases = {});

    const std::string& name() const { return name_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& links() const { return links_; }
    const std::vector<NamedPath>& paths() const { return paths_; }
    const std::map<std::string, std::string>& aliases() const { return aliases_; }

    std::size_t num_qubits() const { return vertices_.size(); }
    bool has_vertex(int id) const;
    bool has_link(int a, int b) const;
    const Vertex& vertex(int id) const;
    /// Tensor position of vertex `id`; throws UnknownElementError.
    std::size_t position(int id) const;
    int id_at(std::size_t position) const { return vertices_.at(position).id; }
    std::vector<int> neighbors(int id) const;
    int input_id() const { return input_; }
    int output_id() const { return output_; }

    /// Path by id or alias; throws UnknownElementError.
    const NamedPath& path(std::string_view id_or_alias) const;

    /// Structural metadata of builder families (0 when not applicable).
    std::string family;
    int hourglass_n = 0;
    int hourglass_rows = 0;

  private:
    std::string name_;
    std::vector<Vertex> vertices_;
    std::vector<std::pair<int, int>> links_;
    std::vector<NamedPath> paths_;
    std::map<std::string, std::string> aliases_;
    int input_ = 0;
    int output_ = 0;
};

/// Angle that turns the Ising-gate preparation into a stabilizer state
/// of the requested kind for a vertex of the given degree.
double preparation_theta(StabilizerKind kind, std::size_t degree);

/// Path graph 1-2-...-n, X-kind endpoints, Y-kind interior measured in Y.
GraphSpec build_chain(int n_vertices);
/// Six-vertex graph with links {12,23,34,45,56,24,35} and two entwined paths.
GraphSpec build_diamond();
/// Hourglass with n bulk columns of `rows` vertices: ids I=1, m=2, bulk, O=2+rows*n+1.
/// Within a column the lowest row index gets the highest id, so for rows=2 the
/// lower vertices are 3, 5, 7, ...
GraphSpec build_hourglass(int n, int rows = 2);
/// Vertex id of bulk site (column, row) in an hourglass built by build_hourglass.
int hourglass_vertex(int n, int rows, int column, int row);

/// `chain:6`, `diamond`, `hourglass:n=2,rows=2`, or a path to a JSON graph file.
GraphSpec parse_graph_arg(std::string_view text);

nlohmann::json graph_to_json(const GraphSpec& g);
GraphSpec graph_from_json(const nlohmann::json& j);

enum class GateKind { InitPlus, Rz, Rx, Ry, Hadamard, Ising, ZZ, Depolarize2q };
std::string to_string(GateKind k);

/// One preparation step on tensor positions. `angle` is the rotation angle
/// (Rz(g)=e^{-igZ/2}), the Ising/ZZ epsilon, or the depolarizing probability.
struct Gate {
    GateKind kind = GateKind::InitPlus;
    std::size_t q0 = 0;
    std::size_t q1 = 0;
    double angle = 0.0;
};

struct GateList {
    std::size_t num_qubits = 0;
    std::vector<Gate> ops;
};

struct PrepOptions {
    /// Append the rotations that map each vertex's measurement basis onto Z.
    bool append_basis_change = false;
    /// Optional permutation of the link order for the Ising layer.
    std::vector<std::size_t> link_order;
};

/// init-plus everywhere, Rz for the theta factors, one Ising gate per link
/// (epsilon from matching ZZ errors, depolarizing after it when requested),
/// idle ZZ crosstalk on non-links, then single-qubit errors.
GateList compile_preparation(const GraphSpec& g, std::span<const ErrorSpec> errors,
                             const PrepOptions& options = {});

}  // namespace sptel
