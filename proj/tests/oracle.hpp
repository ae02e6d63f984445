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

// Dense reference model built from Kronecker products and explicit projectors.
// It reads only the graph description (vertices, thetas, links, bases) and
// shares no simulation code with the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <array>
#include <complex>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "sptel/error_spec.hpp"
#include "sptel/graph.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char c) {
    Mat m(2, 2);
    switch (c) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m << 1, 0, 0, 1;
    }
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

/// u on tensor factor q of n (factor 0 is the leftmost, most significant).
inline Mat embed(int n, int q, const Mat& u) {
    Mat r = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k) r = kron(r, k == q ? u : pauli('I'));
    return r;
}

/// Tensor product of single-letter Paulis, e.g. "XZIY".
inline Mat pauli_string(const std::string& s) {
    Mat r = Mat::Identity(1, 1);
    for (char c : s) r = kron(r, pauli(c));
    return r;
}

/// exp(-i t P) for P^2 = 1.
inline Mat expm_pauli(const Mat& p, double t) {
    return std::cos(t) * Mat::Identity(p.rows(), p.cols()) - cd(0, 1) * std::sin(t) * p;
}

inline Mat zz(int n, int a, int b) {
    std::string s(n, 'I');
    s[a] = s[b] = 'Z';
    return pauli_string(s);
}

inline Vec plus_state(int n) { return Vec::Constant(1 << n, cd(std::pow(2.0, -n / 2.0), 0.0)); }

inline Mat depolarize_pair(const Mat& rho, int n, int a, int b, double p) {
    Mat out = (1 - p) * rho;
    const char letters[4] = {'I', 'X', 'Y', 'Z'};
    for (char la : letters)
        for (char lb : letters) {
            const Mat k = embed(n, a, pauli(la)) * embed(n, b, pauli(lb));
            out += p / 16.0 * k * rho * k.adjoint();
        }
    return out;
}

/// Product state |+...+> with optional input amplitudes on the input vertex.
inline Vec initial_state(const sptel::GraphSpec& g, const std::array<cd, 2>* input) {
    const int n = static_cast<int>(g.num_qubits());
    if (!input) return plus_state(n);
    const int q = static_cast<int>(g.position(g.input_id()));
    Vec one_plus = Vec::Constant(2, cd(1 / std::sqrt(2.0), 0));
    Vec in(2);
    in << (*input)[0], (*input)[1];
    Vec full = Vec::Ones(1);
    for (int k = 0; k < n; ++k) {
        Vec f = k == q ? in : one_plus;
        Vec next(full.size() * 2);
        for (Eigen::Index i = 0; i < full.size(); ++i) next.segment(2 * i, 2) = full(i) * f;
        full = next;
    }
    return full;
}

/// Walks the preparation: `unitary(U)` for each gate, `noise(a, b)` after each
/// entangling gate on positions a, b.
template <class U, class N>
void preparation_steps(const sptel::GraphSpec& g, const std::vector<sptel::ErrorSpec>& errors, U&& unitary,
                       N&& noise) {
    const int n = static_cast<int>(g.num_qubits());
    for (const auto& v : g.vertices())
        unitary(expm_pauli(embed(n, static_cast<int>(g.position(v.id)), pauli('Z')), -v.theta));
    auto crosstalk = [&](int a, int b) {
        double eps = 0.0;
        for (const auto& e : errors)
            if (const auto* z = std::get_if<sptel::ZZCrosstalk>(&e))
                if ((z->a == a && z->b == b) || (z->a == b && z->b == a)) eps += z->epsilon;
        return eps;
    };
    for (const auto& [a, b] : g.links()) {
        const int pa = static_cast<int>(g.position(a)), pb = static_cast<int>(g.position(b));
        unitary(expm_pauli(zz(n, pa, pb), std::numbers::pi / 4 + crosstalk(a, b)));
        noise(pa, pb);
    }
    for (const auto& e : errors) {
        if (const auto* z = std::get_if<sptel::ZZCrosstalk>(&e)) {
            if (g.has_link(z->a, z->b)) continue;
            unitary(expm_pauli(zz(n, static_cast<int>(g.position(z->a)), static_cast<int>(g.position(z->b))),
                               z->epsilon));
        }
    }
    for (const auto& e : errors)
        if (const auto* s = std::get_if<sptel::SingleQubitError>(&e)) {
            const char c = sptel::letter_char(s->axis);
            unitary(expm_pauli(embed(n, static_cast<int>(g.position(s->vertex)), pauli(c)), s->theta / 2));
        }
}

inline double depolarizing_probability(const std::vector<sptel::ErrorSpec>& errors) {
    double depol = 0.0;
    for (const auto& e : errors)
        if (const auto* d = std::get_if<sptel::Depolarizing2q>(&e)) depol += d->p;
    return depol;
}

/// Density matrix of the graph preparation with optional input amplitudes on
/// the input vertex. Depolarizing noise follows each entangling gate in link order.
inline Mat prepare(const sptel::GraphSpec& g, const std::vector<sptel::ErrorSpec>& errors,
                   const std::array<cd, 2>* input = nullptr) {
    const int n = static_cast<int>(g.num_qubits());
    const double depol = depolarizing_probability(errors);
    const Vec psi = initial_state(g, input);
    Mat rho = psi * psi.adjoint();
    preparation_steps(
        g, errors, [&](const Mat& u) { rho = u * rho * u.adjoint(); },
        [&](int a, int b) {
            if (depol > 0.0) rho = depolarize_pair(rho, n, a, b, depol);
        });
    return rho;
}

/// Pure-state version of prepare; only valid without depolarizing noise.
inline Vec prepare_vector(const sptel::GraphSpec& g, const std::vector<sptel::ErrorSpec>& errors,
                          const std::array<cd, 2>* input = nullptr) {
    Vec psi = initial_state(g, input);
    preparation_steps(g, errors, [&](const Mat& u) { psi = u * psi; }, [](int, int) {});
    return psi;
}

inline Vec prepare_pure(const sptel::GraphSpec& g, const std::vector<sptel::ErrorSpec>& errors) {
    return prepare_vector(g, errors);
}

inline Mat observable(sptel::MeasureBasis b) {
    switch (b) {
        case sptel::MeasureBasis::X: return pauli('X');
        case sptel::MeasureBasis::Y: return pauli('Y');
        case sptel::MeasureBasis::MinusY: return -pauli('Y');
        case sptel::MeasureBasis::Z: return pauli('Z');
        default: return pauli('I');
    }
}

/// Partial trace keeping the factors in `keep` (ascending).
inline Mat reduce(const Mat& rho, int n, const std::vector<int>& keep) {
    const int k = static_cast<int>(keep.size());
    Mat out = Mat::Zero(1 << k, 1 << k);
    std::vector<int> rest;
    for (int q = 0; q < n; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    auto compose = [&](int a, int r) {
        int idx = 0;
        for (int j = 0; j < k; ++j)
            if ((a >> (k - 1 - j)) & 1) idx |= 1 << (n - 1 - keep[j]);
        for (std::size_t j = 0; j < rest.size(); ++j)
            if ((r >> (rest.size() - 1 - j)) & 1) idx |= 1 << (n - 1 - rest[j]);
        return idx;
    };
    for (int a = 0; a < (1 << k); ++a)
        for (int b = 0; b < (1 << k); ++b)
            for (int r = 0; r < (1 << rest.size()); ++r) out(a, b) += rho(compose(a, r), compose(b, r));
    return out;
}

struct Branch {
    std::map<int, int> bits;  // vertex id -> outcome (0 = +1 eigenvalue of the basis operator)
    double probability = 0.0;
    Mat output;  // normalised 2x2 state of the output vertex
};

inline std::vector<Branch> branches(const sptel::GraphSpec& g, const Mat& rho) {
    const int n = static_cast<int>(g.num_qubits());
    std::vector<const sptel::Vertex*> measured;
    for (const auto& v : g.vertices())
        if (v.basis != sptel::MeasureBasis::None) measured.push_back(&v);
    std::vector<std::array<Mat, 2>> proj;
    for (const auto* v : measured) {
        const Mat b = observable(v->basis), id = pauli('I');
        const int q = static_cast<int>(g.position(v->id));
        proj.push_back({embed(n, q, (id + b) / 2.0), embed(n, q, (id - b) / 2.0)});
    }
    std::vector<Branch> out;
    const int m = static_cast<int>(measured.size());
    const int out_q = static_cast<int>(g.position(g.output_id()));
    // Depth-first so that branches sharing a prefix share its projections.
    std::function<void(int, const Mat&, std::map<int, int>&)> descend = [&](int j, const Mat& r, std::map<int, int>& bits) {
        const double p = r.trace().real();
        if (p < 1e-14) return;
        if (j == m) {
            out.push_back({bits, p, reduce(r, n, {out_q}) / p});
            return;
        }
        for (int bit = 0; bit < 2; ++bit) {
            bits[measured[j]->id] = bit;
            descend(j + 1, proj[j][bit] * r * proj[j][bit], bits);
        }
        bits.erase(measured[j]->id);
    };
    std::map<int, int> bits;
    descend(0, rho, bits);
    return out;
}

/// Same enumeration on a pure state vector (much cheaper than the density route).
inline std::vector<Branch> branches(const sptel::GraphSpec& g, const Vec& psi) {
    const int n = static_cast<int>(g.num_qubits());
    std::vector<std::pair<int, std::array<Mat, 2>>> proj;
    for (const auto& v : g.vertices()) {
        if (v.basis == sptel::MeasureBasis::None) continue;
        const Mat b = observable(v.basis), id = pauli('I');
        const int q = static_cast<int>(g.position(v.id));
        proj.push_back({v.id, {embed(n, q, (id + b) / 2.0), embed(n, q, (id - b) / 2.0)}});
    }
    std::vector<Branch> out;
    const int out_q = static_cast<int>(g.position(g.output_id()));
    std::function<void(std::size_t, const Vec&, std::map<int, int>&)> descend = [&](std::size_t j, const Vec& r,
                                                                                    std::map<int, int>& bits) {
        const double p = r.squaredNorm();
        if (p < 1e-14) return;
        if (j == proj.size()) {
            out.push_back({bits, p, reduce(r * r.adjoint(), n, {out_q}) / p});
            return;
        }
        for (int bit = 0; bit < 2; ++bit) {
            bits[proj[j].first] = bit;
            descend(j + 1, proj[j].second[bit] * r, bits);
        }
        bits.erase(proj[j].first);
    };
    std::map<int, int> bits;
    descend(0, psi, bits);
    return out;
}

inline std::array<cd, 2> amplitudes(double polar, double azimuth) {
    return {cd(std::cos(polar / 2), 0), std::polar(std::sin(polar / 2), azimuth)};
}

/// Byproduct recipe written out by hand: output = Z^z X^x O |phi>.
struct Recipe {
    std::vector<int> z_vertices, x_vertices;
    int z_offset = 0, x_offset = 0;
    bool hadamard = false;
};

inline Mat hadamard() {
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

inline double fidelity(const sptel::GraphSpec& g, const std::vector<sptel::ErrorSpec>& errors, double polar,
                       double azimuth, const Recipe& recipe) {
    const auto a = amplitudes(polar, azimuth);
    Vec phi(2);
    phi << a[0], a[1];
    double f = 0.0;
    const std::vector<Branch> brs = depolarizing_probability(errors) > 0.0 ? branches(g, prepare(g, errors, &a))
                                                                            : branches(g, prepare_vector(g, errors, &a));
    for (const auto& br : brs) {
        int z = recipe.z_offset, x = recipe.x_offset;
        for (int v : recipe.z_vertices) z += br.bits.at(v);
        for (int v : recipe.x_vertices) x += br.bits.at(v);
        Mat u = Mat::Identity(2, 2);
        if (z % 2) u = pauli('Z') * u;
        if (x % 2) u = u * pauli('X');
        const Mat o = recipe.hadamard ? hadamard() : Mat(Mat::Identity(2, 2));
        const Mat c = (u * o).adjoint();
        f += br.probability * (phi.adjoint() * c * br.output * c.adjoint() * phi)(0, 0).real();
    }
    return f;
}

}  // namespace oracle
