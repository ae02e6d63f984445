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

#include "sptel/pauli.hpp"

#include <stdexcept>

#include "sptel/errors.hpp"

namespace sptel {

namespace {

// log_i of a*b indexed [a][b] in symplectic order I, X, Z, Y.
constexpr int kProductLogI[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 3, 1},  // X*Z = -iY, X*Y = iZ
    {0, 1, 0, 3},  // Z*X = iY,  Z*Y = -iX
    {0, 3, 1, 0},  // Y*X = -iZ, Y*Z = iX
};

}  // namespace

char letter_char(Letter l) {
    switch (l) {
        case Letter::I: return 'I';
        case Letter::X: return 'X';
        case Letter::Y: return 'Y';
        case Letter::Z: return 'Z';
    }
    return '?';
}

Letter letter_from_char(char c) {
    switch (c) {
        case 'I':
        case '_': return Letter::I;
        case 'X': return Letter::X;
        case 'Y': return Letter::Y;
        case 'Z': return Letter::Z;
        default: throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

int letter_product_log_i(Letter a, Letter b) {
    return kProductLogI[static_cast<int>(a)][static_cast<int>(b)];
}

PauliString::PauliString(std::size_t num_qubits) : letters_(num_qubits, 0) {}

PauliString PauliString::from_str(std::string_view text) {
    int k = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') k = 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        k += 1;
        ++pos;
    }
    PauliString p(text.size() - pos);
    for (std::size_t q = 0; pos < text.size(); ++pos, ++q) p.set_letter(q, letter_from_char(text[pos]));
    p.set_log_i(k);
    return p;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, Letter l) {
    PauliString p(num_qubits);
    p.set_letter(qubit, l);
    return p;
}

std::complex<double> PauliString::phase() const {
    switch (log_i_) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

int PauliString::sign() const {
    if (!is_hermitian()) throw std::domain_error("Pauli string " + str() + " has phase +-i");
    return log_i_ == 0 ? 1 : -1;
}

bool PauliString::is_identity() const {
    for (auto l : letters_)
        if (l != 0) return false;
    return true;
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (auto l : letters_) w += l != 0;
    return w;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> s;
    for (std::size_t q = 0; q < letters_.size(); ++q)
        if (letters_[q] != 0) s.push_back(q);
    return s;
}

PauliString PauliString::restricted(std::span<const std::size_t> qubits) const {
    PauliString r(num_qubits());
    for (auto q : qubits) r.letters_.at(q) = letters_.at(q);
    return r;
}

PauliString PauliString::unsigned_letters() const {
    PauliString r = *this;
    r.log_i_ = 0;
    return r;
}

std::uint64_t PauliString::x_mask() const {
    std::uint64_t m = 0;
    const std::size_t n = letters_.size();
    for (std::size_t q = 0; q < n; ++q)
        if (letters_[q] & 1) m |= std::uint64_t{1} << (n - 1 - q);
    return m;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t m = 0;
    const std::size_t n = letters_.size();
    for (std::size_t q = 0; q < n; ++q)
        if (letters_[q] & 2) m |= std::uint64_t{1} << (n - 1 - q);
    return m;
}

std::size_t PauliString::y_count() const {
    std::size_t c = 0;
    for (auto l : letters_) c += l == 3;
    return c;
}

std::string PauliString::str() const {
    std::string s;
    s += (log_i_ & 2) ? '-' : '+';
    if (log_i_ & 1) s += 'i';
    for (auto l : letters_) s += letter_char(static_cast<Letter>(l));
    return s;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
    if (rhs.num_qubits() != num_qubits())
        throw DimensionError("Pauli strings of different length: " + std::to_string(num_qubits()) +
                             " vs " + std::to_string(rhs.num_qubits()));
    int k = log_i_ + rhs.log_i_;
    for (std::size_t q = 0; q < letters_.size(); ++q) {
        k += kProductLogI[letters_[q]][rhs.letters_[q]];
        letters_[q] ^= rhs.letters_[q];
    }
    set_log_i(k);
    return *this;
}

PauliString multiply(const PauliString& a, const PauliString& b) { return a * b; }

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.num_qubits() != b.num_qubits())
        throw DimensionError("commutes: Pauli strings of different length");
    std::size_t anti = 0;
    for (std::size_t q = 0; q < a.num_qubits(); ++q) {
        const Letter la = a.letter(q);
        const Letter lb = b.letter(q);
        anti += la != Letter::I && lb != Letter::I && la != lb;
    }
    return anti % 2 == 0;
}

}  // namespace sptel
