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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sptel {

/// Single-qubit Pauli letter in symplectic encoding: bit 0 = x, bit 1 = z.
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char letter_char(Letter l);
Letter letter_from_char(char c);

/// Phase-tracked tensor product of Pauli letters, value = i^log_i * P_0 (x) P_1 (x) ...
///
/// Position 0 is the leftmost tensor factor. Letters are the Hermitian Pauli
/// matrices (Y = [[0,-i],[i,0]]), so the phase is exactly the scalar in front.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits);

    /// Parses `[+|-][i]LETTERS`, with `_` accepted as identity.
    static PauliString from_str(std::string_view text);
    static PauliString single(std::size_t num_qubits, std::size_t qubit, Letter l);

    std::size_t num_qubits() const { return letters_.size(); }
    Letter letter(std::size_t qubit) const { return static_cast<Letter>(letters_.at(qubit)); }
    void set_letter(std::size_t qubit, Letter l) { letters_.at(qubit) = static_cast<std::uint8_t>(l); }

    /// Exponent k of the i^k prefactor, in [0, 4).
    int log_i() const { return log_i_; }
    void set_log_i(int k) { log_i_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4); }
    std::complex<double> phase() const;
    bool is_hermitian() const { return (log_i_ & 1) == 0; }
    /// +1 or -1; throws std::domain_error when the phase is +-i.
    int sign() const;

    bool is_identity() const;  // letters only, phase ignored
    std::size_t weight() const;
    std::vector<std::size_t> support() const;

    /// Letters on `qubits` kept, everything else set to I; phase reset to +1.
    PauliString restricted(std::span<const std::size_t> qubits) const;
    /// Same letters with phase +1.
    PauliString unsigned_letters() const;

    /// Masks over basis-state bits where qubit q sits at bit (num_qubits - 1 - q).
    std::uint64_t x_mask() const;
    std::uint64_t z_mask() const;
    std::size_t y_count() const;

    std::string str() const;

    PauliString& operator*=(const PauliString& rhs);
    friend PauliString operator*(PauliString lhs, const PauliString& rhs) { return lhs *= rhs; }
    friend bool operator==(const PauliString&, const PauliString&) = default;

  private:
    std::vector<std::uint8_t> letters_;
    std::uint8_t log_i_ = 0;
};

/// Product a*b with accumulated phase. Throws DimensionError on size mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);

/// True iff a and b commute (even number of sites with distinct non-identity letters).
bool commutes(const PauliString& a, const PauliString& b);

/// Log-i phase picked up by the single-site product a*b.
int letter_product_log_i(Letter a, Letter b);

}  // namespace sptel
