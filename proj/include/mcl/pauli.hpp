// Copyright 2026 The mcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mcl/circuit.hpp"

namespace mcl {

// P = i^kappa * prod_q X_q^{x_q} Z_q^{z_q}. Then P|0^n> = i^kappa |x>.
struct PauliString {
  int n = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int kappa = 0;  // mod 4

  static PauliString identity(int n) { return {n, 0, 0, 0}; }
  static PauliString single(int n, int qubit, char which);

  PauliString operator*(const PauliString& other) const;
  friend bool operator==(const PauliString&, const PauliString&) = default;
  std::string to_string() const;  // e.g. "+i XZIY" (qubit 0 first)
};

// Two-qubit Clifford as a conjugation table: local Pauli code
// (xa | za << 1 | xb << 2 | zb << 3) -> image code and phase, for
// U^dagger P U. Throws NonClifford when some Pauli does not map to a Pauli.
class CliffordTable {
 public:
  explicit CliffordTable(const GateMatrix& u);
  // Conjugates P by U on qubits (a, a+1): P -> U^dagger P U.
  void conjugate(PauliString& p, int a) const;

 private:
  std::array<std::uint8_t, 16> image_{};
  std::array<std::uint8_t, 16> phase_{};
};

// The 24 single-qubit Cliffords modulo phase.
const std::vector<Matrix2>& single_qubit_cliffords();

// Number of real-linearly independent vectors among {P|0^n>}: classes of
// (x, kappa mod 2).
int pauli_image_rank(const std::vector<PauliString>& images);

}  // namespace mcl
