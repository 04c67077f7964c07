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


#include "mcl/pauli.hpp"

#include <bit>
#include <cmath>
#include <set>

#include "mcl/error.hpp"

namespace mcl {

PauliString PauliString::single(int n, int qubit, char which) {
  PauliString p{n, 0, 0, 0};
  const std::uint64_t m = std::uint64_t{1} << qubit;
  switch (which) {
    case 'I': break;
    case 'X': p.x = m; break;
    case 'Z': p.z = m; break;
    case 'Y':  // Y = i X Z
      p.x = m;
      p.z = m;
      p.kappa = 1;
      break;
    default: throw Error(ErrorKind::InvalidInput, "unknown Pauli letter");
  }
  return p;
}

PauliString PauliString::operator*(const PauliString& o) const {
  // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
  PauliString r{n, x ^ o.x, z ^ o.z, 0};
  r.kappa = (kappa + o.kappa + 2 * std::popcount(z & o.x)) & 3;
  return r;
}

std::string PauliString::to_string() const {
  static const char* phases[4] = {"+", "+i", "-", "-i"};
  std::string s = std::string(phases[kappa & 3]) + " ";
  for (int q = 0; q < n; ++q) {
    const bool xb = (x >> q) & 1;
    const bool zb = (z >> q) & 1;
    // X Z = -i Y, so the letter form hides a phase; print raw factors.
    s += xb && zb ? 'W' : xb ? 'X' : zb ? 'Z' : 'I';
  }
  return s;
}

namespace {

Matrix2 local_xz(int x, int z) {
  Matrix2 m = Matrix2::Identity();
  if (x) m = gates::pauli('X');
  if (z) m = m * gates::pauli('Z');
  return m;
}

GateMatrix local_code_matrix(int code) {
  return gates::kron(local_xz(code & 1, (code >> 1) & 1), local_xz((code >> 2) & 1, (code >> 3) & 1));
}

}  // namespace

CliffordTable::CliffordTable(const GateMatrix& u) {
  for (int code = 0; code < 16; ++code) {
    const GateMatrix m = u.adjoint() * local_code_matrix(code) * u;
    bool found = false;
    for (int c = 0; c < 16 && !found; ++c) {
      const Complex coeff = (local_code_matrix(c).adjoint() * m).trace() / 4.0;
      if (std::abs(std::abs(coeff) - 1.0) > 1e-9) continue;
      int k = -1;
      const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      for (int j = 0; j < 4; ++j)
        if (std::abs(coeff - phases[j]) < 1e-9) k = j;
      if (k < 0) break;
      image_[code] = static_cast<std::uint8_t>(c);
      phase_[code] = static_cast<std::uint8_t>(k);
      found = true;
    }
    if (!found) throw Error(ErrorKind::NonClifford, "gate does not map Paulis to Paulis");
  }
}

void CliffordTable::conjugate(PauliString& p, int a) const {
  const int b = a + 1;
  const int code = static_cast<int>(((p.x >> a) & 1) | (((p.z >> a) & 1) << 1) | (((p.x >> b) & 1) << 2) |
                                    (((p.z >> b) & 1) << 3));
  const int img = image_[code];
  const std::uint64_t clear = ~((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
  p.x = (p.x & clear) | (static_cast<std::uint64_t>(img & 1) << a) | (static_cast<std::uint64_t>((img >> 2) & 1) << b);
  p.z = (p.z & clear) | (static_cast<std::uint64_t>((img >> 1) & 1) << a) |
        (static_cast<std::uint64_t>((img >> 3) & 1) << b);
  p.kappa = (p.kappa + phase_[code]) & 3;
}

const std::vector<Matrix2>& single_qubit_cliffords() {
  static const std::vector<Matrix2> group = [] {
    auto canon = [](Matrix2 m) {
      // Fix the global phase: first entry with nonzero modulus made real positive.
      for (int i = 0; i < 4; ++i) {
        const Complex c = m.data()[i];
        if (std::abs(c) > 1e-9) {
          m *= std::abs(c) / c;
          break;
        }
      }
      return m;
    };
    std::vector<Matrix2> out{Matrix2::Identity()};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const Matrix2& g : {gates::hadamard(), gates::phase_s()}) {
        const Matrix2 cand = canon(g * out[i]);
        bool seen = false;
        for (const auto& m : out) seen = seen || (m - cand).norm() < 1e-9;
        if (!seen) out.push_back(cand);
      }
    }
    return out;
  }();
  return group;
}

int pauli_image_rank(const std::vector<PauliString>& images) {
  std::set<std::pair<std::uint64_t, int>> classes;
  for (const auto& p : images) classes.insert({p.x, p.kappa & 1});
  return static_cast<int>(classes.size());
}

}  // namespace mcl
