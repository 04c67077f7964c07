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


#include "mcl/statevector.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "mcl/error.hpp"

namespace mcl {

namespace {

constexpr double kZeroNorm = 1e-24;

void check_qubit(const StateVector& s, int q) {
  if (q < 0 || q >= s.n) throw Error(ErrorKind::InvalidInput, "qubit index out of range");
}

void check_size(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "state needs n >= 1");
  if (n > max_qubits()) {
    throw Error(ErrorKind::ResourceCap, "n=" + std::to_string(n) + " exceeds the dense engine cap of " +
                                            std::to_string(max_qubits()) + " qubits");
  }
}

double log_factor(double x) { return x > 0 ? 0.5 * std::log(x) : -std::numeric_limits<double>::infinity(); }

}  // namespace

int max_qubits() {
  if (const char* env = std::getenv("MCL_MAX_QUBITS")) {
    const int v = std::atoi(env);
    if (v > 0 && v <= 30) return v;
  }
  return 14;
}

StateVector StateVector::zero_state(int n) {
  check_size(n);
  StateVector s;
  s.n = n;
  s.amplitudes.assign(std::size_t{1} << n, Complex(0, 0));
  s.amplitudes[0] = 1.0;
  s.normalized = true;
  return s;
}

StateVector StateVector::from_amplitudes(int n, std::vector<Complex> amps) {
  check_size(n);
  if (amps.size() != (std::size_t{1} << n)) {
    throw Error(ErrorKind::InvalidInput, "amplitude count must be 2^n");
  }
  StateVector s;
  s.n = n;
  s.amplitudes = std::move(amps);
  s.normalized = std::abs(s.amplitude_norm_squared() - 1.0) < 1e-12;
  return s;
}

double StateVector::amplitude_norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum;
}

double StateVector::squared_norm() const {
  const double a = amplitude_norm_squared();
  if (a == 0.0) return 0.0;
  return std::exp(2.0 * log_scale) * a;
}

std::vector<Complex> StateVector::materialized() const {
  const double scale = std::exp(log_scale);
  std::vector<Complex> out(amplitudes);
  for (auto& a : out) a *= scale;
  return out;
}

std::string StateVector::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "# little-endian: qubit q is bit q of index; n=" << n << "\n";
  os << "index,re,im\n";
  const auto amps = materialized();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    os << i << ',' << amps[i].real() << ',' << amps[i].imag() << '\n';
  }
  return os.str();
}

std::string StateVector::to_json() const {
  nlohmann::ordered_json doc;
  doc["endianness"] = "little (qubit q is bit q of index)";
  doc["n"] = n;
  auto arr = nlohmann::ordered_json::array();
  const auto amps = materialized();
  for (std::size_t i = 0; i < amps.size(); ++i) arr.push_back({i, amps[i].real(), amps[i].imag()});
  doc["amplitudes"] = std::move(arr);
  return doc.dump();
}

void apply_two_qubit_gate(StateVector& state, const GateMatrix& u, int a, int b) {
  check_qubit(state, a);
  check_qubit(state, b);
  if (a == b) throw Error(ErrorKind::InvalidInput, "two-qubit gate needs distinct qubits");
  const std::size_t ma = std::size_t{1} << a;
  const std::size_t mb = std::size_t{1} << b;
  auto& amp = state.amplitudes;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (i & (ma | mb)) continue;
    const std::size_t idx[4] = {i, i | mb, i | ma, i | ma | mb};
    const Complex in[4] = {amp[idx[0]], amp[idx[1]], amp[idx[2]], amp[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      amp[idx[r]] = u(r, 0) * in[0] + u(r, 1) * in[1] + u(r, 2) * in[2] + u(r, 3) * in[3];
    }
  }
}

void apply_single_qubit_gate(StateVector& state, const Matrix2& u, int q) {
  check_qubit(state, q);
  const std::size_t m = std::size_t{1} << q;
  auto& amp = state.amplitudes;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (i & m) continue;
    const Complex x0 = amp[i];
    const Complex x1 = amp[i | m];
    amp[i] = u(0, 0) * x0 + u(0, 1) * x1;
    amp[i | m] = u(1, 0) * x0 + u(1, 1) * x1;
  }
}

void project(StateVector& state, int qubit, int outcome) {
  check_qubit(state, qubit);
  const std::size_t m = std::size_t{1} << qubit;
  const bool keep_set = outcome != 0;
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    if (((i & m) != 0) != keep_set) state.amplitudes[i] = 0;
  }
  state.normalized = false;
}

void apply_measurement_kraus(StateVector& state, int qubit, int outcome, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidInput, "Kraus rate must lie in (0, 1]");
  project(state, qubit, outcome);
  const double s = std::sqrt(p);
  for (auto& a : state.amplitudes) a *= s;
}

double probability_of_zero(const StateVector& state, int qubit) {
  check_qubit(state, qubit);
  const std::size_t m = std::size_t{1} << qubit;
  double zero = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    const double w = std::norm(state.amplitudes[i]);
    total += w;
    if (!(i & m)) zero += w;
  }
  return total > 0 ? zero / total : 0.0;
}

double RunResult::weight() const { return std::exp(log_weight); }

namespace {

void measurement_layer(StateVector& state, const MeasurementConfiguration& config, int layer, double p) {
  bool projected = false;
  const double before = state.amplitude_norm_squared();
  for (int q = 0; q < state.n; ++q) {
    const auto& s = config.at(q, layer);
    if (s.measured) {
      project(state, q, s.outcome);
      state.log_scale += log_factor(p);
      projected = true;
    } else {
      state.log_scale += log_factor(1.0 - p);
    }
  }
  if (!projected || before == 0.0) return;
  // Fold the projection loss into log_scale so long runs do not underflow.
  // A relative drop below kZeroNorm is rounding noise on an exact zero.
  const double after = state.amplitude_norm_squared();
  if (!(after > kZeroNorm * before)) {
    std::fill(state.amplitudes.begin(), state.amplitudes.end(), Complex(0, 0));
    return;
  }
  const double s = 1.0 / std::sqrt(after);
  for (auto& a : state.amplitudes) a *= s;
  state.log_scale += 0.5 * std::log(after);
}

RunResult finish(StateVector state) {
  RunResult out;
  const double a = state.amplitude_norm_squared();
  out.log_weight = a > 0 ? 2.0 * state.log_scale + std::log(a) : -std::numeric_limits<double>::infinity();
  out.state = std::move(state);
  return out;
}

}  // namespace

void evolve(StateVector& state, const BrickwallLayout& layout, std::span<const GateMatrix> gates,
            const MeasurementConfiguration& config, double p, int first_gate) {
  const int count = layout.gate_count();
  if (static_cast<int>(gates.size()) != count) {
    throw Error(ErrorKind::InvalidInput, "gate list length must equal placement count");
  }
  if (first_gate < 0 || first_gate > count) throw Error(ErrorKind::InvalidInput, "first_gate out of range");
  int g = first_gate;
  for (int layer = first_gate == 0 ? 0 : layout.placement(first_gate - 1).layer; layer < layout.t(); ++layer) {
    for (; g < count && layout.placement(g).layer == layer; ++g) {
      const int a = layout.placement(g).qubit;
      apply_two_qubit_gate(state, gates[g], a, a + 1);
    }
    measurement_layer(state, config, layer, p);
  }
  state.normalized = false;
}

RunResult run(const BrickwallLayout& layout, std::span<const GateMatrix> gates,
              const MeasurementConfiguration& config, double p) {
  if (config.n() != layout.n() || config.t() != layout.t()) {
    throw Error(ErrorKind::InvalidInput, "configuration dims do not match layout");
  }
  StateVector state = StateVector::zero_state(layout.n());
  evolve(state, layout, gates, config, p, 0);
  return finish(std::move(state));
}

RunResult run(const CircuitInstance& instance) {
  instance.validate();
  return run(instance.layout, instance.gates, instance.config, instance.p);
}

StateVector normalized(const StateVector& state) {
  const double a = state.amplitude_norm_squared();
  if (!(a > kZeroNorm)) throw Error(ErrorKind::ZeroWeight, "outcome set has zero Born weight");
  StateVector out = state;
  const double s = 1.0 / std::sqrt(a);
  for (auto& x : out.amplitudes) x *= s;
  out.log_scale = 0.0;
  out.normalized = true;
  return out;
}

StateVector normalized_output(const CircuitInstance& instance) { return normalized(run(instance).state); }

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) throw Error(ErrorKind::InvalidInput, "fidelity needs equal qubit counts");
  Complex overlap(0, 0);
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    overlap += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    na += std::norm(a.amplitudes[i]);
    nb += std::norm(b.amplitudes[i]);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(overlap) / (na * nb);
}

Trajectory sample_trajectory(int n, int t, double p, std::span<const GateMatrix> gates,
                             const StreamKey& stream) {
  const BrickwallLayout layout = BrickwallLayout::build(n, t);
  if (static_cast<int>(gates.size()) != layout.gate_count()) {
    throw Error(ErrorKind::InvalidInput, "gate list length must equal placement count");
  }
  Rng rng(stream);
  Trajectory out{MeasurementConfiguration(n, t), StateVector::zero_state(n), 0.0};
  auto& state = out.state;
  int g = 0;
  for (int layer = 0; layer < t; ++layer) {
    for (; g < layout.gate_count() && layout.placement(g).layer == layer; ++g) {
      const int a = layout.placement(g).qubit;
      apply_two_qubit_gate(state, gates[g], a, a + 1);
    }
    for (int q = 0; q < n; ++q) {
      if (rng.bernoulli(p)) {
        const double p0 = probability_of_zero(state, q);
        const int outcome = rng.uniform() < p0 ? 0 : 1;
        project(state, q, outcome);
        out.log_weight += std::log(p) + std::log(outcome == 0 ? p0 : 1.0 - p0);
        state = normalized(state);
        out.config.set(q, layer, MeasurementStatus::measured_with(outcome));
      } else {
        out.log_weight += std::log1p(-p);
      }
    }
  }
  state.normalized = true;
  return out;
}

int schmidt_rank(const StateVector& state, int cut, double tol) {
  if (cut < 1 || cut >= state.n) throw Error(ErrorKind::InvalidInput, "cut must lie in [1, n)");
  const Eigen::Index rows = Eigen::Index{1} << (state.n - cut);
  const Eigen::Index cols = Eigen::Index{1} << cut;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows * cols; ++i) m(i >> cut, i & (cols - 1)) = state.amplitudes[i];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > tol * sv(0) ? 1 : 0;
  return rank;
}

}  // namespace mcl
