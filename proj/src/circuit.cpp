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


#include "mcl/circuit.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

#include "mcl/error.hpp"

namespace mcl {

using json = nlohmann::ordered_json;

BrickwallLayout BrickwallLayout::build(int n, int t) {
  if (n < 2 || t < 2 || n % 2 != 0 || t % 2 != 0) {
    throw Error(ErrorKind::InvalidInput, "layout needs even n, t >= 2 (got n=" + std::to_string(n) +
                                             ", t=" + std::to_string(t) + ")");
  }
  BrickwallLayout out;
  out.n_ = n;
  out.t_ = t;
  out.layer_offset_.reserve(t + 1);
  for (int layer = 0; layer < t; ++layer) {
    out.layer_offset_.push_back(static_cast<int>(out.placements_.size()));
    for (int a = layer % 2; a + 1 < n; a += 2) out.placements_.push_back({layer, a});
  }
  out.layer_offset_.push_back(static_cast<int>(out.placements_.size()));
  return out;
}

std::vector<int> BrickwallLayout::layer_gates(int layer) const {
  std::vector<int> out;
  for (int i = layer_offset_.at(layer); i < layer_offset_.at(layer + 1); ++i) out.push_back(i);
  return out;
}

std::optional<int> BrickwallLayout::gate_at(int layer, int qubit) const {
  if (layer < 0 || layer >= t_ || qubit < 0 || qubit >= n_) return std::nullopt;
  const int first = qubit - ((qubit - layer % 2) % 2 + 2) % 2;
  if (first < 0 || first + 1 >= n_) return std::nullopt;
  return layer_offset_[layer] + (first - layer % 2) / 2;
}

MeasurementConfiguration::MeasurementConfiguration(int n, int t)
    : n_(n), t_(t), sites_(static_cast<std::size_t>(n) * t) {
  if (n < 1 || t < 1) throw Error(ErrorKind::InvalidInput, "configuration needs n, t >= 1");
}

const MeasurementStatus& MeasurementConfiguration::at(int qubit, int layer) const {
  if (qubit < 0 || qubit >= n_ || layer < 0 || layer >= t_) {
    throw Error(ErrorKind::InvalidInput, "site out of range");
  }
  return sites_[static_cast<std::size_t>(layer) * n_ + qubit];
}

void MeasurementConfiguration::set(int qubit, int layer, MeasurementStatus status) {
  if (qubit < 0 || qubit >= n_ || layer < 0 || layer >= t_) {
    throw Error(ErrorKind::InvalidInput, "site out of range");
  }
  if (!status.measured) status.outcome = 0;
  sites_[static_cast<std::size_t>(layer) * n_ + qubit] = status;
}

int MeasurementConfiguration::measured_count() const {
  int count = 0;
  for (const auto& s : sites_) count += s.measured ? 1 : 0;
  return count;
}

bool MeasurementConfiguration::all_outcomes_zero() const {
  for (const auto& s : sites_)
    if (s.measured && s.outcome != 0) return false;
  return true;
}

MeasurementConfiguration MeasurementConfiguration::with_zero_outcomes() const {
  MeasurementConfiguration out = *this;
  for (auto& s : out.sites_) s.outcome = 0;
  return out;
}

std::string MeasurementConfiguration::to_json() const {
  json doc;
  doc["version"] = 1;
  doc["n"] = n_;
  doc["t"] = t_;
  json sites = json::array();
  for (int layer = 0; layer < t_; ++layer) {
    for (int q = 0; q < n_; ++q) {
      const auto& s = at(q, layer);
      json site;
      site["q"] = q;
      site["tau"] = layer;
      site["status"] = s.measured ? "measured" : "unmeasured";
      if (s.measured) site["outcome"] = static_cast<int>(s.outcome);
      sites.push_back(std::move(site));
    }
  }
  doc["sites"] = std::move(sites);
  return doc.dump();
}

MeasurementConfiguration MeasurementConfiguration::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("measurement configuration: ") + e.what());
  }
  if (doc.value("version", 0) != 1) {
    throw Error(ErrorKind::Config, "measurement configuration: unsupported version");
  }
  MeasurementConfiguration out(doc.at("n").get<int>(), doc.at("t").get<int>());
  const auto& sites = doc.at("sites");
  if (sites.size() != out.site_count()) {
    throw Error(ErrorKind::Config, "measurement configuration: expected n*t sites");
  }
  for (const auto& site : sites) {
    const std::string status = site.at("status").get<std::string>();
    MeasurementStatus s;
    if (status == "measured") {
      s = MeasurementStatus::measured_with(site.at("outcome").get<int>());
    } else if (status != "unmeasured") {
      throw Error(ErrorKind::Config, "measurement configuration: bad status '" + status + "'");
    }
    out.set(site.at("q").get<int>(), site.at("tau").get<int>(), s);
  }
  return out;
}

MeasurementConfiguration sample_measurement_configuration(int n, int t, double p, OutcomeMode mode,
                                                          const StreamKey& stream) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidInput, "rate p must lie in [0, 1]");
  MeasurementConfiguration out(n, t);
  Rng rng(stream);
  for (int layer = 0; layer < t; ++layer) {
    for (int q = 0; q < n; ++q) {
      const bool measured = rng.bernoulli(p);
      // Deferred outcomes are drawn uniformly here only as placeholders; the
      // trajectory sampler replaces them with Born-rule draws.
      const int outcome = (mode == OutcomeMode::OutcomeDeferred && rng.bernoulli(0.5)) ? 1 : 0;
      if (measured) out.set(q, layer, MeasurementStatus::measured_with(outcome));
    }
  }
  return out;
}

void CircuitInstance::validate() const {
  if (static_cast<int>(gates.size()) != layout.gate_count()) {
    throw Error(ErrorKind::InvalidInput, "gate list length must equal placement count");
  }
  if (config.n() != layout.n() || config.t() != layout.t()) {
    throw Error(ErrorKind::InvalidInput, "configuration dims do not match layout");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidInput, "rate p must lie in [0, 1]");
}

namespace {

template <int N>
Eigen::Matrix<Complex, N, N> haar_unitary(Rng& rng) {
  Eigen::Matrix<Complex, N, N> g;
  const double s = 1.0 / std::sqrt(2.0);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) g(r, c) = Complex(rng.normal() * s, rng.normal() * s);
  Eigen::HouseholderQR<Eigen::Matrix<Complex, N, N>> qr(g);
  Eigen::Matrix<Complex, N, N> q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int c = 0; c < N; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    q.col(c) *= mag > 0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace

GateMatrix sample_haar_su4(const StreamKey& stream) {
  Rng rng(stream);
  GateMatrix u = haar_unitary<4>(rng);
  const Complex root = std::pow(u.determinant(), 0.25);
  return u / root;
}

std::vector<GateMatrix> sample_haar_gates(const BrickwallLayout& layout, const StreamKey& stream) {
  std::vector<GateMatrix> out;
  out.reserve(layout.gate_count());
  for (int i = 0; i < layout.gate_count(); ++i) out.push_back(sample_haar_su4(stream.child(i)));
  return out;
}

Matrix2 sample_haar_u2(Rng& rng) { return haar_unitary<2>(rng); }

double unitarity_residual(const GateMatrix& u) {
  return (u.adjoint() * u - GateMatrix::Identity()).cwiseAbs().maxCoeff();
}

NormalizedInstance normalize_outcomes_to_zero(const CircuitInstance& instance) {
  instance.validate();
  const auto& layout = instance.layout;
  const int n = layout.n();
  const int t = layout.t();
  NormalizedInstance out{instance, 0};
  auto& config = out.instance.config;

  // Pauli frame: the original wire state equals X^frame applied to the new one.
  std::vector<int> frame(n, 0);
  // Frame a qubit should carry out of a gate at `layer`: the outcome of the
  // first measured site before the next gate on that qubit.
  auto frame_after = [&](int q, int layer) {
    for (int l = layer; l < t; ++l) {
      if (l > layer && layout.gate_at(l, q)) break;
      const auto& s = instance.config.at(q, l);
      if (s.measured) return static_cast<int>(s.outcome);
    }
    return 0;
  };

  const Matrix2 x = gates::pauli('X');
  const Matrix2 id = Matrix2::Identity();
  for (int layer = 0; layer < t; ++layer) {
    for (int g : layout.layer_gates(layer)) {
      const int a = layout.placement(g).qubit;
      const int b = a + 1;
      const int ga = frame_after(a, layer);
      const int gb = frame_after(b, layer);
      const GateMatrix before = gates::kron(frame[a] ? x : id, frame[b] ? x : id);
      const GateMatrix after = gates::kron(ga ? x : id, gb ? x : id);
      out.instance.gates[g] = after * instance.gates[g] * before;
      frame[a] = ga;
      frame[b] = gb;
    }
    for (int q = 0; q < n; ++q) {
      const auto& s = instance.config.at(q, layer);
      if (!s.measured) continue;
      // A residual 1 survives only when two gate-free sites on one wire carry
      // conflicting outcomes, i.e. the original weight is structurally zero.
      config.set(q, layer, MeasurementStatus::measured_with(s.outcome ^ frame[q]));
    }
  }
  for (int q = 0; q < n; ++q)
    if (frame[q]) out.output_flips |= (std::uint64_t{1} << q);
  return out;
}

namespace gates {

Matrix2 pauli(char which) {
  Matrix2 m;
  switch (which) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw Error(ErrorKind::InvalidInput, std::string("unknown Pauli '") + which + "'");
  }
  return m;
}

Matrix2 hadamard() {
  Matrix2 m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Matrix2 phase_s() {
  Matrix2 m;
  m << 1, 0, 0, Complex(0, 1);
  return m;
}

GateMatrix kron(const Matrix2& a, const Matrix2& b) {
  GateMatrix out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int rr = 0; rr < 2; ++rr)
        for (int cc = 0; cc < 2; ++cc) out(2 * r + rr, 2 * c + cc) = a(r, c) * b(rr, cc);
  return out;
}

GateMatrix identity() { return GateMatrix::Identity(); }

GateMatrix swap() {
  GateMatrix m = GateMatrix::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}

GateMatrix cnot() {
  GateMatrix m = GateMatrix::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

GateMatrix cnot_reversed() {
  GateMatrix m = GateMatrix::Zero();
  m(0, 0) = m(3, 1) = m(2, 2) = m(1, 3) = 1;
  return m;
}

}  // namespace gates

}  // namespace mcl
