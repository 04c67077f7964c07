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


#include "mcl/dimension.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mcl/error.hpp"
#include "mcl/statevector.hpp"

namespace mcl {

const char* to_string(PauliFamily family) {
  return family == PauliFamily::Full15 ? "Full15" : "SingleQubit6";
}

std::vector<PerturbationIndex> perturbation_indices(int gate_count, PauliFamily family) {
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PerturbationIndex> out;
  for (int g = 0; g < gate_count; ++g) {
    if (family == PauliFamily::Full15) {
      for (char a : letters)
        for (char b : letters)
          if (a != 'I' || b != 'I') out.push_back({g, a, b});
    } else {
      for (char s : {'X', 'Y', 'Z'}) out.push_back({g, 'I', s});
      for (char s : {'X', 'Y', 'Z'}) out.push_back({g, s, 'I'});
    }
  }
  return out;
}

Eigen::MatrixXd perturbed_outputs(const CircuitInstance& instance, PauliFamily family) {
  return perturbed_outputs(instance, perturbation_indices(instance.layout.gate_count(), family));
}

Eigen::MatrixXd perturbed_outputs(const CircuitInstance& instance, const std::vector<PerturbationIndex>& indices) {
  instance.validate();
  const auto& layout = instance.layout;
  const int count = layout.gate_count();
  const double p = instance.p;

  // snapshots[j]: state right after gate j, its layer's measurements pending.
  std::vector<StateVector> snapshots;
  snapshots.reserve(count);
  {
    StateVector s = StateVector::zero_state(layout.n());
    for (int j = 0; j < count; ++j) {
      const int a = layout.placement(j).qubit;
      apply_two_qubit_gate(s, instance.gates[j], a, a + 1);
      snapshots.push_back(s);
      const bool layer_done = j + 1 == count || layout.placement(j + 1).layer != layout.placement(j).layer;
      if (layer_done) {
        // Finish this layer's measurements by evolving past it with no gates.
        for (int q = 0; q < layout.n(); ++q) {
          const auto& st = instance.config.at(q, layout.placement(j).layer);
          if (st.measured) project(s, q, st.outcome);
        }
      }
    }
  }

  const Eigen::Index dim = Eigen::Index{1} << layout.n();
  Eigen::MatrixXd out(2 * dim, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const auto& idx = indices[k];
    StateVector s = snapshots[idx.gate];
    const int a = layout.placement(idx.gate).qubit;
    if (idx.alpha != 'I') apply_single_qubit_gate(s, gates::pauli(idx.alpha), a);
    if (idx.beta != 'I') apply_single_qubit_gate(s, gates::pauli(idx.beta), a + 1);
    evolve(s, layout, instance.gates, instance.config, p, idx.gate + 1);
    for (Eigen::Index i = 0; i < dim; ++i) {
      out(i, static_cast<Eigen::Index>(k)) = s.amplitudes[i].real();
      out(dim + i, static_cast<Eigen::Index>(k)) = s.amplitudes[i].imag();
    }
  }
  return out;
}

std::string RankReport::to_json(int max_values) const {
  nlohmann::ordered_json doc;
  doc["n"] = n;
  doc["t"] = t;
  doc["R"] = gates;
  doc["family"] = to_string(family);
  doc["tol"] = tol;
  doc["rank"] = rank;
  const auto k = std::min<std::size_t>(singular_values.size(), static_cast<std::size_t>(std::max(0, max_values)));
  doc["singular_values"] = std::vector<double>(singular_values.begin(), singular_values.begin() + k);
  doc["gap"] = std::isfinite(gap) ? nlohmann::ordered_json(gap) : nlohmann::ordered_json(nullptr);
  doc["gap_warning"] = gap_warning;
  doc["seed"] = seed;
  return doc.dump();
}

RankReport numerical_rank(const Eigen::MatrixXd& matrix, double tol) {
  if (!(tol > 0 && tol < 1)) throw Error(ErrorKind::InvalidInput, "tolerance must lie in (0, 1)");
  RankReport rep;
  rep.tol = tol;
  if (matrix.size() == 0) {
    rep.gap = std::numeric_limits<double>::infinity();
    return rep;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix);
  const auto& sv = svd.singularValues();
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = rep.singular_values.empty() ? 0.0 : rep.singular_values[0];
  for (double s : rep.singular_values) rep.rank += (top > 0 && s > tol * top) ? 1 : 0;
  if (rep.rank == 0 || rep.rank == static_cast<int>(rep.singular_values.size())) {
    rep.gap = std::numeric_limits<double>::infinity();
  } else {
    const double next = rep.singular_values[rep.rank];
    rep.gap = next > 0 ? rep.singular_values[rep.rank - 1] / next : std::numeric_limits<double>::infinity();
  }
  rep.gap_warning = rep.gap < 1e3;
  return rep;
}

RankReport estimate_accessible_dimension(const MeasurementConfiguration& config, int samples,
                                         const StreamKey& stream, PauliFamily family, double tol) {
  if (samples < 1) throw Error(ErrorKind::InvalidInput, "need at least one gate sample");
  const auto layout = BrickwallLayout::build(config.n(), config.t());
  RankReport best;
  bool have = false;
  for (int s = 0; s < samples; ++s) {
    const StreamKey key = stream.child(static_cast<std::uint64_t>(s));
    CircuitInstance inst{layout, sample_haar_gates(layout, key), config, 0.5};
    RankReport rep = numerical_rank(perturbed_outputs(inst, family), tol);
    rep.seed = key.digest();
    if (!have || rep.rank > best.rank) {
      best = std::move(rep);
      have = true;
    }
  }
  best.n = config.n();
  best.t = config.t();
  best.gates = layout.gate_count();
  best.family = family;
  return best;
}

CmBound cm_lower_bound(double d, int n) {
  if (d < 0) throw Error(ErrorKind::InvalidInput, "dimension must be non-negative");
  const double num = std::max(0.0, d - 3.0 * n - 2.0);
  return {num / 13.0, num / 11.0};
}

ShortCircuitBound short_circuit_dim_bound(int r_prime, int m, int n) {
  if (r_prime < 0 || m < 0 || m > 2 * r_prime) throw Error(ErrorKind::InvalidInput, "need 0 <= m <= 2R'");
  return {9 * r_prime + m + 3 * n, 11 * r_prime + 3 * n};
}

MonotonicityResult projector_monotonicity_test(const MeasurementConfiguration& config, int qubit, int layer,
                                               int samples, const StreamKey& stream) {
  if (config.measured(qubit, layer)) throw Error(ErrorKind::InvalidInput, "extra site must be unmeasured");
  MeasurementConfiguration extra = config;
  extra.set(qubit, layer, MeasurementStatus::measured_with(0));
  MonotonicityResult r;
  r.d_before = estimate_accessible_dimension(config, samples, stream).rank;
  r.d_after = estimate_accessible_dimension(extra, samples, stream).rank;
  r.pass = r.d_after <= r.d_before;
  return r;
}

namespace {

PauliString propagate_tables(const BrickwallLayout& layout, const std::vector<CliffordTable>& tables,
                             PauliString p, int last_gate) {
  for (int g = last_gate; g >= 0; --g) tables[g].conjugate(p, layout.placement(g).qubit);
  return p;
}

GateMatrix to_su4(GateMatrix u) {
  const Complex root = std::pow(u.determinant(), 0.25);
  return u / root;
}

GateMatrix random_clifford_gate(Rng& rng) {
  const auto& c1 = single_qubit_cliffords();
  auto pick = [&]() -> const Matrix2& { return c1[rng.below(c1.size())]; };
  const GateMatrix w = rng.bernoulli(0.5) ? gates::cnot() : gates::identity();
  const GateMatrix left = gates::kron(pick(), pick());
  const GateMatrix right = gates::kron(pick(), pick());
  return to_su4(left * w * right);
}

CliffordCircuit build_clifford(int n, int t, int blocks, const StreamKey& stream) {
  CliffordCircuit c{BrickwallLayout::build(n, t), {}, 3 * n / 2, blocks, {}, {}};
  const auto& layout = c.layout;
  c.gates.assign(layout.gate_count(), gates::identity());
  const CliffordTable id_table(gates::identity());
  std::vector<CliffordTable> tables(layout.gate_count(), id_table);
  const int B = c.block_layers;

  auto probe_of = [&](int b) {
    int probe = -1;
    for (int l = b * B; l < (b + 1) * B; ++l)
      if (auto g = layout.gate_at(l, 0); g && layout.placement(*g).qubit == 0) probe = *g;
    return probe;
  };
  std::set<std::pair<std::uint64_t, int>> seen;
  const PauliString z0 = PauliString::single(n, 0, 'Z');
  for (int b = 0; b < blocks; ++b) {
    const int probe = probe_of(b);
    if (probe < 0) throw std::logic_error("block without a probe gate");
    c.probe_gates.push_back(probe);
    if (b == 0) {
      const auto img = propagate_tables(layout, tables, z0, probe);
      seen.insert({img.x, img.kappa & 1});
      c.images.push_back(img);
      continue;
    }
    std::vector<int> block_gates;
    for (int l = b * B; l < (b + 1) * B; ++l)
      for (int g : layout.layer_gates(l)) block_gates.push_back(g);
    Rng rng(stream.child(static_cast<std::uint64_t>(b)));
    bool accepted = false;
    for (int attempt = 0; attempt < 20000 && !accepted; ++attempt) {
      for (int g : block_gates) {
        c.gates[g] = random_clifford_gate(rng);
        tables[g] = CliffordTable(c.gates[g]);
      }
      const auto img = propagate_tables(layout, tables, z0, probe);
      if (seen.insert({img.x, img.kappa & 1}).second) {
        c.images.push_back(img);
        accepted = true;
      }
    }
    if (!accepted) throw Error(ErrorKind::InvalidInput, "no new Pauli image found for block " + std::to_string(b));
  }
  return c;
}

}  // namespace

CliffordCircuit build_lower_bound_clifford(int n, int blocks, const StreamKey& stream) {
  if (n < 2 || n % 2 || n > 30) throw Error(ErrorKind::InvalidInput, "need even n in [2, 30]");
  const long long cap = (2LL << n) - 1;
  if (blocks < 1 || blocks > cap) {
    throw Error(ErrorKind::InvalidInput, "block count must lie in [1, 2^{n+1} - 1]");
  }
  int t = blocks * (3 * n / 2);
  t += t % 2;
  return build_clifford(n, t, blocks, stream);
}

CliffordCircuit build_lower_bound_clifford_depth(int n, int t, const StreamKey& stream) {
  if (n < 2 || n % 2 || n > 30) throw Error(ErrorKind::InvalidInput, "need even n in [2, 30]");
  const long long cap = (2LL << n) - 1;
  const int blocks = static_cast<int>(std::min<long long>(2LL * t / (3LL * n), cap));
  return build_clifford(n, t, blocks, stream);
}

PauliString pauli_propagate(const BrickwallLayout& layout, const std::vector<GateMatrix>& gates, PauliString p,
                            int last_gate) {
  if (last_gate >= layout.gate_count()) throw Error(ErrorKind::InvalidInput, "gate index out of range");
  for (int g = last_gate; g >= 0; --g) CliffordTable(gates[g]).conjugate(p, layout.placement(g).qubit);
  return p;
}

D0Growth verify_d0_growth(int n, int t, const StreamKey& stream) {
  const auto c = build_lower_bound_clifford_depth(n, t, stream);
  const auto& layout = c.layout;
  D0Growth r;
  r.bound = 2 * t / (3 * n);
  r.cap = static_cast<int>((2LL << n) - 1);
  CircuitInstance inst{layout, c.gates, MeasurementConfiguration(n, t), 0.0};
  r.rank_svd = numerical_rank(perturbed_outputs(inst, PauliFamily::SingleQubit6)).rank;

  std::vector<CliffordTable> tables;
  tables.reserve(c.gates.size());
  for (const auto& g : c.gates) tables.emplace_back(g);
  std::vector<PauliString> images;
  for (const auto& idx : perturbation_indices(layout.gate_count(), PauliFamily::SingleQubit6)) {
    const int a = layout.placement(idx.gate).qubit;
    const PauliString pert = PauliString::single(n, a, idx.alpha) * PauliString::single(n, a + 1, idx.beta);
    images.push_back(propagate_tables(layout, tables, pert, idx.gate));
  }
  r.rank_pauli = pauli_image_rank(images);
  const int target = std::min(r.bound, r.cap);
  r.pass = r.rank_svd >= target && r.rank_pauli >= target && r.rank_svd <= r.cap && r.rank_svd == r.rank_pauli;
  return r;
}

}  // namespace mcl
