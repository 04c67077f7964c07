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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace mcl {

// Top-level stream purposes. Each sampling site appends its own indices
// after the purpose so that streams never collide across subsystems.
enum class Purpose : std::uint64_t {
  Measurement = 1,
  Gates = 2,
  Trajectory = 3,
  Lattice = 4,
  MonteCarlo = 5,
  RankSamples = 6,
  Clifford = 7,
  Logical = 8,
  Sweep = 9,
  Acceptance = 10,
};

// A master seed plus a derivation path. The generator produced by rng() is a
// pure function of (seed, path).
class StreamKey {
 public:
  explicit StreamKey(std::uint64_t seed) : seed_(seed) {}
  StreamKey(std::uint64_t seed, std::vector<std::uint64_t> path)
      : seed_(seed), path_(std::move(path)) {}

  StreamKey child(std::uint64_t index) const;
  StreamKey child(Purpose purpose) const { return child(static_cast<std::uint64_t>(purpose)); }
  StreamKey child(std::initializer_list<std::uint64_t> indices) const;

  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::uint64_t>& path() const noexcept { return path_; }

  // 64-bit digest of (seed, path), used to seed the engine.
  std::uint64_t digest() const noexcept;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> path_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(const StreamKey& key) : engine_(key.digest()) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mcl
