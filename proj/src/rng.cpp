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


#include "mcl/rng.hpp"

namespace mcl {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

StreamKey StreamKey::child(std::uint64_t index) const {
  StreamKey out = *this;
  out.path_.push_back(index);
  return out;
}

StreamKey StreamKey::child(std::initializer_list<std::uint64_t> indices) const {
  StreamKey out = *this;
  out.path_.insert(out.path_.end(), indices.begin(), indices.end());
  return out;
}

std::uint64_t StreamKey::digest() const noexcept {
  std::uint64_t h = splitmix64(seed_);
  // Length is mixed in so that a path is never a prefix-collision of another.
  h = splitmix64(h ^ splitmix64(path_.size() + 0x51ed2701ULL));
  for (std::uint64_t p : path_) h = splitmix64(h ^ splitmix64(p));
  return h;
}

}  // namespace mcl
