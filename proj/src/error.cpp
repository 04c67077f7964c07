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


#include "mcl/error.hpp"

namespace mcl {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::InsufficientPaths: return "InsufficientPaths";
    case ErrorKind::NoBridgeFound: return "NoBridgeFound";
    case ErrorKind::NoGateSlot: return "NoGateSlot";
    case ErrorKind::GadgetPreconditionViolated: return "GadgetPreconditionViolated";
    case ErrorKind::NonClifford: return "NonClifford";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace mcl
