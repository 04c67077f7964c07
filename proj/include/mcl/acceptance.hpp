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

#include <functional>
#include <string>
#include <vector>

namespace mcl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  // Known not to hold at desk scale; reported as FAIL but does not fail the suite.
  bool expected_failure = false;
  std::string detail;
  double seconds = 0.0;
};

std::string format_result(const CriterionResult& r);

// Runs criteria 1..13 (or only `only` when non-empty), reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& report = {},
                                            const std::vector<int>& only = {});

// True when every criterion passed or failed only where expected.
bool acceptance_ok(const std::vector<CriterionResult>& results);

}  // namespace mcl
