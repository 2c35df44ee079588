// Copyright 2026 The SSR Toolkit Authors
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
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace ssr {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  double seconds;
  double budget_seconds;
  std::string detail;
};

/// Runs every acceptance criterion and prints one line per criterion.
/// `fixture_dir` may be empty, in which case built-in states replace the
/// fixture files. Returns true when all criteria pass.
bool run_acceptance(std::ostream& out, const std::filesystem::path& fixture_dir = {}, std::uint64_t seed = 2026,
                    std::vector<CriterionResult>* results = nullptr);

}  // namespace ssr
