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

// JSON file formats. Complex numbers are [re, im] pairs; matrices are
// row-major lists of rows. Doubles are written in shortest round-trip form,
// so read(write(x)) reproduces every amplitude bit for bit.
//
//   state:   {"schema":1, "n_total":N, "alice_dims":[..], "bob_dims":[..],
//             "blocks":[{"n_alice":n, "amplitudes":[[[re,im],..],..]}]}
//   density: {"schema":1, "alice_dims":[..], "bob_dims":[..],
//             "sectors":[{"n_total":N, "weight":q, "matrix":[..]}]}
//   povm:    {"schema":1, "dims":[..],
//             "elements":[{"sectors":[{"n":n, "matrix":[..]}]}]}

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ssr/fock.hpp"

namespace ssr {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const BlockedPureState& state);
Json to_json(const BlockedDensity& rho);
Json to_json(const LocalPOVM& povm);

BlockedPureState state_from_json(const Json& j);
BlockedDensity density_from_json(const Json& j);
LocalPOVM povm_from_json(const Json& j);

/// Parses a file; malformed JSON or missing fields raise Error(kInvalidInput).
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

BlockedPureState read_state(const std::filesystem::path& path);
BlockedDensity read_density(const std::filesystem::path& path);
LocalPOVM read_povm(const std::filesystem::path& path);

}  // namespace ssr
