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

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <openssl/evp.h>

#include "ssr/schmidt.hpp"
#include "ssr/serialization.hpp"
#include "ssr/states.hpp"
#include "test_util.hpp"

namespace ssr {
namespace {

using testing::expect_error;

const std::filesystem::path kFixtures = SSR_FIXTURE_DIR;

std::string sha256_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

TEST(Fixtures, ChecksumsMatch) {
  std::ifstream sums(kFixtures / "SHA256SUMS");
  ASSERT_TRUE(sums.good());
  std::string digest;
  std::string name;
  int checked = 0;
  while (sums >> digest >> name) {
    EXPECT_EQ(sha256_hex(kFixtures / name), digest) << name;
    ++checked;
  }
  EXPECT_EQ(checked, 5);
}

double state_distance(const BlockedPureState& a, const BlockedPureState& b) {
  return (full_amplitudes(a) - full_amplitudes(b)).norm();
}

TEST(Fixtures, MatchBuiltInStates) {
  EXPECT_LT(state_distance(read_state(kFixtures / "fig1.json"), states::fig1()), 1e-15);
  EXPECT_LT(state_distance(read_state(kFixtures / "phi_plus.json"), states::phi_plus()), 1e-15);
  EXPECT_LT(state_distance(read_state(kFixtures / "phi_minus.json"), states::phi_minus()), 1e-15);
  EXPECT_LT(state_distance(read_state(kFixtures / "constant_number_singlet.json"), states::constant_number_singlet()),
            1e-15);
  const Matrix rho = read_density(kFixtures / "paper_rho.json").to_full();
  EXPECT_LT((rho - states::separable_ssr_example().to_full()).norm(), 1e-15);
  EXPECT_NEAR(siv(read_state(kFixtures / "fig1.json")), 5.0 / 9.0, 1e-12);
}

TEST(Fixtures, RoundTripThroughSerializer) {
  for (const char* name : {"fig1.json", "phi_plus.json", "phi_minus.json", "constant_number_singlet.json"}) {
    const BlockedPureState s = read_state(kFixtures / name);
    const BlockedPureState t = state_from_json(Json::parse(to_json(s).dump()));
    EXPECT_EQ(full_amplitudes(s), full_amplitudes(t)) << name;
  }
  const BlockedDensity rho = read_density(kFixtures / "paper_rho.json");
  EXPECT_EQ(density_from_json(Json::parse(to_json(rho).dump())).to_full(), rho.to_full());
}

TEST(Serialization, PovmRoundTripAndFiles) {
  const LocalPOVM p = random_povm(SectorSpace({1, 2, 1}), 3, 5);
  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "ssr_povm_roundtrip.json";
  write_json_file(tmp, to_json(p));
  const LocalPOVM q = read_povm(tmp);
  std::filesystem::remove(tmp);
  ASSERT_EQ(p.size(), q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (const auto& [n, m] : p.elements()[i]) EXPECT_EQ(m, q.elements()[i].at(n));
  }
}

TEST(Serialization, MalformedInput) {
  expect_error(ErrorCode::kInvalidInput, [] { state_from_json(Json::parse(R"({"n_total": 1})")); });
  expect_error(ErrorCode::kInvalidInput, [] {
    state_from_json(Json::parse(
        R"({"n_total":1,"alice_dims":[1,1],"bob_dims":[1,1],"blocks":[{"n_alice":0,"amplitudes":[[[1,0,0]]]}]})"));
  });
  expect_error(ErrorCode::kInvalidInput, [] { read_state("/nonexistent/state.json"); });
}

}  // namespace
}  // namespace ssr
