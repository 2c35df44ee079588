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

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ssr/cli.hpp"
#include "ssr/serialization.hpp"

namespace ssr {
namespace {

const std::string kFixtures = SSR_FIXTURE_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ssr_toolkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, Measures) {
  const CliRun r = run({"measures", "--state", kFixtures + "/fig1.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_NEAR(j["eoe"].get<double>(), 0.650022421648354, 1e-12);
  EXPECT_NEAR(j["siv"].get<double>(), 5.0 / 9.0, 1e-12);
  EXPECT_EQ(j["p_n"].size(), 2u);
}

TEST(Cli, Teleport) {
  const CliRun r = run({"teleport", "--n", "1", "--m", "1", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["success_prob_exact"].get<double>(), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(j["success_prob_formula"].get<double>(), 0.5);
}

TEST(Cli, ConvertAndProtocol) {
  const CliRun ok = run({"convert-check", "--source", kFixtures + "/phi_plus.json", "--targets", kFixtures + "/phi_minus.json"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_TRUE(Json::parse(ok.out)["convertible"].get<bool>());
  const CliRun no = run({"convert-check", "--source", kFixtures + "/phi_plus.json", "--targets", kFixtures + "/fig1.json"});
  EXPECT_FALSE(Json::parse(no.out)["convertible"].get<bool>());

  const CliRun p = run({"protocol", "--source", kFixtures + "/phi_plus.json", "--target", kFixtures + "/phi_minus.json"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_GE(Json::parse(p.out)["min_fidelity"].get<double>(), 1.0 - 1e-9);

  const CliRun bad = run({"protocol", "--source", kFixtures + "/phi_plus.json", "--target", kFixtures + "/fig1.json"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(Json::parse(bad.out)["error"], "NotConvertible");
}

TEST(Cli, FormationAndHiding) {
  const CliRun f = run({"formation", "--rho", kFixtures + "/paper_rho.json", "--measure", "siv", "--restarts", "4"});
  ASSERT_EQ(f.code, 0) << f.err;
  const Json j = Json::parse(f.out);
  EXPECT_NEAR(j["value"].get<double>(), 0.5, 1e-6);
  EXPECT_TRUE(j["ensemble"].is_object());

  const CliRun h = run({"hiding", "--a", kFixtures + "/phi_plus.json", "--b", kFixtures + "/phi_minus.json", "--trials",
                     "100", "--seed", "4"});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_LE(Json::parse(h.out)["max_distance"].get<double>(), 1e-10);
}

TEST(Cli, AsymptoticCommands) {
  const CliRun d = run({"distill", "--p0", "0.3333333333333333", "--copies", "64", "--delta", "3"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_NEAR(Json::parse(d.out)["rate"].get<double>(), 39.0 / 64.0, 1e-15);

  const CliRun csv = run({"distill", "--p0", "0.5", "--copies", "4", "--csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "n,c_n,log2_count");
  EXPECT_NE(csv.out.find("\n2,0.375,2.58496250072\n"), std::string::npos) << csv.out;

  EXPECT_EQ(run({"dilute", "--p0", "0.3", "--copies", "64"}).code, 0);
  const CliRun g = run({"gaussian", "--p0", "0.5", "--copies", "16"});
  EXPECT_NEAR(Json::parse(g.out)["variance"].get<double>(), 4.0, 1e-9);
}

TEST(Cli, CsvCommands) {
  const CliRun s = run({"teleport-scaling", "--targets", "0.9", "--n", "1..3"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.out, "n,target,m_required,success\n1,0.9,9,0.9\n2,0.9,19,0.9\n3,0.9,29,0.9\n");

  const CliRun p = run({"projection-bound", "--copies", "2", "--seed", "1"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(p.out.substr(0, p.out.find('\n')), "sector,rank,eoe,bound");
  EXPECT_EQ(std::count(p.out.begin(), p.out.end(), '\n'), 6);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"measures"}).code, 2);
  EXPECT_EQ(run({"teleport-scaling", "--n", "x..y"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const CliRun domain = run({"distill", "--p0", "1.5", "--copies", "8"});
  EXPECT_EQ(domain.code, 1);
  EXPECT_EQ(Json::parse(domain.out)["error"], "DomainError");
  EXPECT_EQ(run({"measures", "--state", "/nonexistent.json"}).code, 1);
}

TEST(Cli, ByteIdenticalPerSeed) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"teleport", "--n", "3", "--m", "5", "--seed", "9"},
        std::vector<std::string>{"formation", "--rho", kFixtures + "/paper_rho.json", "--restarts", "3", "--seed", "2"},
        std::vector<std::string>{"projection-bound", "--copies", "3", "--seed", "5"},
        std::vector<std::string>{"povm-monotone", "--state", kFixtures + "/fig1.json", "--seed", "8"}}) {
    const CliRun a = run(args);
    const CliRun b = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

}  // namespace
}  // namespace ssr
