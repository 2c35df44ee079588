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

#include "ssr/serialization.hpp"

#include <fstream>
#include <sstream>

namespace ssr {

namespace {

// Wraps nlohmann's type/key errors into the toolkit's error type.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array()) throw Error(ErrorCode::kInvalidInput, "matrix must be a list of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Json& row = j.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != cols) {
        throw Error(ErrorCode::kInvalidInput, "ragged matrix");
      }
      for (Eigen::Index c = 0; c < cols; ++c) {
        const Json& z = row.at(static_cast<std::size_t>(c));
        if (!z.is_array() || z.size() != 2) throw Error(ErrorCode::kInvalidInput, "entry must be [re, im]");
        m(i, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    }
    return m;
  });
}

Json to_json(const BlockedPureState& state) {
  Json blocks = Json::array();
  for (const auto& [n, m] : state.blocks()) {
    blocks.push_back({{"n_alice", n}, {"amplitudes", matrix_to_json(m)}});
  }
  return {{"schema", kSchemaVersion},
          {"n_total", state.n_total()},
          {"alice_dims", state.alice().dims()},
          {"bob_dims", state.bob().dims()},
          {"blocks", std::move(blocks)}};
}

Json to_json(const BlockedDensity& rho) {
  Json sectors = Json::array();
  for (const auto& [n_total, sec] : rho.sectors()) {
    sectors.push_back({{"n_total", n_total}, {"weight", sec.weight}, {"matrix", matrix_to_json(sec.rho)}});
  }
  return {{"schema", kSchemaVersion},
          {"alice_dims", rho.alice().dims()},
          {"bob_dims", rho.bob().dims()},
          {"sectors", std::move(sectors)}};
}

Json to_json(const LocalPOVM& povm) {
  Json elements = Json::array();
  for (const auto& el : povm.elements()) {
    Json sectors = Json::array();
    for (const auto& [n, m] : el) sectors.push_back({{"n", n}, {"matrix", matrix_to_json(m)}});
    elements.push_back({{"sectors", std::move(sectors)}});
  }
  return {{"schema", kSchemaVersion}, {"dims", povm.space().dims()}, {"elements", std::move(elements)}};
}

BlockedPureState state_from_json(const Json& j) {
  return guarded("state", [&] {
    SectorSpace alice(j.at("alice_dims").get<std::vector<int>>());
    SectorSpace bob(j.at("bob_dims").get<std::vector<int>>());
    std::map<int, Matrix> blocks;
    for (const Json& b : j.at("blocks")) {
      const int n = b.at("n_alice").get<int>();
      if (!blocks.emplace(n, matrix_from_json(b.at("amplitudes"))).second) {
        throw Error(ErrorCode::kInvalidInput, "duplicate block " + std::to_string(n));
      }
    }
    return BlockedPureState(std::move(alice), std::move(bob), j.at("n_total").get<int>(), std::move(blocks));
  });
}

BlockedDensity density_from_json(const Json& j) {
  return guarded("density", [&] {
    SectorSpace alice(j.at("alice_dims").get<std::vector<int>>());
    SectorSpace bob(j.at("bob_dims").get<std::vector<int>>());
    std::map<int, DensitySector> sectors;
    for (const Json& s : j.at("sectors")) {
      const int n_total = s.at("n_total").get<int>();
      DensitySector sec{s.at("weight").get<double>(), matrix_from_json(s.at("matrix"))};
      if (!sectors.emplace(n_total, std::move(sec)).second) {
        throw Error(ErrorCode::kInvalidInput, "duplicate sector " + std::to_string(n_total));
      }
    }
    return BlockedDensity(std::move(alice), std::move(bob), std::move(sectors));
  });
}

LocalPOVM povm_from_json(const Json& j) {
  return guarded("povm", [&] {
    SectorSpace space(j.at("dims").get<std::vector<int>>());
    std::vector<BlockOperator> elements;
    for (const Json& e : j.at("elements")) {
      BlockOperator op;
      for (const Json& s : e.at("sectors")) op.emplace(s.at("n").get<int>(), matrix_from_json(s.at("matrix")));
      elements.push_back(std::move(op));
    }
    return LocalPOVM(std::move(space), std::move(elements));
  });
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInput, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

BlockedPureState read_state(const std::filesystem::path& path) { return state_from_json(read_json_file(path)); }
BlockedDensity read_density(const std::filesystem::path& path) { return density_from_json(read_json_file(path)); }
LocalPOVM read_povm(const std::filesystem::path& path) { return povm_from_json(read_json_file(path)); }

}  // namespace ssr
