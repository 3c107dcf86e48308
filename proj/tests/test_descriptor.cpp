// Copyright 2026 The qlga Authors
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

#include <random>

#include <gtest/gtest.h>

#include "qlga/descriptor.hpp"
#include "support/oracles.hpp"
#include "support/random_qca.hpp"

using namespace qlga;
using namespace qlga::testing;

namespace {

nlohmann::json identity_doc() {
  return nlohmann::json::parse(R"({"dimension":1,"cell":{"dim":2,"quiescent":0},"neighborhood":[[0]],
    "evolution":{"type":"circuit","layers":[{"mode":"commuting","gate":{"supports":[[0]],
    "matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}}]}})");
}

std::string parse_error_path(const nlohmann::json& doc) {
  try {
    parse_descriptor(doc);
  } catch (const ParseError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST(Parse, ExamplesLoad) {
  for (const char* f : {"meyer.json", "cnot1d.json", "kari2d.json", "toffoli.json", "toffoli_n01.json",
                        "toffoli_shifted.json", "identity.json"}) {
    SCOPED_TRACE(f);
    auto d = load_descriptor(data_path(f));
    EXPECT_EQ(parse_descriptor(to_json(d)).source, d.source);
  }
  EXPECT_EQ(load_descriptor(data_path("kari2d.json")).n, 2);
  EXPECT_TRUE(load_descriptor(data_path("cnot1d.json")).is_clifford());
  EXPECT_TRUE(load_descriptor(data_path("meyer.json")).is_qlga());
}

TEST(Parse, ErrorsCarryJsonPointers) {
  auto doc = identity_doc();
  doc.erase("neighborhood");
  EXPECT_EQ(parse_error_path(doc), "/neighborhood");

  doc = identity_doc();
  doc["cell"]["quiescent"] = 5;
  EXPECT_EQ(parse_error_path(doc).rfind("/cell", 0), 0u);

  doc = identity_doc();
  doc["evolution"]["layers"][0]["gate"]["matrix"][0][0] = nlohmann::json::array({2, 0});
  EXPECT_EQ(parse_error_path(doc), "/evolution/layers/0/gate/matrix");

  doc = identity_doc();
  doc["evolution"]["layers"][0]["mode"] = "sideways";
  EXPECT_EQ(parse_error_path(doc), "/evolution/layers/0/mode");

  doc = identity_doc();
  doc["evolution"]["type"] = "magic";
  EXPECT_EQ(parse_error_path(doc), "/evolution/type");

  doc = identity_doc();
  doc["evolution"]["layers"][0]["gate"]["matrix"][1] = nlohmann::json::array({{0, 0}});
  EXPECT_EQ(parse_error_path(doc), "/evolution/layers/0/gate/matrix/1");

  auto cnot = load_descriptor(data_path("cnot1d.json")).source;
  cnot["evolution"]["gates"][0]["operands"][0]["qubit"] = 7;
  EXPECT_EQ(parse_error_path(cnot), "/evolution/gates/0/operands/0/qubit");

  cnot = load_descriptor(data_path("cnot1d.json")).source;
  cnot["evolution"]["gates"].push_back({{"kind", "H"}, {"operands", {{{"offset", {0}}, {"qubit", 0}}}}});
  EXPECT_EQ(parse_error_path(cnot), "/evolution/gates");

  auto meyer = load_descriptor(data_path("meyer.json")).source;
  meyer["evolution"]["factors"][0]["offset"] = {0};
  EXPECT_EQ(parse_error_path(meyer), "/evolution/factors");

  EXPECT_THROW(parse_descriptor(nlohmann::json::array()), ParseError);
  EXPECT_THROW(load_descriptor("/nonexistent/file.json"), ParseError);
}

TEST(WindowUnitary, IdentityOnThreeCells) {
  auto w = build_window_unitary(parse_descriptor(identity_doc()), {3});
  EXPECT_EQ(w.unitary.rows(), 8);
  EXPECT_LT((w.unitary - Mat::Identity(8, 8)).norm(), 1e-14);
}

TEST(WindowUnitary, MeyerMatchesDirectAssembly) {
  auto d = load_descriptor(data_path("meyer.json"));
  auto w = build_window_unitary(d, {4});
  ASSERT_EQ(w.unitary.rows(), 256);
  EXPECT_NEAR(std::abs(w.quiescent_eigenvalue - 1.0), 0.0, 1e-12);
  EXPECT_LT(w.unitarity_residual, 1e-12);
  EXPECT_LT(w.translation_residual, 1e-12);
  Mat oracle = two_component_ring_unitary(meyer_collision(M_PI / 4, 0, 0), 4);
  EXPECT_LT((w.unitary - oracle).norm(), 1e-12);
}

TEST(WindowUnitary, ShiftedVariantMatchesClassicalRule) {
  auto d = load_descriptor(data_path("toffoli_shifted.json"));
  auto w = build_window_unitary(d, {4});
  // a_x <- a_{x+1}; b_x <- b_x ^ a_x ^ a_{x+1}, value 2a + b.
  Mat oracle = classical_ring_unitary(4, 4, [](const std::vector<int>& s) {
    std::vector<int> out(4);
    for (int x = 0; x < 4; ++x) {
      int a = s[x] / 2, b = s[x] % 2, an = s[(x + 1) % 4] / 2;
      out[x] = 2 * an + (b ^ a ^ an);
    }
    return out;
  });
  EXPECT_LT((w.unitary - oracle).norm(), 1e-12);
}

TEST(WindowUnitary, CnotMatchesClassicalRule) {
  auto d = load_descriptor(data_path("cnot1d.json"));
  auto w = build_window_unitary(d, {4});
  // Qubit 0 is the most significant bit: q0_x ^= q1_{x-1}, q2_x ^= q1_{x+1}.
  Mat oracle = classical_ring_unitary(8, 4, [](const std::vector<int>& s) {
    std::vector<int> out(4);
    auto q1 = [&](int x) { return (s[(x + 4) % 4] >> 1) & 1; };
    for (int x = 0; x < 4; ++x) out[x] = s[x] ^ (q1(x - 1) << 2) ^ q1(x + 1);
    return out;
  });
  EXPECT_LT((w.unitary - oracle).norm(), 1e-12);
  EXPECT_THROW(build_window_unitary(d, {5}), StructuralError);
}

TEST(Validate, ExamplesAreQcas) {
  for (const char* f : {"meyer.json", "cnot1d.json", "toffoli.json", "toffoli_shifted.json", "identity.json"}) {
    SCOPED_TRACE(f);
    auto r = validate(load_descriptor(data_path(f)));
    EXPECT_TRUE(r.unitary_ok);
    EXPECT_TRUE(r.translation_ok);
    EXPECT_TRUE(r.causal_ok);
    EXPECT_NEAR(std::abs(r.quiescent_eigenvalue), 1.0, 1e-9);
  }
}

TEST(Validate, ReportsTrueToffoliNeighborhood) {
  auto r = validate(load_descriptor(data_path("toffoli_n01.json")));
  EXPECT_FALSE(r.causal_ok);
  EXPECT_EQ(r.found_neighborhood, (std::vector<Cell>{{-1}, {0}, {1}}));
  EXPECT_EQ(r.declared_neighborhood, (std::vector<Cell>{{0}, {1}}));
}

TEST(Validate, RandomCircuitsAreCausalWithUnitEigenvalue) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto d = parse_descriptor(random_circuit(rng, 2 + trial % 2));
    auto r = validate(d);
    EXPECT_TRUE(r.unitary_ok && r.translation_ok && r.causal_ok) << "trial " << trial;
    EXPECT_NEAR(std::abs(r.quiescent_eigenvalue), 1.0, 1e-9) << "trial " << trial;
  }
}

TEST(Validate, RandomQlgasHaveFixedQuiescentConfiguration) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    auto rq = random_qlga(rng, 6);
    auto r = validate(parse_descriptor(rq.doc));
    EXPECT_TRUE(r.causal_ok) << "trial " << trial;
    EXPECT_NEAR(std::abs(r.quiescent_eigenvalue - 1.0), 0.0, 1e-9) << "trial " << trial;
  }
}
