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

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "qlga/sim.hpp"
#include "support/oracles.hpp"
#include "support/random_qca.hpp"

using namespace qlga;
using namespace qlga::testing;

namespace {

QcaDescriptor meyer(double theta, double alpha, double beta) {
  auto doc = load_descriptor(data_path("meyer.json")).source;
  doc["evolution"]["collision"] = matrix_to_json(meyer_collision(theta, alpha, beta));
  return parse_descriptor(doc);
}

using Key = std::vector<std::pair<Cell, int>>;

cplx amplitude(const Excitations& ex, const Key& k) {
  auto it = ex.find(k);
  return it == ex.end() ? cplx(0) : it->second;
}

Mat projector(int d, int v) {
  Mat p = Mat::Zero(d, d);
  p(v, v) = 1;
  return p;
}

// Random normalized superposition on a window of `cells` cells.
ConfigState random_state(const QlgaEvolution& g, int cells, int terms, std::mt19937_64& rng) {
  ConfigState s = vacuum(g, 1, {0}, {cells});
  s.amplitudes.clear();
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> pick(0, 1 << 20);
  for (int t = 0; t < terms; ++t) {
    Digits dg;
    for (int c = 0; c < cells; ++c)
      for (int dim : s.dims) dg.push_back(pick(rng) % dim);
    s.amplitudes[dg] += cplx(nd(rng), nd(rng));
  }
  const double n = s.norm();
  for (auto& kv : s.amplitudes) kv.second /= n;
  return s;
}

}  // namespace

TEST(Sim, VacuumIsStationary) {
  auto d = load_descriptor(data_path("meyer.json"));
  auto s = run(vacuum(d.qlga(), 1, {0}, {2}), d.qlga(), 5);
  auto ex = excitations(s);
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_NEAR(std::abs(amplitude(ex, {}) - 1.0), 0.0, 1e-14);
}

TEST(Sim, ZeroStepsEchoes) {
  auto d = load_descriptor(data_path("meyer.json"));
  auto s = basis_state(d.qlga(), 1, {{{0}, 1}});
  EXPECT_EQ(excitation_distance(excitations(run(s, d.qlga(), 0)), excitations(s)), 0.0);
}

TEST(Sim, MeyerOneStepAmplitudesFollowCollision) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  for (int trial = 0; trial < 10; ++trial) {
    const double th = ang(rng), al = ang(rng), be = ang(rng);
    const Mat F = meyer_collision(th, al, be);
    auto d = meyer(th, al, be);
    // Right mover (value 2, component V_{-1}) lands on cell 1.
    auto ex = excitations(step(basis_state(d.qlga(), 1, {{{0}, 2}}), d.qlga()));
    EXPECT_NEAR(std::abs(amplitude(ex, {{{1}, 1}}) - F(1, 2)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amplitude(ex, {{{1}, 2}}) - F(2, 2)), 0.0, 1e-12);
    EXPECT_EQ(ex.size(), 2u);
    // Left mover (value 1, component V_{+1}) lands on cell -1.
    ex = excitations(step(basis_state(d.qlga(), 1, {{{0}, 1}}), d.qlga()));
    EXPECT_NEAR(std::abs(amplitude(ex, {{{-1}, 1}}) - F(1, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amplitude(ex, {{{-1}, 2}}) - F(2, 1)), 0.0, 1e-12);
    // Both movers separate and collide independently.
    ex = excitations(step(basis_state(d.qlga(), 1, {{{0}, 3}}), d.qlga()));
    for (int a : {1, 2})
      for (int b : {1, 2})
        EXPECT_NEAR(std::abs(amplitude(ex, {{{-1}, a}, {{1}, b}}) - F(a, 1) * F(b, 2)), 0.0, 1e-12);
  }
}

TEST(Sim, BallisticWhenTransmitting) {
  // theta = pi/2 gives sin = 1: particles keep their direction.
  auto d = meyer(M_PI / 2, 0, 0);
  auto s = run(basis_state(d.qlga(), 1, {{{0}, 1}}), d.qlga(), 7);
  auto ex = excitations(s);
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_EQ(ex.begin()->first, (Key{{{-7}, 1}}));
}

TEST(Sim, NormConservedOverFiftySteps) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  auto d = meyer(ang(rng), ang(rng), ang(rng));
  // One particle in superposition; Meyer conserves particle number.
  ConfigState s0 = vacuum(d.qlga(), 1, {0}, {3});
  s0.amplitudes.clear();
  std::normal_distribution<double> nd;
  for (int c = 0; c < 3; ++c)
    for (int v : {1, 2}) {
      Digits dg(6, 0);
      dg[2 * c] = v / 2;
      dg[2 * c + 1] = v % 2;
      s0.amplitudes[dg] = cplx(nd(rng), nd(rng));
    }
  const double n0 = s0.norm();
  for (auto& kv : s0.amplitudes) kv.second /= n0;
  std::vector<double> norms;
  auto s = run(s0, d.qlga(), 50, &norms);
  ASSERT_EQ(norms.size(), 50u);
  for (double n : norms) EXPECT_NEAR(n, 1.0, 1e-9);
  EXPECT_NEAR(s.norm(), 1.0, 1e-9);
}

TEST(Sim, NormConservedForRandomCollisions) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = parse_descriptor(random_qlga(rng, 4).doc);
    std::vector<double> norms;
    run(random_state(d.qlga(), 2, 3, rng), d.qlga(), 4, &norms);
    for (double n : norms) EXPECT_NEAR(n, 1.0, 1e-9) << "trial " << trial;
  }
}

TEST(Sim, TranslationCovariance) {
  std::mt19937_64 rng(54);
  auto d = meyer(0.7, 0.2, 1.1);
  auto s = random_state(d.qlga(), 3, 5, rng);
  for (int z : {-3, 1, 8}) {
    auto a = run(translated(s, {z}), d.qlga(), 6);
    auto b = translated(run(s, d.qlga(), 6), {z});
    EXPECT_EQ(excitation_distance(excitations(a), excitations(b)), 0.0) << z;
  }
}

TEST(Sim, QuiescentPaddingIsInvisible) {
  std::mt19937_64 rng(55);
  auto d = parse_descriptor(random_qlga(rng, 4).doc);
  auto s = random_state(d.qlga(), 2, 3, rng);
  auto a = run(s, d.qlga(), 3);
  auto b = run(padded(s, 4), d.qlga(), 3);
  EXPECT_LT(excitation_distance(excitations(a), excitations(b)), 1e-12);
}

TEST(Sim, Observables) {
  auto d = meyer(0.4, 0, 0);
  auto s = step(basis_state(d.qlga(), 1, {{{0}, 1}}), d.qlga());
  EXPECT_NEAR(std::abs(observe(s, LocalOperator::on_cell({-1}, projector(4, 1))) - std::pow(std::sin(0.4), 2)), 0.0,
              1e-12);
  EXPECT_NEAR(observe(s, LocalOperator::on_cell({-1}, Mat::Identity(4, 4))).real(), 1.0, 1e-12);
  // Far outside the window the cell is quiescent.
  EXPECT_NEAR(observe(s, LocalOperator::on_cell({40}, projector(4, 0))).real(), 1.0, 1e-12);
  double occupied = 0;
  for (int x = -2; x <= 2; ++x)
    occupied += 1.0 - observe(s, LocalOperator::on_cell({x}, projector(4, 0))).real();
  EXPECT_NEAR(occupied, 1.0, 1e-12);
}

TEST(SimJson, RoundTripDenseAndSparse) {
  std::mt19937_64 rng(56);
  auto d = meyer(0.3, 0.5, 0.9);
  auto s = run(random_state(d.qlga(), 2, 4, rng), d.qlga(), 2);
  auto dense = state_to_json(s);
  EXPECT_TRUE(dense.contains("amplitudes"));
  auto sparse = state_to_json(s, 1);
  EXPECT_TRUE(sparse.contains("terms"));
  for (const auto& j : {dense, sparse})
    EXPECT_LT(excitation_distance(excitations(state_from_json(j, d.qlga(), 1)), excitations(s)), 1e-15);
}

TEST(SimJson, ExampleStateAndErrors) {
  auto d = load_descriptor(data_path("meyer.json"));
  std::ifstream in(data_path("meyer_particle.state.json"));
  auto j = nlohmann::json::parse(in);
  auto s = state_from_json(j, d.qlga(), 1);
  EXPECT_EQ(excitations(s).begin()->first, (Key{{{0}, 1}}));

  auto bad = j;
  bad["amplitudes"].erase(0);
  EXPECT_THROW(state_from_json(bad, d.qlga(), 1), ParseError);
  bad = j;
  bad["extent"] = {0};
  EXPECT_THROW(state_from_json(bad, d.qlga(), 1), ParseError);
  bad = j;
  bad.erase("origin");
  try {
    state_from_json(bad, d.qlga(), 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "/origin");
  }
}
