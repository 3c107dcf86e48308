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

#include "qlga/heisenberg.hpp"
#include "support/oracles.hpp"
#include "support/random_qca.hpp"

using namespace qlga;
using namespace qlga::testing;

namespace {

LocalOperator matrix_unit(int d, int a, int b) {
  Mat e = Mat::Zero(d, d);
  e(a, b) = 1;
  return LocalOperator::on_cell({0}, e);
}

double op_distance(const LocalOperator& a, const LocalOperator& b) {
  std::vector<Slot> s;
  std::vector<int> dims;
  union_support(a, b, s, dims);
  return (extend(a, s, dims).matrix - extend(b, s, dims).matrix).norm();
}

}  // namespace

TEST(Heisenberg, MeyerDAlgebras) {
  auto r = dense_d_algebras(load_descriptor(data_path("meyer.json")));
  EXPECT_EQ(r.offsets, (std::vector<Cell>{{-1}, {1}}));
  EXPECT_EQ(r.dims, (std::vector<long>{4, 4}));
  EXPECT_EQ(r.span_dimension, 16);
  EXPECT_EQ(r.cell_algebra_dimension, 16);
  EXPECT_TRUE(r.verdict);
  for (const auto& [k, v] : r.residuals) EXPECT_LT(v, 1e-9) << k;
}

TEST(Heisenberg, ToffoliDAlgebras) {
  auto r = criterion_report(load_descriptor(data_path("toffoli.json")), Backend::Dense);
  EXPECT_EQ(r.dims, (std::vector<long>{1, 4, 1}));
  EXPECT_EQ(r.span_dimension, 4);
  EXPECT_EQ(r.cell_algebra_dimension, 16);
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.inactive, (std::vector<bool>{true, false, true}));
}

TEST(Heisenberg, ConjugationSupportsStayInNeighborhoods) {
  auto d = load_descriptor(data_path("meyer.json"));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto e = matrix_unit(4, a, b);
      auto f = conjugate_forward(e, d);
      for (const auto& c : support_of(f, 1e-12)) EXPECT_TRUE(d.neighborhood.contains(c));
      auto g = conjugate_backward(e, d);
      for (const auto& c : support_of(g, 1e-12)) EXPECT_TRUE(d.neighborhood.reflected().contains(c));
      EXPECT_LT(op_distance(conjugate_backward(f, d, false), e), 1e-12);
    }
}

TEST(Heisenberg, UndeclaredSpreadRaisesCausalityError) {
  auto d = load_descriptor(data_path("toffoli_n01.json"));
  bool thrown = false;
  for (int a = 0; a < 4 && !thrown; ++a)
    for (int b = 0; b < 4 && !thrown; ++b) {
      try {
        conjugate_forward(matrix_unit(4, a, b), d);
        conjugate_backward(matrix_unit(4, a, b), d);
      } catch (const CausalityError& e) {
        thrown = true;
        EXPECT_FALSE(e.offending().empty());
      }
    }
  EXPECT_TRUE(thrown);
}

TEST(Heisenberg, EvolvedAlgebraIsFullMatrixAlgebra) {
  EXPECT_EQ(evolved_cell_algebra(load_descriptor(data_path("meyer.json"))).dim(), 16);
  EXPECT_EQ(evolved_cell_algebra(load_descriptor(data_path("toffoli.json"))).dim(), 16);
}

TEST(Heisenberg, RingOracleAgreesWithLocalComputation) {
  for (const char* f : {"meyer.json", "toffoli.json", "toffoli_shifted.json", "identity.json"}) {
    SCOPED_TRACE(f);
    auto d = load_descriptor(data_path(f));
    auto local = dense_d_algebras(d).dims;
    EXPECT_EQ(ring_d_dimensions(d, {4}), local);
    EXPECT_EQ(ring_d_dimensions(d, {5}), local);
  }
}

TEST(Heisenberg, ContainmentHoldsForQlgas) {
  EXPECT_LT(containment_residual(load_descriptor(data_path("meyer.json"))), 1e-9);
  EXPECT_LT(containment_residual(load_descriptor(data_path("toffoli_shifted.json"))), 1e-9);
  // Three neighbours of a 4-dim cell exceed the dense ambient limit.
  EXPECT_THROW(containment_residual(load_descriptor(data_path("toffoli.json"))), StructuralError);
}

TEST(Heisenberg, RandomCircuitsMatchRingOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = parse_descriptor(random_circuit(rng, 2));
    auto r = dense_d_algebras(d);
    EXPECT_EQ(ring_d_dimensions(d, {4}), r.dims) << "trial " << trial;
    long prod = 1;
    for (long x : r.dims) prod *= x;
    EXPECT_LE(r.span_dimension, prod) << "trial " << trial;
  }
}

TEST(Heisenberg, BackendNames) {
  EXPECT_EQ(parse_backend("dense"), Backend::Dense);
  EXPECT_EQ(to_string(parse_backend("clifford")), "clifford");
  EXPECT_ANY_THROW(parse_backend("quantum"));
}
