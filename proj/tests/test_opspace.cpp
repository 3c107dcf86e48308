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

#include "qlga/opspace.hpp"
#include "qlga/tensor.hpp"
#include "support/random_qca.hpp"

using namespace qlga;
using namespace qlga::testing;

namespace {

Mat pauli(char c) {
  Mat m = Mat::Zero(2, 2);
  switch (c) {
    case 'X': m(0, 1) = m(1, 0) = 1; break;
    case 'Y': m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
    default: m = Mat::Identity(2, 2);
  }
  return m;
}

Slot slot(int x) { return Slot{{x}, 0}; }

}  // namespace

TEST(LocalOperator, MakeSortsSlotsAndPermutes) {
  Mat xz = tensor::embed(pauli('X'), {2, 2}, {0}) * tensor::embed(pauli('Z'), {2, 2}, {1});
  auto op = LocalOperator::make({slot(3), slot(1)}, {2, 2}, xz);
  ASSERT_EQ(op.slots.front(), slot(1));
  Mat zx = tensor::embed(pauli('Z'), {2, 2}, {0}) * tensor::embed(pauli('X'), {2, 2}, {1});
  EXPECT_LT((op.matrix - zx).norm(), 1e-12);
  EXPECT_THROW(LocalOperator::make({slot(0), slot(0)}, {2, 2}, Mat::Identity(4, 4)), StructuralError);
  EXPECT_THROW(LocalOperator::make({slot(0)}, {2}, Mat::Identity(3, 3)), StructuralError);
}

TEST(LocalOperator, MultiplyAndInnerPadIdentity) {
  auto x0 = LocalOperator::on_cell({0}, pauli('X'));
  auto z1 = LocalOperator::on_cell({1}, pauli('Z'));
  auto p = multiply(x0, z1);
  EXPECT_EQ(p.slots.size(), 2u);
  EXPECT_NEAR(std::abs(hs_inner(p, p)), 4.0, 1e-12);
  EXPECT_NEAR(std::abs(hs_inner(x0, z1)), 0.0, 1e-12);
  auto id = LocalOperator::identity({slot(0)}, {2});
  EXPECT_NEAR(hs_inner(id, LocalOperator::identity({slot(5)}, {2})).real(), 4.0, 1e-12);
  auto c = conjugate(z1, LocalOperator::on_cell({1}, pauli('X')), true);
  EXPECT_LT((c.matrix + pauli('Z')).norm(), 1e-12);
}

TEST(OperatorSubspace, OrthonormalizeDropsDependents) {
  auto amb = std::vector<Slot>{slot(0)};
  auto s = orthonormalize({pauli('X'), pauli('Z'), pauli('X') + 2.0 * pauli('Z')}, amb, {2});
  EXPECT_EQ(s.dim(), 2);
  EXPECT_LT(s.residual(pauli('X') - pauli('Z')), 1e-10);
  EXPECT_GT(s.residual(pauli('Y')), 0.5);
}

TEST(OperatorSubspace, ClosureAndCommutantOfQubitFactor) {
  std::vector<LocalOperator> gens{LocalOperator::make({slot(0), slot(1)}, {2, 2}, tensor::embed(pauli('X'), {2, 2}, {0})),
                                  LocalOperator::make({slot(0), slot(1)}, {2, 2}, tensor::embed(pauli('Z'), {2, 2}, {0}))};
  auto a = algebra_closure(gens, true);
  EXPECT_EQ(a.dim(), 4);
  auto c = commutant(a);
  EXPECT_EQ(c.dim(), 4);
  EXPECT_LT(commutation_residual(a, c), 1e-10);
  auto full = span_product({a, c});
  EXPECT_EQ(full.dim(), 16);
  EXPECT_EQ(intersect(a, c).dim(), 1);
}

TEST(OperatorSubspace, DiagnosticsOnGenuineAlgebra) {
  std::mt19937_64 rng(9);
  auto b = random_block_algebra(rng);
  auto s = orthonormalize(b.basis, {slot(0)}, {b.ambient});
  EXPECT_LT(adjoint_closure_residual(s), 1e-9);
  EXPECT_LT(product_closure_residual(s), 1e-9);
  EXPECT_LT(identity_residual(s), 1e-9);
}

TEST(OperatorSubspace, NonAlgebraFailsClosure) {
  auto s = orthonormalize({Mat::Identity(2, 2), pauli('X') + cplx(0, 1) * pauli('Z')}, {slot(0)}, {2});
  EXPECT_GT(adjoint_closure_residual(s), 1e-3);
}

TEST(OperatorSubspace, IntersectionOfOverlappingSpans) {
  auto amb = std::vector<Slot>{slot(0)};
  auto a = orthonormalize({pauli('X'), pauli('Z')}, amb, {2});
  auto b = orthonormalize({pauli('Z'), pauli('Y')}, amb, {2});
  auto i = intersect(a, b);
  ASSERT_EQ(i.dim(), 1);
  EXPECT_LT(i.residual(pauli('Z')), 1e-10);
  EXPECT_LT(projector_distance(a, a), 1e-12);
  EXPECT_NEAR(projector_distance(a, b), 1.0, 1e-9);
}

// Double commutant equality on ambients up to dimension 8.
TEST(OperatorSubspace, DoubleCommutantProperty) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto b = random_block_algebra(rng);
    auto a = orthonormalize(b.basis, {slot(0)}, {b.ambient});
    ASSERT_EQ(a.dim(), b.dim) << "trial " << trial;
    auto c = commutant(a);
    ASSERT_EQ(c.dim(), b.commutant_dim) << "trial " << trial;
    auto cc = commutant(c);
    ASSERT_EQ(cc.dim(), a.dim()) << "trial " << trial;
    EXPECT_LT(projector_distance(a, cc), 1e-8) << "trial " << trial;
  }
}
