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

#include "qlga/factorize.hpp"
#include "qlga/tensor.hpp"
#include "support/random_qca.hpp"

using namespace qlga;
using qlga::testing::haar_unitary;

namespace {

const std::vector<Slot> kAmbient{Slot{{0}, 0}};

// U (I (x) End(V_p) (x) I) U^dagger for every factor p.
std::vector<OperatorSubspace> factor_algebras(const std::vector<int>& dims, const Mat& u) {
  const int w = static_cast<int>(tensor::total(dims));
  std::vector<OperatorSubspace> out;
  for (size_t p = 0; p < dims.size(); ++p) {
    std::vector<Mat> gens;
    for (int a = 0; a < dims[p]; ++a)
      for (int b = 0; b < dims[p]; ++b) {
        Mat e = Mat::Zero(dims[p], dims[p]);
        e(a, b) = 1;
        gens.push_back(u * tensor::embed(e, dims, {static_cast<int>(p)}) * u.adjoint());
      }
    out.push_back(orthonormalize(gens, kAmbient, {w}));
  }
  return out;
}

std::vector<Cell> offsets_for(size_t k) {
  std::vector<Cell> out;
  for (size_t i = 0; i < k; ++i) out.push_back({static_cast<int>(i) - 1});
  return out;
}

}  // namespace

TEST(Isotypic, SplitsAFactorAlgebra) {
  std::mt19937_64 rng(41);
  auto algs = factor_algebras({2, 3}, haar_unitary(6, rng));
  auto s = single_isotypic_split(algs[0]);
  EXPECT_EQ(s.dim_y, 2);
  EXPECT_EQ(s.dim_u, 3);
  EXPECT_LT(s.algebra_residual, 1e-8);
  EXPECT_LT(s.commutant_residual, 1e-8);
  EXPECT_LT(s.unitarity_residual, 1e-8);
}

TEST(Isotypic, RejectsNontrivialCenter) {
  std::vector<Mat> diag;
  for (int i = 0; i < 3; ++i) {
    Mat e = Mat::Zero(3, 3);
    e(i, i) = 1;
    diag.push_back(e);
  }
  EXPECT_THROW(single_isotypic_split(orthonormalize(diag, kAmbient, {3})), StructuralError);
}

TEST(TensorFactorize, RecoversRandomProducts) {
  std::mt19937_64 rng(42);
  const std::vector<std::vector<int>> shapes{{2, 2}, {2, 3}, {3, 2}, {2, 2, 2}, {1, 4}, {4}, {2, 1, 3}};
  for (int trial = 0; trial < 35; ++trial) {
    const auto& dims = shapes[trial % shapes.size()];
    const int w = static_cast<int>(tensor::total(dims));
    auto algs = factor_algebras(dims, haar_unitary(w, rng));
    auto f = tensor_factorize(offsets_for(dims.size()), algs, w, 1e-8, trial);
    EXPECT_EQ(f.factor_dims, dims) << "trial " << trial;
    EXPECT_LT(f.unitarity_residual, 1e-8);
    auto check = verify_factorization(f, algs);
    EXPECT_LT(check.max_residual(), 1e-8) << "trial " << trial;
  }
}

TEST(TensorFactorize, RejectsNonCommutingAlgebras) {
  std::mt19937_64 rng(43);
  auto a = factor_algebras({2, 2}, Mat::Identity(4, 4));
  auto b = factor_algebras({2, 2}, haar_unitary(4, rng));
  EXPECT_THROW(tensor_factorize(offsets_for(2), {a[0], b[0]}, 4), StructuralError);
}

TEST(TensorFactorize, RejectsIncompleteSpan) {
  auto a = factor_algebras({2, 2}, Mat::Identity(4, 4));
  EXPECT_THROW(tensor_factorize(offsets_for(1), {a[0]}, 4), StructuralError);
}

TEST(TensorFactorize, ConditionalExpectation) {
  std::mt19937_64 rng(44);
  Mat a = haar_unitary(2, rng), b = haar_unitary(3, rng);
  Mat ab = tensor::embed(a, {2, 3}, {0}) * tensor::embed(b, {2, 3}, {1});
  Mat e = factor_expectation(ab, {2, 3}, 0);
  EXPECT_LT((e - tensor::embed(a * (b.trace() / 3.0), {2, 3}, {0})).norm(), 1e-12);
}
