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

#include "qlga/tensor.hpp"
#include "support/random_qca.hpp"

using namespace qlga;

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

Mat random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  return m;
}

}  // namespace

TEST(Tensor, DigitsRoundTrip) {
  std::vector<int> dims{2, 3, 4};
  EXPECT_EQ(tensor::total(dims), 24);
  for (long i = 0; i < 24; ++i) EXPECT_EQ(tensor::index(tensor::digits(i, dims), dims), i);
  EXPECT_EQ(tensor::digits(5, dims), (std::vector<int>{0, 1, 1}));
}

TEST(Tensor, EmbedMatchesKronecker) {
  std::mt19937_64 rng(1);
  Mat a = random_matrix(2, rng), b = random_matrix(3, rng);
  std::vector<int> dims{2, 3};
  EXPECT_LT((tensor::embed(a, dims, {0}) - kron(a, Mat::Identity(3, 3))).norm(), 1e-12);
  EXPECT_LT((tensor::embed(b, dims, {1}) - kron(Mat::Identity(2, 2), b)).norm(), 1e-12);
  // Positions listed out of order act on the permuted pair.
  Mat ab = kron(a, b);
  Mat ba = kron(b, a);
  EXPECT_LT((tensor::embed(ba, dims, {1, 0}) - ab).norm(), 1e-12);
}

TEST(Tensor, PermuteSwapsFactors) {
  std::mt19937_64 rng(2);
  Mat a = random_matrix(2, rng), b = random_matrix(3, rng);
  EXPECT_LT((tensor::permute(kron(a, b), {2, 3}, {1, 0}) - kron(b, a)).norm(), 1e-12);
  Vec u = Vec::Random(2), v = Vec::Random(3);
  Vec uv = kron(u, v), vu = kron(v, u);
  EXPECT_LT((tensor::permute(uv, {2, 3}, {1, 0}) - vu).norm(), 1e-12);
}

TEST(Tensor, PartialTraceOfProduct) {
  std::mt19937_64 rng(3);
  Mat a = random_matrix(2, rng), b = random_matrix(3, rng), c = random_matrix(2, rng);
  Mat abc = kron(kron(a, b), c);
  std::vector<int> dims{2, 3, 2};
  EXPECT_LT((tensor::partial_trace(abc, dims, {0}) - b.trace() * c.trace() * a).norm(), 1e-10);
  EXPECT_LT((tensor::partial_trace(abc, dims, {2, 0}) - b.trace() * kron(c, a)).norm(), 1e-10);
}

TEST(Tensor, ApplyMatchesEmbed) {
  std::mt19937_64 rng(4);
  std::vector<int> dims{2, 3, 2};
  Mat g = random_matrix(4, rng), a = random_matrix(12, rng);
  Mat full = tensor::embed(g, dims, {2, 0});
  Mat l = a, r = a;
  tensor::apply_left(l, dims, {2, 0}, g);
  tensor::apply_right(r, dims, {2, 0}, g);
  EXPECT_LT((l - full * a).norm(), 1e-10);
  EXPECT_LT((r - a * full).norm(), 1e-10);
  Vec v = a.col(0), w = v;
  tensor::apply(w, dims, {2, 0}, g);
  EXPECT_LT((w - full * v).norm(), 1e-10);
}

TEST(Tensor, IdentityResidual) {
  std::mt19937_64 rng(5);
  Mat a = random_matrix(3, rng);
  EXPECT_LT(tensor::identity_residual(kron(a, Mat::Identity(2, 2)), {3, 2}, 1), 1e-12);
  EXPECT_GT(tensor::identity_residual(kron(a, Mat::Identity(2, 2)), {3, 2}, 0), 1e-3);
}
