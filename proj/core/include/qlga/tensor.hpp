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

#pragma once

// Index arithmetic on row-major tensor products: the first factor is the most
// significant digit, matching Kronecker order.

#include <vector>

#include "qlga/types.hpp"

namespace qlga::tensor {

long total(const std::vector<int>& dims);

// Offsets of every multi-index over `positions` (row-major in the given order)
// and over the complementary positions (ascending order).
struct Split {
  std::vector<long> sub;
  std::vector<long> rest;
};
Split split(const std::vector<int>& dims, const std::vector<int>& positions);

std::vector<int> digits(long index, const std::vector<int>& dims);
long index(const std::vector<int>& digits, const std::vector<int>& dims);

// New factor i is old factor perm[i].
Mat permute(const Mat& m, const std::vector<int>& dims, const std::vector<int>& perm);
Vec permute(const Vec& v, const std::vector<int>& dims, const std::vector<int>& perm);

// m acts on the factors at `positions` (in that order); identity elsewhere.
Mat embed(const Mat& m, const std::vector<int>& dims, const std::vector<int>& positions);

// Trace out every factor not listed in `keep`; kept factors stay in the
// order given by `keep`.
Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep);

// A <- G_positions * A and A <- A * G_positions.
void apply_left(Mat& a, const std::vector<int>& dims, const std::vector<int>& positions,
                const Mat& g);
void apply_right(Mat& a, const std::vector<int>& dims, const std::vector<int>& positions,
                 const Mat& g);
void apply(Vec& v, const std::vector<int>& dims, const std::vector<int>& positions, const Mat& g);

// || m - (tr_p m / d_p) (x) I_p ||_HS for the factor at position p.
double identity_residual(const Mat& m, const std::vector<int>& dims, int position);

double hs_norm(const Mat& m);

}  // namespace qlga::tensor
