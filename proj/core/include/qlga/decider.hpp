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

#include <cstdint>
#include <vector>

#include "qlga/descriptor.hpp"
#include "qlga/factorize.hpp"
#include "qlga/heisenberg.hpp"

namespace qlga {

struct DecideOptions {
  Backend backend = Backend::Auto;
  Tolerances tol;
  uint64_t seed = 42;
  std::vector<int> window;     // verification ring; empty means default
  long dense_cap = 1024;       // largest ring dimension compared densely
  bool verify = true;          // round trip at L and L+1
};

struct QuiescentFix {
  Mat u;                   // unitary on W; identity when S|q0> is already simple
  Vec simple_tensor;       // v-hat in the component space
  std::vector<Vec> factors;  // v-hat = (x)_y factors[y]
  bool trivial = true;
  std::vector<double> schmidt_tails;  // second Schmidt coefficient per cut
};

struct RoundTrip {
  std::vector<int> window;
  bool sampled = false;
  double structure = 0;  // R vs S~^-1 F^ sigma S~
  double brick = 0;      // R vs T~ sigma S~, T = S^-1 F
  double hat = 0;        // S~ R S~^-1 vs F^ sigma
  double max() const;
};

struct ClassificationResult {
  bool qlga = false;
  DAlgebraReport report;
  // Filled only when qlga.
  TensorFactorization factorization;  // S after the quiescent fix and gauge
  QuiescentFix quiescent_fix;
  ComponentScheme scheme;             // quiescent components are all 0
  Mat collision;
  double collision_unitarity = 0;
  double collision_quiescent = 0;
  double extraction_consistency = 0;  // |F(L) - F(L+1)|
  RoundTrip roundtrip;
  RoundTrip roundtrip_next;           // at L+1
  double roundtrip_residual = 0;
};

ClassificationResult decide(const QcaDescriptor& d, const DecideOptions& opts = {});

// Sequential Schmidt decomposition of S|q0>; see QuiescentFix.
QuiescentFix fix_quiescent(const TensorFactorization& f, int q0_index, double tol = 1e-8);

// F from R: cell-0 basis states in a quiescent background, pushed through
// sigma^-1, S~^-1, R, S~. Throws NumericalError "not cell-wise" on leakage.
// `u` is the quiescent fix (identity if empty).
Mat extract_collision(const QcaDescriptor& d, const TensorFactorization& f,
                      const std::vector<int>& quiescent, const std::vector<int>& lengths,
                      const Mat& u = Mat(), double tol = 1e-8);

// Residuals of the three equivalent forms on a ring of the given lengths.
RoundTrip roundtrip_residual(const QcaDescriptor& d, const ClassificationResult& r,
                             const std::vector<int>& lengths, long dense_cap = 1024);

// The decomposition as a qlga-form descriptor (isomorphism = S).
QcaDescriptor to_qlga_descriptor(const QcaDescriptor& d, const ClassificationResult& r);

// A claimed decomposition read from a qlga-form descriptor, for comparison
// against another automaton with roundtrip_residual.
ClassificationResult from_qlga_descriptor(const QcaDescriptor& ref);

// Unitary g with g v = e_0 (v a unit vector), built by Householder completion.
Mat align_to_first(const Vec& v);

}  // namespace qlga
