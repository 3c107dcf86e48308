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

#include <map>
#include <string>
#include <vector>

#include "qlga/descriptor.hpp"
#include "qlga/opspace.hpp"

namespace qlga {

enum class Backend { Auto, Dense, Clifford };

Backend parse_backend(const std::string& s);
std::string to_string(Backend b);

struct DAlgebraReport {
  std::vector<Cell> offsets;      // y in N, slot order
  std::vector<long> dims;         // dim D_{-y,0}
  std::vector<bool> inactive;     // dim 1 (scalars only)
  long span_dimension = 0;
  long cell_algebra_dimension = 0;
  bool verdict = false;
  std::string backend;
  std::vector<int> window;
  std::map<std::string, double> residuals;
  // Dense bases on the cell-0 slot, when available.
  std::vector<OperatorSubspace> algebras;
};

// a is given on whole-cell slots. Throws CausalityError if the result leaves
// the neighborhood of a's cells (reflected neighborhood when backward).
LocalOperator conjugate_forward(const LocalOperator& a, const QcaDescriptor& d, bool check = true);
LocalOperator conjugate_backward(const LocalOperator& a, const QcaDescriptor& d, bool check = true);

// Orthonormal basis of R^dagger A_0 R on the union of the conjugate supports.
OperatorSubspace evolved_cell_algebra(const QcaDescriptor& d);

// D_{-y,0} for y in N (slot order), dense backend, verified to be commuting
// self-adjoint unital subalgebras of A_0.
DAlgebraReport dense_d_algebras(const QcaDescriptor& d, const Tolerances& tol = {});
std::vector<OperatorSubspace> d_algebras(const QcaDescriptor& d, const Tolerances& tol = {});

DAlgebraReport criterion_report(const QcaDescriptor& d, Backend backend = Backend::Auto,
                                const Tolerances& tol = {});

// Independent oracle: D dimensions from the dense ring unitary at `lengths`.
std::vector<long> ring_d_dimensions(const QcaDescriptor& d, const std::vector<int>& lengths,
                                    const Tolerances& tol = {});

// Largest distance of a matrix unit of A_0 from span(prod_k R^dagger A_{-k} R).
double containment_residual(const QcaDescriptor& d, const Tolerances& tol = {});

}  // namespace qlga
