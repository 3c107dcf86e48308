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

#include <vector>

#include "qlga/types.hpp"

namespace qlga {

// A dense matrix on an explicit list of slots, identity elsewhere.
struct LocalOperator {
  std::vector<Slot> slots;  // sorted, unique
  std::vector<int> dims;
  Mat matrix;

  // Sorts the slots, permuting the matrix to match. Throws StructuralError on
  // duplicate slots or a size mismatch.
  static LocalOperator make(std::vector<Slot> slots, std::vector<int> dims, Mat matrix);
  static LocalOperator identity(std::vector<Slot> slots, std::vector<int> dims);
  // Single whole-cell slot.
  static LocalOperator on_cell(const Cell& c, const Mat& m);

  long dim() const { return matrix.rows(); }
  int position(const Slot& s) const;  // -1 if absent
  LocalOperator adjoint() const;
};

// Re-express `op` on a superset of its slots.
LocalOperator extend(const LocalOperator& op, const std::vector<Slot>& slots,
                     const std::vector<int>& dims);

// Slots and dims of the sorted union. Throws on a dimension clash.
void union_support(const LocalOperator& a, const LocalOperator& b, std::vector<Slot>& slots,
                   std::vector<int>& dims);

LocalOperator multiply(const LocalOperator& a, const LocalOperator& b);
LocalOperator add(const LocalOperator& a, const LocalOperator& b, cplx beta = 1.0);

// G^dagger a G (forward = true) or G a G^dagger, on the union support.
LocalOperator conjugate(const LocalOperator& a, const LocalOperator& g, bool forward);

// tr((a (x) I)^dagger (b (x) I)) over the union support. Identity slots are
// traced analytically.
cplx hs_inner(const LocalOperator& a, const LocalOperator& b);

// HS-orthonormal basis of a subspace of operators on `ambient`.
struct OperatorSubspace {
  std::vector<Slot> ambient;
  std::vector<int> dims;
  std::vector<Mat> basis;
  double tol = 1e-9;

  int dim() const { return static_cast<int>(basis.size()); }
  long ambient_dim() const;
  LocalOperator element(int i) const;
  // Orthogonal projection of m (on the ambient) onto the span.
  Mat project(const Mat& m) const;
  // Relative distance of m from the span.
  double residual(const Mat& m) const;
};

// Convenience ambient: one whole-cell slot at the origin of dimension d.
std::vector<Slot> single_slot_ambient();

OperatorSubspace orthonormalize(const std::vector<LocalOperator>& generators, double tol = 1e-9);
OperatorSubspace orthonormalize(const std::vector<Mat>& generators, const std::vector<Slot>& ambient,
                                const std::vector<int>& dims, double tol = 1e-9);

// Gram-only intersection of two spans.
OperatorSubspace intersect(const OperatorSubspace& s1, const OperatorSubspace& s2);

OperatorSubspace algebra_closure(const std::vector<LocalOperator>& generators,
                                 bool include_identity, double tol = 1e-9);

OperatorSubspace commutant(const OperatorSubspace& s);

OperatorSubspace span_product(const std::vector<OperatorSubspace>& algebras);

// Operator-norm distance between the orthogonal projectors onto both spans
// (same ambient required).
double projector_distance(const OperatorSubspace& a, const OperatorSubspace& b);

// Diagnostics used by callers that need a verified *-algebra.
double adjoint_closure_residual(const OperatorSubspace& s);
double product_closure_residual(const OperatorSubspace& s);
double identity_residual(const OperatorSubspace& s);
double commutation_residual(const OperatorSubspace& a, const OperatorSubspace& b);

}  // namespace qlga
