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

// Every descriptor compiles to a DenseProgram: an ordered list of
// translation-invariant stages acting on sub-cell slots. Local conjugation,
// ring unitaries and sparse ring evolution all run off this one form.

#include <map>
#include <vector>

#include "qlga/lattice.hpp"
#include "qlga/opspace.hpp"

namespace qlga {

struct Stage {
  enum class Kind { Gates, Sigma };
  Kind kind = Kind::Gates;
  // Gate template at site 0 on sub-cell slots, copied to every site of the
  // stride lattice. Copies commute or are disjoint.
  LocalOperator gate;
  std::vector<int> stride;
  // Local indices of the all-quiescent input/output of the template.
  long quiescent_in = 0;
  long quiescent_out = 0;
  bool single_cell = false;
};

struct DenseProgram {
  int n = 1;
  std::vector<int> part_dims;
  std::vector<int> cell_quiescent_digits;  // quiescent cell state per part
  ComponentScheme scheme;                   // used by Sigma stages
  std::vector<Stage> stages;                // application order

  int cell_dim() const;
  // Number of leading stages that act cell-wise (single cell, stride 1).
  size_t leading_cellwise() const;
};

// Heisenberg conjugation through stages [first, stages.size()).
// forward: R^dagger a R; backward: R a R^dagger. `a` uses sub-cell slots.
LocalOperator conjugate_stages(const LocalOperator& a, const DenseProgram& p, bool forward,
                               size_t first = 0, double shrink_tol = 1e-11);

// Cell-wise stage as a full-cell matrix.
Mat cellwise_matrix(const Stage& s, const DenseProgram& p);

// Dense ring unitary of the program (before any phase normalization).
Mat ring_unitary(const DenseProgram& p, const RingWindow& window);

// Sparse state on a ring: digits over ring sub-cell slots.
using Digits = std::vector<int>;
using SparseState = std::map<Digits, cplx>;

class RingEngine {
 public:
  RingEngine(const DenseProgram& p, const RingWindow& window);

  const std::vector<int>& slot_dims() const { return dims_; }
  Digits quiescent() const;
  // Apply R (or R^dagger when inverse).
  SparseState apply(const SparseState& s, bool inverse = false) const;
  // Apply one stage, optionally inverted.
  SparseState apply_stage(const SparseState& s, const Stage& st, bool inverse) const;
  // Apply a single-cell matrix to every cell.
  SparseState apply_cellwise(const SparseState& s, const Mat& m, long q_in, long q_out) const;
  SparseState apply_sigma(const SparseState& s, bool inverse) const;

  long cell_count() const { return cells_; }
  int parts() const { return static_cast<int>(part_dims_.size()); }

 private:
  const DenseProgram& p_;
  RingWindow w_;
  std::vector<int> part_dims_;
  std::vector<int> dims_;
  long cells_ = 0;
  std::vector<std::vector<int>> site_positions(const Stage& st) const;
};

double sparse_norm(const SparseState& s);
cplx sparse_inner(const SparseState& a, const SparseState& b);

}  // namespace qlga
