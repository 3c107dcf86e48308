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

#include <set>
#include <string>
#include <vector>

#include "qlga/opspace.hpp"
#include "qlga/types.hpp"

namespace qlga {

struct CellStructure {
  int dim = 1;
  int quiescent_index = 0;
  std::vector<std::string> labels;

  void validate() const;
};

struct Neighborhood {
  int n = 1;
  std::vector<Cell> offsets;  // sorted, distinct

  static Neighborhood make(int n, std::vector<Cell> offsets);
  Neighborhood reflected() const;
  bool contains(const Cell& z) const;
  int index_of(const Cell& z) const;  // -1 if absent
  // max |z_i| over offsets, per axis
  std::vector<int> radius() const;
  int max_radius() const;
  int size() const { return static_cast<int>(offsets.size()); }
};

struct RingWindow {
  int n = 1;
  std::vector<int> lengths;
  CellStructure cell;

  // Throws StructuralError unless L_i > 2 max|z_i| + 1 for every axis.
  void check(const Neighborhood& nb) const;
  long num_cells() const;
  Cell reduce(const Cell& c) const;
  long cell_index(const Cell& c) const;  // of a reduced cell
  std::vector<Cell> cells() const;       // lexicographic order
};

// Default verification ring length per axis: max(4, 2 max|z| + 2).
std::vector<int> default_ring_lengths(const Neighborhood& nb);

struct ComponentScheme {
  std::vector<Cell> offsets;  // slot order
  std::vector<int> dims;
  std::vector<int> quiescent;

  int cell_dim() const;
  int index_of(const Cell& z) const;
  long quiescent_cell_index() const;
  void validate(int cell_dim) const;
};

LocalOperator embed(const LocalOperator& op, const RingWindow& window);
LocalOperator translate(const LocalOperator& op, const Cell& z);

// Drops every slot on which `op` acts as the identity, within relative tol.
LocalOperator shrink(const LocalOperator& op, double tol);
std::set<Cell> support_of(const LocalOperator& op, double tol);

LocalOperator partial_trace(const LocalOperator& op, const std::vector<Slot>& keep);

// Regroup sub-cell slots into whole-cell slots (identity-padding missing
// parts) and back. `part_dims` lists the sub-factor dimensions of one cell.
LocalOperator merge_parts(const LocalOperator& op, const std::vector<int>& part_dims);
LocalOperator split_parts(const LocalOperator& op, const std::vector<int>& part_dims);

// p with op ~ p (x) I on the given cell (orthogonal projection onto the cell
// algebra), as a cell_dim x cell_dim matrix. `op` may use sub-cell slots.
Mat project_onto_cell(const LocalOperator& op, const Cell& cell, const std::vector<int>& part_dims);

// Slots of the ring in canonical order: cells lexicographic, then parts.
std::vector<Slot> ring_slots(const RingWindow& window, const std::vector<int>& part_dims);

// perm[dest] = src over ring component slots: (x, z) <- (x + z, z).
std::vector<long> sigma_permutation(const RingWindow& window, const ComponentScheme& scheme);

}  // namespace qlga
