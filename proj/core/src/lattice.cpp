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

#include "qlga/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "qlga/tensor.hpp"

namespace qlga {

void CellStructure::validate() const {
  if (dim < 1) throw StructuralError("cell dimension must be positive");
  if (quiescent_index < 0 || quiescent_index >= dim)
    throw StructuralError("quiescent index out of range");
  if (!labels.empty() && static_cast<int>(labels.size()) != dim)
    throw StructuralError("label count differs from cell dimension");
}

Neighborhood Neighborhood::make(int n, std::vector<Cell> offsets) {
  if (n < 1) throw StructuralError("lattice dimension must be positive");
  for (const auto& z : offsets)
    if (static_cast<int>(z.size()) != n)
      throw StructuralError("offset " + to_string(z) + " has wrong dimension");
  std::sort(offsets.begin(), offsets.end());
  if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
    throw StructuralError("neighborhood offsets must be distinct");
  if (offsets.empty()) throw StructuralError("neighborhood must be non-empty");
  return Neighborhood{n, std::move(offsets)};
}

Neighborhood Neighborhood::reflected() const {
  std::vector<Cell> v;
  for (const auto& z : offsets) v.push_back(-z);
  return make(n, v);
}

bool Neighborhood::contains(const Cell& z) const { return index_of(z) >= 0; }

int Neighborhood::index_of(const Cell& z) const {
  auto it = std::lower_bound(offsets.begin(), offsets.end(), z);
  if (it == offsets.end() || *it != z) return -1;
  return static_cast<int>(it - offsets.begin());
}

std::vector<int> Neighborhood::radius() const {
  std::vector<int> r(n, 0);
  for (const auto& z : offsets)
    for (int i = 0; i < n; ++i) r[i] = std::max(r[i], std::abs(z[i]));
  return r;
}

int Neighborhood::max_radius() const {
  auto r = radius();
  return *std::max_element(r.begin(), r.end());
}

void RingWindow::check(const Neighborhood& nb) const {
  if (static_cast<int>(lengths.size()) != n || nb.n != n)
    throw StructuralError("ring window dimension mismatch");
  auto r = nb.radius();
  for (int i = 0; i < n; ++i)
    if (lengths[i] <= 2 * r[i] + 1)
      throw StructuralError("ring length " + std::to_string(lengths[i]) + " on axis " +
                            std::to_string(i) + " must exceed " + std::to_string(2 * r[i] + 1));
}

long RingWindow::num_cells() const {
  long c = 1;
  for (int l : lengths) c *= l;
  return c;
}

Cell RingWindow::reduce(const Cell& c) const {
  if (static_cast<int>(c.size()) != n) throw StructuralError("cell dimension mismatch");
  Cell r(c.size());
  for (int i = 0; i < n; ++i) r[i] = ((c[i] % lengths[i]) + lengths[i]) % lengths[i];
  return r;
}

long RingWindow::cell_index(const Cell& c) const {
  long k = 0;
  for (int i = 0; i < n; ++i) k = k * lengths[i] + c[i];
  return k;
}

std::vector<Cell> RingWindow::cells() const {
  std::vector<Cell> out;
  long total = num_cells();
  out.reserve(total);
  for (long k = 0; k < total; ++k) out.push_back(tensor::digits(k, lengths));
  return out;
}

std::vector<int> default_ring_lengths(const Neighborhood& nb) {
  auto r = nb.radius();
  std::vector<int> l(nb.n);
  for (int i = 0; i < nb.n; ++i) l[i] = std::max(4, 2 * r[i] + 2);
  return l;
}

int ComponentScheme::cell_dim() const {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

int ComponentScheme::index_of(const Cell& z) const {
  for (size_t i = 0; i < offsets.size(); ++i)
    if (offsets[i] == z) return static_cast<int>(i);
  return -1;
}

long ComponentScheme::quiescent_cell_index() const { return tensor::index(quiescent, dims); }

void ComponentScheme::validate(int cdim) const {
  if (offsets.size() != dims.size() || dims.size() != quiescent.size())
    throw StructuralError("component scheme field lengths differ");
  if (!std::is_sorted(offsets.begin(), offsets.end()) ||
      std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
    throw StructuralError("component offsets must be distinct and in slot order");
  for (size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1) throw StructuralError("component dimension must be positive");
    if (quiescent[i] < 0 || quiescent[i] >= dims[i])
      throw StructuralError("component quiescent index out of range");
  }
  if (cell_dim() != cdim)
    throw StructuralError("product of component dimensions " + std::to_string(cell_dim()) +
                          " differs from cell dimension " + std::to_string(cdim));
}

LocalOperator embed(const LocalOperator& op, const RingWindow& window) {
  std::vector<Slot> s;
  for (const auto& sl : op.slots) s.push_back(Slot{window.reduce(sl.cell), sl.part});
  std::vector<Slot> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end())
    throw StructuralError("support collision after modular reduction at cell " +
                          to_string(dup->cell));
  return LocalOperator::make(s, op.dims, op.matrix);
}

LocalOperator translate(const LocalOperator& op, const Cell& z) {
  LocalOperator out = op;
  for (auto& sl : out.slots) sl.cell = sl.cell + z;
  return out;
}

LocalOperator shrink(const LocalOperator& op, double tol) {
  LocalOperator cur = op;
  double scale = op.matrix.norm();
  if (scale == 0) {
    LocalOperator z;
    z.matrix = Mat::Zero(1, 1);
    return z;
  }
  for (int p = static_cast<int>(cur.slots.size()) - 1; p >= 0; --p) {
    // Relative residual is invariant under the identity padding dropped so far.
    double rel = tensor::identity_residual(cur.matrix, cur.dims, p) / cur.matrix.norm();
    if (rel > tol) continue;
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(cur.slots.size()); ++i)
      if (i != p) keep.push_back(i);
    Mat red = tensor::partial_trace(cur.matrix, cur.dims, keep) / static_cast<double>(cur.dims[p]);
    cur.slots.erase(cur.slots.begin() + p);
    cur.dims.erase(cur.dims.begin() + p);
    cur.matrix = std::move(red);
  }
  return cur;
}

std::set<Cell> support_of(const LocalOperator& op, double tol) {
  std::set<Cell> out;
  for (const auto& s : shrink(op, tol).slots) out.insert(s.cell);
  return out;
}

LocalOperator partial_trace(const LocalOperator& op, const std::vector<Slot>& keep) {
  std::vector<Slot> k = keep;
  std::sort(k.begin(), k.end());
  std::vector<int> pos;
  LocalOperator out;
  for (const auto& s : k) {
    int p = op.position(s);
    if (p < 0) throw StructuralError("partial_trace: slot " + to_string(s) + " not in support");
    pos.push_back(p);
    out.slots.push_back(s);
    out.dims.push_back(op.dims[p]);
  }
  out.matrix = tensor::partial_trace(op.matrix, op.dims, pos);
  return out;
}

LocalOperator merge_parts(const LocalOperator& op, const std::vector<int>& part_dims) {
  std::vector<Cell> cells;
  for (const auto& s : op.slots)
    if (cells.empty() || cells.back() != s.cell) cells.push_back(s.cell);
  std::vector<Slot> full;
  std::vector<int> fd;
  for (const auto& c : cells)
    for (size_t p = 0; p < part_dims.size(); ++p) {
      full.push_back(Slot{c, static_cast<int>(p)});
      fd.push_back(part_dims[p]);
    }
  LocalOperator ext = extend(op, full, fd);
  LocalOperator out;
  int cd = static_cast<int>(tensor::total(part_dims));
  for (const auto& c : cells) {
    out.slots.push_back(Slot{c, 0});
    out.dims.push_back(cd);
  }
  out.matrix = std::move(ext.matrix);
  return out;
}

LocalOperator split_parts(const LocalOperator& op, const std::vector<int>& part_dims) {
  int cd = static_cast<int>(tensor::total(part_dims));
  LocalOperator out;
  for (size_t i = 0; i < op.slots.size(); ++i) {
    if (op.dims[i] != cd) throw StructuralError("split_parts: slot is not a whole cell");
    for (size_t p = 0; p < part_dims.size(); ++p) {
      out.slots.push_back(Slot{op.slots[i].cell, static_cast<int>(p)});
      out.dims.push_back(part_dims[p]);
    }
  }
  out.matrix = op.matrix;
  return out;
}

Mat project_onto_cell(const LocalOperator& op, const Cell& cell, const std::vector<int>& part_dims) {
  int cd = static_cast<int>(tensor::total(part_dims));
  std::vector<int> keep;
  long kept = 1;
  for (int i = 0; i < static_cast<int>(op.slots.size()); ++i)
    if (op.slots[i].cell == cell) {
      keep.push_back(i);
      kept *= op.dims[i];
    }
  double traced = static_cast<double>(op.dim()) / static_cast<double>(kept);
  if (keep.empty()) return op.matrix.trace() / static_cast<double>(op.dim()) * Mat::Identity(cd, cd);
  LocalOperator red;
  for (int i : keep) {
    red.slots.push_back(op.slots[i]);
    red.dims.push_back(op.dims[i]);
  }
  red.matrix = tensor::partial_trace(op.matrix, op.dims, keep) / traced;
  if (kept == cd) return red.matrix;
  return merge_parts(red, part_dims).matrix;
}

std::vector<Slot> ring_slots(const RingWindow& window, const std::vector<int>& part_dims) {
  std::vector<Slot> out;
  for (const auto& c : window.cells())
    for (size_t p = 0; p < part_dims.size(); ++p) out.push_back(Slot{c, static_cast<int>(p)});
  return out;
}

std::vector<long> sigma_permutation(const RingWindow& window, const ComponentScheme& scheme) {
  const long k = static_cast<long>(scheme.offsets.size());
  auto cells = window.cells();
  std::vector<long> perm(cells.size() * k);
  for (size_t ci = 0; ci < cells.size(); ++ci)
    for (long zi = 0; zi < k; ++zi) {
      Cell src = window.reduce(cells[ci] + scheme.offsets[zi]);
      perm[ci * k + zi] = window.cell_index(src) * k + zi;
    }
  return perm;
}

}  // namespace qlga
