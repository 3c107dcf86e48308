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

#include <gtest/gtest.h>

#include "qlga/lattice.hpp"
#include "qlga/tensor.hpp"

using namespace qlga;

namespace {
Mat pauli_x() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1;
  return m;
}
Mat pauli_z() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}
}  // namespace

TEST(Neighborhood, SortsAndReflects) {
  auto nb = Neighborhood::make(1, {{1}, {-2}, {0}});
  EXPECT_EQ(nb.offsets, (std::vector<Cell>{{-2}, {0}, {1}}));
  EXPECT_EQ(nb.reflected().offsets, (std::vector<Cell>{{-1}, {0}, {2}}));
  EXPECT_EQ(nb.index_of({0}), 1);
  EXPECT_EQ(nb.index_of({5}), -1);
  EXPECT_EQ(nb.max_radius(), 2);
  EXPECT_THROW(Neighborhood::make(1, {{0}, {0}}), StructuralError);
  EXPECT_THROW(Neighborhood::make(2, {{0}}), StructuralError);
}

TEST(Neighborhood, RadiusPerAxis) {
  auto nb = Neighborhood::make(2, {{-1, 0}, {0, 2}, {1, -1}});
  EXPECT_EQ(nb.radius(), (std::vector<int>{1, 2}));
}

TEST(RingWindow, DefaultLengthsAndCheck) {
  EXPECT_EQ(default_ring_lengths(Neighborhood::make(1, {{-1}, {1}})), std::vector<int>{4});
  EXPECT_EQ(default_ring_lengths(Neighborhood::make(1, {{-2}, {0}})), std::vector<int>{6});
  RingWindow w{1, {3}, {}};
  EXPECT_THROW(w.check(Neighborhood::make(1, {{-1}, {0}, {1}})), StructuralError);
  w.lengths = {4};
  EXPECT_NO_THROW(w.check(Neighborhood::make(1, {{-1}, {0}, {1}})));
}

TEST(RingWindow, ReduceAndIndex) {
  RingWindow w{2, {3, 4}, {}};
  EXPECT_EQ(w.num_cells(), 12);
  EXPECT_EQ(w.reduce({-1, 5}), (Cell{2, 1}));
  auto cells = w.cells();
  ASSERT_EQ(cells.size(), 12u);
  for (size_t i = 0; i < cells.size(); ++i) EXPECT_EQ(w.cell_index(cells[i]), static_cast<long>(i));
  EXPECT_EQ(cells[1], (Cell{0, 1}));
}

TEST(LocalOps, TranslateAndShrink) {
  auto op = LocalOperator::make({Slot{{0}, 0}, Slot{{1}, 0}}, {2, 2},
                                tensor::embed(pauli_x(), {2, 2}, {0}));
  auto t = translate(op, {3});
  EXPECT_EQ(t.slots[0].cell, Cell{3});
  auto s = shrink(op, 1e-12);
  ASSERT_EQ(s.slots.size(), 1u);
  EXPECT_LT((s.matrix - pauli_x()).norm(), 1e-12);
  EXPECT_EQ(support_of(op, 1e-12), (std::set<Cell>{{0}}));
}

TEST(LocalOps, PartsMergeAndSplit) {
  auto op = LocalOperator::make({Slot{{0}, 1}}, {2}, pauli_z());
  auto merged = merge_parts(op, {2, 2});
  ASSERT_EQ(merged.slots.size(), 1u);
  EXPECT_EQ(merged.dims, std::vector<int>{4});
  EXPECT_LT((merged.matrix - tensor::embed(pauli_z(), {2, 2}, {1})).norm(), 1e-12);
  auto back = shrink(split_parts(merged, {2, 2}), 1e-12);
  ASSERT_EQ(back.slots.size(), 1u);
  EXPECT_EQ(back.slots[0], (Slot{{0}, 1}));
  EXPECT_LT((back.matrix - pauli_z()).norm(), 1e-12);
}

TEST(LocalOps, ProjectOntoCellTracesOthers) {
  Mat a = pauli_x() + Mat::Identity(2, 2);
  Mat b = pauli_z() + 3.0 * Mat::Identity(2, 2);
  auto op = LocalOperator::make({Slot{{0}, 0}, Slot{{1}, 0}}, {2, 2},
                                tensor::embed(a, {2, 2}, {0}) * tensor::embed(b, {2, 2}, {1}));
  Mat p = project_onto_cell(op, {0}, {2});
  EXPECT_LT((p - 3.0 * a).norm(), 1e-12);
  auto pt = partial_trace(op, {Slot{{1}, 0}});
  EXPECT_LT((pt.matrix - 2.0 * b).norm(), 1e-12);
}

TEST(Sigma, MovesComponentsAcrossTheRing) {
  ComponentScheme scheme{{{-1}, {1}}, {2, 2}, {0, 0}};
  RingWindow w{1, {4}, {}};
  auto slots = ring_slots(w, scheme.dims);
  auto perm = sigma_permutation(w, scheme);
  ASSERT_EQ(perm.size(), slots.size());
  for (size_t dest = 0; dest < slots.size(); ++dest) {
    const Slot& d = slots[dest];
    Slot src{w.reduce(d.cell + scheme.offsets[d.part]), d.part};
    EXPECT_EQ(slots[perm[dest]], src);
  }
}

TEST(ComponentScheme, QuiescentIndexAndValidation) {
  ComponentScheme scheme{{{-1}, {0}, {1}}, {2, 3, 2}, {1, 2, 0}};
  EXPECT_EQ(scheme.cell_dim(), 12);
  EXPECT_EQ(scheme.quiescent_cell_index(), (1 * 3 + 2) * 2 + 0);
  EXPECT_THROW(scheme.validate(8), StructuralError);
}
