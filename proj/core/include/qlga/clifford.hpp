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

// Exact Pauli/symplectic backend for Clifford rule sets.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "qlga/descriptor.hpp"
#include "qlga/opspace.hpp"

namespace qlga {

// i^phase * prod_s X_s^x Z_s^z, qubit slots are (cell, qubit index).
struct PauliWord {
  std::map<Slot, uint8_t> ops;  // bit 0: x, bit 1: z; identity entries are absent
  int phase = 0;

  static PauliWord single(const Slot& s, bool x, bool z);
  bool x(const Slot& s) const;
  bool z(const Slot& s) const;
  void set(const Slot& s, bool x, bool z);
  std::set<Cell> cells() const;
  bool commutes_with(const PauliWord& o) const;
  PauliWord translated(const Cell& z) const;
  // Restriction to the qubits of one cell (phase kept).
  PauliWord restricted(const Cell& c) const;
  PauliWord operator*(const PauliWord& o) const;
  bool operator==(const PauliWord& o) const { return phase == o.phase && ops == o.ops; }
  // Dense matrix on the word's slots (sorted), qubit dimension 2.
  LocalOperator to_operator() const;
};

// Row-reduced generating set over F2. Columns are (slot, x|z) in slot order.
class SymplecticSubspace {
 public:
  SymplecticSubspace() = default;
  explicit SymplecticSubspace(std::vector<Slot> slots);
  static SymplecticSubspace span(const std::vector<PauliWord>& words);

  // Adds a word; returns false if it was already in the span.
  bool add(const PauliWord& w);
  bool contains(const PauliWord& w) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }

 private:
  std::vector<uint64_t> encode(const PauliWord& w) const;
  bool reduce(std::vector<uint64_t>& v) const;  // true if nonzero remains
  std::vector<Slot> slots_;
  std::map<Slot, int> column_;
  std::vector<std::vector<uint64_t>> rows_;
  std::vector<int> pivots_;
};

// Rank of a set of F2 vectors and a basis of {c : sum_i c_i v_i = 0}.
int f2_rank(std::vector<std::vector<uint64_t>> rows);
std::vector<std::vector<uint8_t>> f2_kernel(const std::vector<std::vector<uint64_t>>& rows);

// R^dagger w R (forward) or R w R^dagger (backward). When `allowed` is given,
// a support outside it raises CausalityError.
PauliWord conjugate_pauli(const PauliWord& w, const CliffordEvolution& ev, bool forward,
                          const std::set<Cell>* allowed = nullptr);

struct DAlgebraReport;

struct CliffordDAlgebras {
  std::vector<Cell> offsets;                          // y in N
  std::vector<std::vector<PauliWord>> generators;     // words on cell 0 generating D_{-y,0}
  std::vector<int> log2_dims;                         // dim D = 2^k
  int log2_span = 0;                                  // rank of all generators together
  double symplectic_residual = 0;                     // commutation mismatches found
};

CliffordDAlgebras clifford_d_algebras(const QcaDescriptor& d);
DAlgebraReport pauli_cell_algebra_dims(const QcaDescriptor& d);

// Dense OperatorSubspace on one cell spanned by the group generated by words.
OperatorSubspace pauli_group_span(const std::vector<PauliWord>& gens, int qubits, int n,
                                  double tol = 1e-9);

struct CrossCheck {
  bool agree = false;
  std::vector<long> dense_dims;
  std::vector<long> clifford_dims;
  long dense_span = 0;
  long clifford_span = 0;
};

// Runs both backends; requires at most `max_qubits` qubits per cell.
CrossCheck cross_check(const QcaDescriptor& d, int max_qubits = 3);

}  // namespace qlga
