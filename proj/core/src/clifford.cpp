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

#include "qlga/clifford.hpp"

#include <algorithm>

#include "qlga/heisenberg.hpp"
#include "qlga/tensor.hpp"

namespace qlga {

PauliWord PauliWord::single(const Slot& s, bool x, bool z) {
  PauliWord w;
  w.set(s, x, z);
  return w;
}

bool PauliWord::x(const Slot& s) const {
  auto it = ops.find(s);
  return it != ops.end() && (it->second & 1);
}

bool PauliWord::z(const Slot& s) const {
  auto it = ops.find(s);
  return it != ops.end() && (it->second & 2);
}

void PauliWord::set(const Slot& s, bool x, bool z) {
  uint8_t v = static_cast<uint8_t>((x ? 1 : 0) | (z ? 2 : 0));
  if (v == 0)
    ops.erase(s);
  else
    ops[s] = v;
}

std::set<Cell> PauliWord::cells() const {
  std::set<Cell> out;
  for (const auto& kv : ops) out.insert(kv.first.cell);
  return out;
}

bool PauliWord::commutes_with(const PauliWord& o) const {
  int acc = 0;
  for (const auto& [s, v] : ops) {
    auto it = o.ops.find(s);
    if (it == o.ops.end()) continue;
    int x1 = v & 1, z1 = (v >> 1) & 1, x2 = it->second & 1, z2 = (it->second >> 1) & 1;
    acc ^= (x1 & z2) ^ (z1 & x2);
  }
  return acc == 0;
}

PauliWord PauliWord::translated(const Cell& z) const {
  PauliWord out;
  out.phase = phase;
  for (const auto& [s, v] : ops) out.ops[Slot{s.cell + z, s.part}] = v;
  return out;
}

PauliWord PauliWord::restricted(const Cell& c) const {
  PauliWord out;
  out.phase = phase;
  for (const auto& [s, v] : ops)
    if (s.cell == c) out.ops[s] = v;
  return out;
}

PauliWord PauliWord::operator*(const PauliWord& o) const {
  PauliWord out = *this;
  int ph = phase + o.phase;
  for (const auto& [s, v] : o.ops) {
    bool x1 = x(s), z1 = z(s);
    bool x2 = v & 1, z2 = v & 2;
    // Z^z1 X^x2 = (-1)^(z1 x2) X^x2 Z^z1
    if (z1 && x2) ph += 2;
    out.set(s, x1 != x2, z1 != z2);
  }
  out.phase = ((ph % 4) + 4) % 4;
  return out;
}

LocalOperator PauliWord::to_operator() const {
  std::vector<Slot> slots;
  std::vector<int> dims;
  Mat m = Mat::Identity(1, 1);
  Mat X(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Z << 1, 0, 0, -1;
  for (const auto& [s, v] : ops) {
    Mat f = Mat::Identity(2, 2);
    if (v & 1) f = f * X;
    if (v & 2) f = f * Z;
    Mat k(m.rows() * 2, m.cols() * 2);
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c) k.block(r * 2, c * 2, 2, 2) = m(r, c) * f;
    m = std::move(k);
    slots.push_back(s);
    dims.push_back(2);
  }
  static const cplx kPhase[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  m *= kPhase[((phase % 4) + 4) % 4];
  return LocalOperator::make(slots, dims, m);
}

// ---------------------------------------------------------------------------

namespace {

bool get_bit(const std::vector<uint64_t>& v, int i) { return (v[i >> 6] >> (i & 63)) & 1; }
void flip_bit(std::vector<uint64_t>& v, int i) { v[i >> 6] ^= uint64_t(1) << (i & 63); }
void xor_into(std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}
int lowest_bit(const std::vector<uint64_t>& v) {
  for (size_t w = 0; w < v.size(); ++w)
    if (v[w]) return static_cast<int>(w * 64 + __builtin_ctzll(v[w]));
  return -1;
}

}  // namespace

SymplecticSubspace::SymplecticSubspace(std::vector<Slot> slots) : slots_(std::move(slots)) {
  std::sort(slots_.begin(), slots_.end());
  slots_.erase(std::unique(slots_.begin(), slots_.end()), slots_.end());
  for (size_t i = 0; i < slots_.size(); ++i) column_[slots_[i]] = static_cast<int>(i);
}

SymplecticSubspace SymplecticSubspace::span(const std::vector<PauliWord>& words) {
  std::vector<Slot> slots;
  for (const auto& w : words)
    for (const auto& kv : w.ops) slots.push_back(kv.first);
  SymplecticSubspace s(slots);
  for (const auto& w : words) s.add(w);
  return s;
}

std::vector<uint64_t> SymplecticSubspace::encode(const PauliWord& w) const {
  std::vector<uint64_t> v((2 * slots_.size() + 63) / 64 + 1, 0);
  for (const auto& [s, b] : w.ops) {
    auto it = column_.find(s);
    if (it == column_.end()) throw StructuralError("Pauli word outside the subspace columns");
    if (b & 1) flip_bit(v, 2 * it->second);
    if (b & 2) flip_bit(v, 2 * it->second + 1);
  }
  return v;
}

bool SymplecticSubspace::reduce(std::vector<uint64_t>& v) const {
  for (size_t r = 0; r < rows_.size(); ++r)
    if (get_bit(v, pivots_[r])) xor_into(v, rows_[r]);
  return lowest_bit(v) >= 0;
}

bool SymplecticSubspace::add(const PauliWord& w) {
  auto v = encode(w);
  if (!reduce(v)) return false;
  int p = lowest_bit(v);
  // Keep the form fully reduced: clear the new pivot from existing rows.
  for (auto& row : rows_)
    if (get_bit(row, p)) xor_into(row, v);
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool SymplecticSubspace::contains(const PauliWord& w) const {
  for (const auto& kv : w.ops)
    if (!column_.count(kv.first)) return false;
  auto v = encode(w);
  return !reduce(v);
}

int f2_rank(std::vector<std::vector<uint64_t>> rows) {
  int rank = 0;
  std::vector<std::vector<uint64_t>> basis;
  std::vector<int> piv;
  for (auto& v : rows) {
    for (size_t r = 0; r < basis.size(); ++r)
      if (get_bit(v, piv[r])) xor_into(v, basis[r]);
    int p = lowest_bit(v);
    if (p < 0) continue;
    basis.push_back(v);
    piv.push_back(p);
    ++rank;
  }
  return rank;
}

std::vector<std::vector<uint8_t>> f2_kernel(const std::vector<std::vector<uint64_t>>& rows) {
  // Track combinations alongside the elimination.
  const size_t n = rows.size();
  std::vector<std::vector<uint64_t>> basis;
  std::vector<std::vector<uint8_t>> combo_of_basis;
  std::vector<int> piv;
  std::vector<std::vector<uint8_t>> kernel;
  for (size_t i = 0; i < n; ++i) {
    auto v = rows[i];
    std::vector<uint8_t> c(n, 0);
    c[i] = 1;
    for (size_t r = 0; r < basis.size(); ++r)
      if (get_bit(v, piv[r])) {
        xor_into(v, basis[r]);
        for (size_t k = 0; k < n; ++k) c[k] ^= combo_of_basis[r][k];
      }
    int p = lowest_bit(v);
    if (p < 0) {
      kernel.push_back(std::move(c));
      continue;
    }
    basis.push_back(std::move(v));
    combo_of_basis.push_back(std::move(c));
    piv.push_back(p);
  }
  return kernel;
}

// ---------------------------------------------------------------------------

namespace {

// U w U^dagger for one gate placed at cell offset `at`; `inverse` uses U = G^dagger.
void apply_gate(PauliWord& w, const CliffordGate& g, const Cell& at, bool inverse) {
  auto slot = [&](int k) { return Slot{g.operands[k].offset + at, g.operands[k].qubit}; };
  switch (g.kind) {
    case CliffordKind::H: {
      Slot s = slot(0);
      bool x = w.x(s), z = w.z(s);
      w.set(s, z, x);
      if (x && z) w.phase += 2;
      break;
    }
    case CliffordKind::S: {
      Slot s = slot(0);
      bool x = w.x(s), z = w.z(s);
      w.set(s, x, z != x);
      if (x) w.phase += inverse ? 3 : 1;
      break;
    }
    case CliffordKind::X: {
      if (w.z(slot(0))) w.phase += 2;
      break;
    }
    case CliffordKind::Z: {
      if (w.x(slot(0))) w.phase += 2;
      break;
    }
    case CliffordKind::CZ: {
      Slot a = slot(0), b = slot(1);
      bool xa = w.x(a), za = w.z(a), xb = w.x(b), zb = w.z(b);
      w.set(a, xa, za != xb);
      w.set(b, xb, zb != xa);
      if (xa && xb) w.phase += 2;
      break;
    }
    case CliffordKind::CNOT: {
      Slot c = slot(0), t = slot(1);
      bool xc = w.x(c), zc = w.z(c), xt = w.x(t), zt = w.z(t);
      w.set(c, xc, zc != zt);
      w.set(t, xt != xc, zt);
      break;
    }
  }
  w.phase %= 4;
}

std::set<Cell> sites_touching(const PauliWord& w, const CliffordGate& g) {
  std::set<Cell> out;
  for (const auto& [s, v] : w.ops)
    for (const auto& a : g.operands)
      if (a.qubit == s.part) out.insert(s.cell - a.offset);
  return out;
}

}  // namespace

PauliWord conjugate_pauli(const PauliWord& w, const CliffordEvolution& ev, bool forward,
                          const std::set<Cell>* allowed) {
  PauliWord cur = w;
  auto run = [&](const CliffordGate& g) {
    for (const auto& x : sites_touching(cur, g)) apply_gate(cur, g, x, forward);
  };
  if (forward) {
    for (auto it = ev.gates.rbegin(); it != ev.gates.rend(); ++it) run(*it);
  } else {
    for (const auto& g : ev.gates) run(g);
  }
  if (allowed) {
    std::vector<Cell> bad;
    for (const auto& c : cur.cells())
      if (!allowed->count(c)) bad.push_back(c);
    if (!bad.empty())
      throw CausalityError("conjugated Pauli word leaves the allowed cells", bad);
  }
  return cur;
}

CliffordDAlgebras clifford_d_algebras(const QcaDescriptor& d) {
  const auto& ev = d.clifford();
  const int m = ev.qubits_per_cell;
  const Cell origin(d.n, 0);
  CliffordDAlgebras out;
  std::vector<PauliWord> all;
  for (const auto& y : d.neighborhood.offsets) {
    Cell src = -y;
    std::set<Cell> allowed;
    for (const auto& z : d.neighborhood.offsets) allowed.insert(src + z);
    std::vector<PauliWord> images, originals;
    for (int q = 0; q < m; ++q)
      for (int b = 0; b < 2; ++b) {
        PauliWord g = PauliWord::single(Slot{src, q}, b == 0, b == 1);
        originals.push_back(g);
        images.push_back(conjugate_pauli(g, ev, true, &allowed));
      }
    // Conjugation must preserve every commutation relation.
    for (size_t i = 0; i < images.size(); ++i)
      for (size_t j = i + 1; j < images.size(); ++j)
        if (images[i].commutes_with(images[j]) != originals[i].commutes_with(originals[j]))
          out.symplectic_residual += 1;
    // Bits outside cell 0 must cancel.
    std::vector<Slot> outside;
    for (const auto& w : images)
      for (const auto& kv : w.ops)
        if (kv.first.cell != origin) outside.push_back(kv.first);
    SymplecticSubspace cols(outside);
    std::vector<std::vector<uint64_t>> rows;
    for (const auto& w : images) {
      PauliWord o = w;
      for (auto it = o.ops.begin(); it != o.ops.end();)
        it = it->first.cell == origin ? o.ops.erase(it) : std::next(it);
      std::vector<uint64_t> v((2 * cols.slots().size() + 63) / 64 + 1, 0);
      for (size_t k = 0; k < cols.slots().size(); ++k) {
        if (o.x(cols.slots()[k])) flip_bit(v, 2 * static_cast<int>(k));
        if (o.z(cols.slots()[k])) flip_bit(v, 2 * static_cast<int>(k) + 1);
      }
      rows.push_back(std::move(v));
    }
    std::vector<PauliWord> gens;
    for (const auto& c : f2_kernel(rows)) {
      PauliWord p;
      for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) p = p * images[i];
      gens.push_back(p.restricted(origin));
      all.push_back(gens.back());
    }
    out.offsets.push_back(y);
    out.log2_dims.push_back(static_cast<int>(gens.size()));
    out.generators.push_back(std::move(gens));
  }
  out.log2_span = SymplecticSubspace::span(all).rank();
  return out;
}

DAlgebraReport pauli_cell_algebra_dims(const QcaDescriptor& d) {
  CliffordDAlgebras c = clifford_d_algebras(d);
  const int m = d.clifford().qubits_per_cell;
  DAlgebraReport r;
  r.backend = "clifford";
  r.offsets = c.offsets;
  for (int k : c.log2_dims) {
    r.dims.push_back(1L << k);
    r.inactive.push_back(k == 0);
  }
  r.span_dimension = 1L << c.log2_span;
  r.cell_algebra_dimension = 1L << (2 * m);
  r.verdict = r.span_dimension == r.cell_algebra_dimension;
  r.window = default_ring_lengths(d.neighborhood);
  r.residuals["symplectic"] = c.symplectic_residual;
  if (m <= 4) {
    for (const auto& g : c.generators) r.algebras.push_back(pauli_group_span(g, m, d.n));
  }
  return r;
}

OperatorSubspace pauli_group_span(const std::vector<PauliWord>& gens, int qubits, int n,
                                  double tol) {
  const Cell origin(n, 0);
  std::vector<Slot> full;
  std::vector<int> fd;
  for (int q = 0; q < qubits; ++q) {
    full.push_back(Slot{origin, q});
    fd.push_back(2);
  }
  std::vector<Mat> mats;
  const size_t k = gens.size();
  for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
    PauliWord p;
    for (size_t i = 0; i < k; ++i)
      if (mask >> i & 1) p = p * gens[i];
    LocalOperator op = p.to_operator();
    if (op.slots.empty())
      mats.push_back(op.matrix(0, 0) * Mat::Identity(1L << qubits, 1L << qubits));
    else
      mats.push_back(extend(op, full, fd).matrix);
  }
  return orthonormalize(mats, {Slot{origin, 0}}, {1 << qubits}, tol);
}

CrossCheck cross_check(const QcaDescriptor& d, int max_qubits) {
  if (!d.is_clifford()) throw StructuralError("cross_check needs a Clifford descriptor");
  if (d.clifford().qubits_per_cell > max_qubits)
    throw StructuralError("cell too large for the dense backend");
  DAlgebraReport c = pauli_cell_algebra_dims(d);
  DAlgebraReport dn = dense_d_algebras(d);
  CrossCheck out;
  out.clifford_dims = c.dims;
  out.dense_dims = dn.dims;
  out.clifford_span = c.span_dimension;
  out.dense_span = dn.span_dimension;
  out.agree = out.clifford_dims == out.dense_dims && out.clifford_span == out.dense_span;
  return out;
}

}  // namespace qlga
