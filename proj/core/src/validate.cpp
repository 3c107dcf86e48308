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

#include <algorithm>
#include <cmath>
#include <set>

#include "qlga/clifford.hpp"
#include "qlga/descriptor.hpp"
#include "qlga/tensor.hpp"

namespace qlga {

namespace {

std::vector<Cell> unit_axes(int n) {
  std::vector<Cell> out;
  for (int i = 0; i < n; ++i) {
    Cell e(n, 0);
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

// Normalized trace inner product over the union support.
cplx normalized_inner(const LocalOperator& a, const LocalOperator& b) {
  std::vector<Slot> s;
  std::vector<int> dims;
  union_support(a, b, s, dims);
  return hs_inner(a, b) / static_cast<double>(tensor::total(dims));
}

void validate_clifford(const QcaDescriptor& d, ValidationReport& r, std::set<Cell>& fwd,
                       std::set<Cell>& bwd) {
  const auto& ev = d.clifford();
  const Cell origin(d.n, 0);
  std::vector<PauliWord> gens, images;
  double trans = 0;
  for (int q = 0; q < ev.qubits_per_cell; ++q)
    for (int b = 0; b < 2; ++b) {
      PauliWord g = PauliWord::single(Slot{origin, q}, b == 0, b == 1);
      PauliWord f = conjugate_pauli(g, ev, true);
      PauliWord k = conjugate_pauli(g, ev, false);
      for (const auto& c : f.cells()) fwd.insert(c);
      for (const auto& c : k.cells()) bwd.insert(c);
      gens.push_back(g);
      images.push_back(f);
      for (const auto& e : unit_axes(d.n))
        if (!(conjugate_pauli(g.translated(e), ev, true) == f.translated(e))) trans = 1;
    }
  double sym = 0;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i].commutes_with(gens[j]) != images[i].commutes_with(images[j])) sym = 1;
  r.residuals["gate_unitarity"] = 0;
  r.residuals["gram"] = sym;
  r.residuals["translation"] = trans;
}

void validate_dense(const QcaDescriptor& d, ValidationReport& r, std::set<Cell>& fwd,
                    std::set<Cell>& bwd, double tol) {
  DenseProgram p = compile(d);
  const int dw = d.cell.dim;
  const Cell origin(d.n, 0);
  double unit = 0;
  for (const auto& st : p.stages)
    if (st.kind == Stage::Kind::Gates) {
      const Mat& g = st.gate.matrix;
      unit = std::max(unit, (g.adjoint() * g - Mat::Identity(g.rows(), g.cols())).norm());
    }
  std::vector<std::pair<int, int>> units;
  for (int i = 0; i < dw; ++i)
    for (int j = 0; j < dw; ++j) units.emplace_back(i, j);
  auto unit_op = [&](int i, int j, const Cell& c) {
    Mat e = Mat::Zero(dw, dw);
    e(i, j) = 1;
    return split_parts(LocalOperator::on_cell(c, e), p.part_dims);
  };
  std::vector<LocalOperator> images;
  for (auto [i, j] : units) {
    LocalOperator e = unit_op(i, j, origin);
    LocalOperator f = conjugate_stages(e, p, true);
    LocalOperator b = conjugate_stages(e, p, false);
    for (const auto& c : support_of(f, tol)) fwd.insert(c);
    for (const auto& c : support_of(b, tol)) bwd.insert(c);
    images.push_back(std::move(f));
  }
  // *-isomorphism: Gram data of the conjugated units matches the originals.
  double gram = 0;
  const size_t nu = units.size();
  for (size_t k = 0; k < nu; ++k)
    for (size_t l = k; l < nu; ++l) {
      if (dw > 4 && l > k + 1) break;
      cplx want = k == l ? cplx(1.0 / dw) : cplx(0);
      gram = std::max(gram, std::abs(normalized_inner(images[k], images[l]) - want) * dw);
    }
  double trans = 0;
  for (const auto& e : unit_axes(d.n))
    for (size_t k = 0; k < nu; ++k) {
      auto [i, j] = units[k];
      if (dw > 4 && i != 0 && j != 0) continue;
      LocalOperator moved = conjugate_stages(unit_op(i, j, e), p, true);
      LocalOperator diff = add(moved, translate(images[k], e), -1.0);
      trans = std::max(trans, diff.matrix.norm() / std::max(1e-300, moved.matrix.norm()));
    }
  r.residuals["gate_unitarity"] = unit;
  r.residuals["gram"] = gram;
  r.residuals["translation"] = trans;
}

}  // namespace

ValidationReport validate(const QcaDescriptor& d, double tol) {
  ValidationReport r;
  r.backend = d.is_clifford() ? "clifford" : "dense";
  r.declared_neighborhood = d.neighborhood.offsets;
  std::set<Cell> fwd, bwd;
  if (d.is_clifford())
    validate_clifford(d, r, fwd, bwd);
  else
    validate_dense(d, r, fwd, bwd, tol);

  r.forward_causal_ok = true;
  r.backward_causal_ok = true;
  for (const auto& c : fwd) r.forward_causal_ok = r.forward_causal_ok && d.neighborhood.contains(c);
  for (const auto& c : bwd) r.backward_causal_ok = r.backward_causal_ok && d.neighborhood.contains(-c);
  r.causal_ok = r.forward_causal_ok && r.backward_causal_ok;
  std::set<Cell> found = fwd;
  for (const auto& c : bwd) found.insert(-c);
  if (found.empty()) found.insert(Cell(d.n, 0));
  r.found_neighborhood.assign(found.begin(), found.end());

  // Quiescent eigenvector on a ring wide enough for both neighborhoods.
  std::vector<Cell> both = r.found_neighborhood;
  both.insert(both.end(), d.neighborhood.offsets.begin(), d.neighborhood.offsets.end());
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());
  Neighborhood wide = Neighborhood::make(d.n, both);
  r.window = default_ring_lengths(wide);
  DenseProgram p = compile(d);
  RingWindow w{d.n, r.window, d.cell};
  // Stride lattices must tile the ring.
  for (const auto& st : p.stages)
    for (int i = 0; i < d.n; ++i)
      while (r.window[i] % st.stride[i] != 0) ++r.window[i];
  w.lengths = r.window;
  RingEngine eng(p, w);
  SparseState q{{eng.quiescent(), 1.0}};
  SparseState out = eng.apply(q);
  cplx lam = sparse_inner(q, out);
  double rest = 0;
  for (const auto& [k, v] : out)
    if (k != eng.quiescent()) rest += std::norm(v);
  r.quiescent_eigenvalue = lam;
  r.residuals["quiescent_eigenvector"] = std::sqrt(rest);
  r.residuals["quiescent_modulus"] = std::abs(std::abs(lam) - 1.0);

  r.unitary_ok = r.residuals["gate_unitarity"] <= tol && r.residuals["gram"] <= tol &&
                 r.residuals["quiescent_eigenvector"] <= tol &&
                 r.residuals["quiescent_modulus"] <= tol;
  r.translation_ok = r.residuals["translation"] <= tol;
  return r;
}

}  // namespace qlga
