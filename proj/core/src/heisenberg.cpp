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

#include "qlga/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qlga/clifford.hpp"
#include "qlga/tensor.hpp"

namespace qlga {

Backend parse_backend(const std::string& s) {
  if (s == "auto") return Backend::Auto;
  if (s == "dense") return Backend::Dense;
  if (s == "clifford") return Backend::Clifford;
  throw StructuralError("unknown backend '" + s + "'");
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Dense: return "dense";
    default: return "clifford";
  }
}

namespace {

constexpr double kShrink = 1e-11;

LocalOperator conjugate_checked(const LocalOperator& a, const QcaDescriptor& d, bool forward,
                                bool check) {
  DenseProgram p = compile(d);
  for (int dim : a.dims)
    if (dim != d.cell.dim) throw StructuralError("operator slots must be whole cells");
  LocalOperator c = conjugate_stages(split_parts(a, p.part_dims), p, forward);
  c = shrink(c, kShrink);
  LocalOperator out = merge_parts(c, p.part_dims);
  if (check) {
    std::set<Cell> allowed;
    for (const auto& s : a.slots)
      for (const auto& z : d.neighborhood.offsets) allowed.insert(forward ? s.cell + z : s.cell - z);
    std::vector<Cell> bad;
    for (const auto& s : out.slots)
      if (!allowed.count(s.cell)) bad.push_back(s.cell);
    if (!bad.empty())
      throw CausalityError(std::string(forward ? "forward" : "backward") +
                               " conjugate escapes the declared neighborhood",
                           bad);
  }
  return out;
}

Mat matrix_unit(int dim, int i, int j) {
  Mat e = Mat::Zero(dim, dim);
  e(i, j) = 1;
  return e;
}

// Eigenvectors of the Hermitian Gram matrix with eigenvalue within tol of 1.
std::vector<Vec> unit_eigenvectors(const Mat& g, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  std::vector<Vec> out;
  for (long i = 0; i < g.rows(); ++i)
    if (1.0 - es.eigenvalues()(i) <= tol) out.push_back(es.eigenvectors().col(i));
  return out;
}

std::vector<Slot> origin_ambient(int n) { return {Slot{Cell(n, 0), 0}}; }

// D_{-y,0} from the cell-y projections of the forward images of a normalized
// basis of A_0.
OperatorSubspace d_from_projections(const std::vector<Mat>& proj, int dw, int n,
                                    const Tolerances& tol) {
  const long k = static_cast<long>(proj.size());
  Mat g(k, k);
  for (long a = 0; a < k; ++a)
    for (long b = a; b < k; ++b) {
      g(a, b) = (proj[a].adjoint() * proj[b]).trace() / static_cast<double>(dw);
      g(b, a) = std::conj(g(a, b));
    }
  std::vector<Mat> elems;
  for (const auto& v : unit_eigenvectors(g, tol.residual)) {
    Mat m = Mat::Zero(dw, dw);
    for (long a = 0; a < k; ++a) m += v(a) * proj[a];
    elems.push_back(m);
  }
  return orthonormalize(elems, origin_ambient(n), {dw}, tol.rank);
}

void verify_algebras(DAlgebraReport& r, const Tolerances& tol) {
  double adj = 0, id = 0, prod = 0, comm = 0;
  for (size_t i = 0; i < r.algebras.size(); ++i) {
    adj = std::max(adj, adjoint_closure_residual(r.algebras[i]));
    id = std::max(id, identity_residual(r.algebras[i]));
    prod = std::max(prod, product_closure_residual(r.algebras[i]));
    for (size_t j = i + 1; j < r.algebras.size(); ++j)
      comm = std::max(comm, commutation_residual(r.algebras[i], r.algebras[j]));
  }
  r.residuals["d_adjoint"] = adj;
  r.residuals["d_identity"] = id;
  r.residuals["d_product"] = prod;
  r.residuals["d_commutation"] = comm;
  if (std::max({adj, id, prod, comm}) > 100 * tol.residual)
    throw NumericalError("D-algebras failed verification: adjoint " + std::to_string(adj) +
                         ", identity " + std::to_string(id) + ", product " +
                         std::to_string(prod) + ", commutation " + std::to_string(comm));
}

}  // namespace

LocalOperator conjugate_forward(const LocalOperator& a, const QcaDescriptor& d, bool check) {
  return conjugate_checked(a, d, true, check);
}

LocalOperator conjugate_backward(const LocalOperator& a, const QcaDescriptor& d, bool check) {
  return conjugate_checked(a, d, false, check);
}

OperatorSubspace evolved_cell_algebra(const QcaDescriptor& d) {
  const int dw = d.cell.dim;
  std::vector<LocalOperator> imgs;
  for (int i = 0; i < dw; ++i)
    for (int j = 0; j < dw; ++j)
      imgs.push_back(
          conjugate_forward(LocalOperator::on_cell(Cell(d.n, 0), matrix_unit(dw, i, j)), d));
  return orthonormalize(imgs);
}

DAlgebraReport dense_d_algebras(const QcaDescriptor& d, const Tolerances& tol) {
  DenseProgram p = compile(d);
  const int dw = d.cell.dim;
  const Cell origin(d.n, 0);
  const size_t lead = p.leading_cellwise();
  std::vector<Mat> lead_u;
  for (size_t i = 0; i < lead; ++i) lead_u.push_back(cellwise_matrix(p.stages[i], p));

  std::set<Cell> allowed(d.neighborhood.offsets.begin(), d.neighborhood.offsets.end());
  const double norm = std::sqrt(static_cast<double>(dw));
  std::vector<LocalOperator> images;
  for (int i = 0; i < dw; ++i)
    for (int j = 0; j < dw; ++j) {
      LocalOperator e = LocalOperator::on_cell(origin, norm * matrix_unit(dw, i, j));
      LocalOperator c = shrink(conjugate_stages(split_parts(e, p.part_dims), p, true, lead), kShrink);
      std::vector<Cell> bad;
      for (const auto& s : c.slots)
        if (!allowed.count(s.cell)) bad.push_back(s.cell);
      if (!bad.empty())
        throw CausalityError("forward conjugate escapes the declared neighborhood", bad);
      images.push_back(std::move(c));
    }

  DAlgebraReport r;
  r.backend = "dense";
  r.window = default_ring_lengths(d.neighborhood);
  r.cell_algebra_dimension = static_cast<long>(dw) * dw;
  for (const auto& y : d.neighborhood.offsets) {
    std::vector<Mat> proj;
    for (const auto& c : images) {
      Mat m = project_onto_cell(c, y, p.part_dims);
      for (size_t i = lead; i-- > 0;) m = lead_u[i].adjoint() * m * lead_u[i];
      proj.push_back(std::move(m));
    }
    OperatorSubspace s = d_from_projections(proj, dw, d.n, tol);
    r.offsets.push_back(y);
    r.dims.push_back(s.dim());
    r.inactive.push_back(s.dim() == 1);
    r.algebras.push_back(std::move(s));
  }
  verify_algebras(r, tol);
  OperatorSubspace span = span_product(r.algebras);
  r.span_dimension = span.dim();
  r.verdict = r.span_dimension == r.cell_algebra_dimension;
  return r;
}

std::vector<OperatorSubspace> d_algebras(const QcaDescriptor& d, const Tolerances& tol) {
  if (d.is_clifford() && d.clifford().qubits_per_cell <= 4) {
    auto r = pauli_cell_algebra_dims(d);
    if (!r.algebras.empty()) return r.algebras;
  }
  return dense_d_algebras(d, tol).algebras;
}

DAlgebraReport criterion_report(const QcaDescriptor& d, Backend backend, const Tolerances& tol) {
  if (backend == Backend::Auto) backend = d.is_clifford() ? Backend::Clifford : Backend::Dense;
  if (backend == Backend::Clifford) {
    if (!d.is_clifford())
      throw StructuralError("the clifford backend needs a Clifford rule set");
    DAlgebraReport r = pauli_cell_algebra_dims(d);
    if (!r.algebras.empty()) verify_algebras(r, tol);
    return r;
  }
  return dense_d_algebras(d, tol);
}

std::vector<long> ring_d_dimensions(const QcaDescriptor& d, const std::vector<int>& lengths,
                                    const Tolerances& tol) {
  WindowUnitary wu = build_window_unitary(d, lengths);
  RingWindow w{d.n, lengths, d.cell};
  const int dw = d.cell.dim;
  std::vector<Slot> slots;
  for (const auto& c : w.cells()) slots.push_back(Slot{c, 0});
  std::vector<int> dims(slots.size(), dw);
  const Cell origin(d.n, 0);
  const int keep = static_cast<int>(w.cell_index(origin));
  const double rest = static_cast<double>(wu.unitary.rows()) / dw;
  const double norm = std::sqrt(static_cast<double>(dw));
  const tensor::Split sp = tensor::split(dims, {keep});
  const Mat& u = wu.unitary;
  std::vector<long> out;
  for (const auto& y : d.neighborhood.offsets) {
    const int src = static_cast<int>(w.cell_index(w.reduce(-y)));
    std::vector<Mat> proj;
    for (int i = 0; i < dw; ++i)
      for (int j = 0; j < dw; ++j) {
        // tr_rest(U^dagger E U) without forming the full product.
        Mat eu = u;
        tensor::apply_left(eu, dims, {src}, norm * matrix_unit(dw, i, j));
        Mat c = Mat::Zero(dw, dw);
        for (int a = 0; a < dw; ++a)
          for (int b = 0; b < dw; ++b)
            for (long r : sp.rest) c(a, b) += u.col(sp.sub[a] + r).dot(eu.col(sp.sub[b] + r));
        proj.push_back(c / rest);
      }
    out.push_back(d_from_projections(proj, dw, d.n, tol).dim());
  }
  return out;
}

double containment_residual(const QcaDescriptor& d, const Tolerances& tol) {
  const int dw = d.cell.dim;
  if (dw > 4) throw StructuralError("containment check limited to cells of dimension <= 4");
  const Cell origin(d.n, 0);
  std::vector<std::vector<LocalOperator>> images;
  std::set<Cell> cells{origin};
  for (const auto& k : d.neighborhood.offsets) {
    std::vector<LocalOperator> v;
    for (int i = 0; i < dw; ++i)
      for (int j = 0; j < dw; ++j) {
        v.push_back(conjugate_forward(LocalOperator::on_cell(-k, matrix_unit(dw, i, j)), d));
        for (const auto& s : v.back().slots) cells.insert(s.cell);
      }
    images.push_back(std::move(v));
  }
  double amb = std::pow(static_cast<double>(dw), static_cast<double>(cells.size()));
  if (amb > 64) throw StructuralError("containment check ambient too large");
  std::vector<Slot> slots;
  for (const auto& c : cells) slots.push_back(Slot{c, 0});
  std::vector<int> dims(slots.size(), dw);
  std::vector<OperatorSubspace> spaces;
  for (const auto& v : images) {
    std::vector<Mat> ext;
    for (const auto& op : v) ext.push_back(extend(op, slots, dims).matrix);
    spaces.push_back(orthonormalize(ext, slots, dims, tol.rank));
  }
  OperatorSubspace prod = span_product(spaces);
  double worst = 0;
  for (int i = 0; i < dw; ++i)
    for (int j = 0; j < dw; ++j) {
      Mat e = extend(LocalOperator::on_cell(origin, matrix_unit(dw, i, j)), slots, dims).matrix;
      worst = std::max(worst, prod.residual(e));
    }
  return worst;
}

}  // namespace qlga
