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

#include "qlga/opspace.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/SVD>

#include "qlga/tensor.hpp"

namespace qlga {

LocalOperator LocalOperator::make(std::vector<Slot> slots, std::vector<int> dims, Mat matrix) {
  if (slots.size() != dims.size()) throw StructuralError("slot/dimension count mismatch");
  long n = tensor::total(dims);
  if (matrix.rows() != n || matrix.cols() != n)
    throw StructuralError("matrix size " + std::to_string(matrix.rows()) +
                          " does not match support dimension " + std::to_string(n));
  std::vector<int> order(slots.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return slots[a] < slots[b]; });
  LocalOperator op;
  for (int i : order) {
    if (!op.slots.empty() && op.slots.back() == slots[i])
      throw StructuralError("duplicate slot " + to_string(slots[i]));
    op.slots.push_back(slots[i]);
    op.dims.push_back(dims[i]);
  }
  bool sorted = std::is_sorted(order.begin(), order.end());
  op.matrix = sorted ? std::move(matrix) : tensor::permute(matrix, dims, order);
  return op;
}

LocalOperator LocalOperator::identity(std::vector<Slot> slots, std::vector<int> dims) {
  long n = tensor::total(dims);
  return make(std::move(slots), std::move(dims), Mat::Identity(n, n));
}

LocalOperator LocalOperator::on_cell(const Cell& c, const Mat& m) {
  return make({Slot{c, 0}}, {static_cast<int>(m.rows())}, m);
}

int LocalOperator::position(const Slot& s) const {
  auto it = std::lower_bound(slots.begin(), slots.end(), s);
  if (it == slots.end() || !(*it == s)) return -1;
  return static_cast<int>(it - slots.begin());
}

LocalOperator LocalOperator::adjoint() const {
  LocalOperator op = *this;
  op.matrix = matrix.adjoint();
  return op;
}

LocalOperator extend(const LocalOperator& op, const std::vector<Slot>& slots,
                     const std::vector<int>& dims) {
  if (op.slots == slots) return op;
  std::vector<int> pos;
  pos.reserve(op.slots.size());
  for (size_t i = 0; i < op.slots.size(); ++i) {
    auto it = std::lower_bound(slots.begin(), slots.end(), op.slots[i]);
    if (it == slots.end() || !(*it == op.slots[i]))
      throw StructuralError("slot " + to_string(op.slots[i]) + " missing from target support");
    int p = static_cast<int>(it - slots.begin());
    if (dims[p] != op.dims[i])
      throw StructuralError("dimension mismatch on slot " + to_string(op.slots[i]));
    pos.push_back(p);
  }
  LocalOperator out;
  out.slots = slots;
  out.dims = dims;
  out.matrix = tensor::embed(op.matrix, dims, pos);
  return out;
}

void union_support(const LocalOperator& a, const LocalOperator& b, std::vector<Slot>& slots,
                   std::vector<int>& dims) {
  slots.clear();
  dims.clear();
  size_t i = 0, j = 0;
  while (i < a.slots.size() || j < b.slots.size()) {
    if (j == b.slots.size() || (i < a.slots.size() && a.slots[i] < b.slots[j])) {
      slots.push_back(a.slots[i]);
      dims.push_back(a.dims[i++]);
    } else if (i == a.slots.size() || b.slots[j] < a.slots[i]) {
      slots.push_back(b.slots[j]);
      dims.push_back(b.dims[j++]);
    } else {
      if (a.dims[i] != b.dims[j])
        throw StructuralError("dimension mismatch on shared slot " + to_string(a.slots[i]));
      slots.push_back(a.slots[i]);
      dims.push_back(a.dims[i]);
      ++i;
      ++j;
    }
  }
}

LocalOperator multiply(const LocalOperator& a, const LocalOperator& b) {
  std::vector<Slot> s;
  std::vector<int> d;
  union_support(a, b, s, d);
  LocalOperator out;
  out.slots = s;
  out.dims = d;
  out.matrix = extend(a, s, d).matrix * extend(b, s, d).matrix;
  return out;
}

LocalOperator add(const LocalOperator& a, const LocalOperator& b, cplx beta) {
  std::vector<Slot> s;
  std::vector<int> d;
  union_support(a, b, s, d);
  LocalOperator out;
  out.slots = s;
  out.dims = d;
  out.matrix = extend(a, s, d).matrix + beta * extend(b, s, d).matrix;
  return out;
}

LocalOperator conjugate(const LocalOperator& a, const LocalOperator& g, bool forward) {
  std::vector<Slot> s;
  std::vector<int> d;
  union_support(a, g, s, d);
  LocalOperator out = extend(a, s, d);
  std::vector<int> pos;
  for (const auto& sl : g.slots)
    pos.push_back(static_cast<int>(std::lower_bound(s.begin(), s.end(), sl) - s.begin()));
  if (forward) {
    tensor::apply_left(out.matrix, d, pos, g.matrix.adjoint());
    tensor::apply_right(out.matrix, d, pos, g.matrix);
  } else {
    tensor::apply_left(out.matrix, d, pos, g.matrix);
    tensor::apply_right(out.matrix, d, pos, g.matrix.adjoint());
  }
  return out;
}

cplx hs_inner(const LocalOperator& a, const LocalOperator& b) {
  std::vector<int> keep_a, keep_b;
  for (size_t i = 0; i < a.slots.size(); ++i) {
    int p = b.position(a.slots[i]);
    if (p < 0) continue;
    if (b.dims[p] != a.dims[i])
      throw StructuralError("dimension mismatch on shared slot " + to_string(a.slots[i]));
    keep_a.push_back(static_cast<int>(i));
    keep_b.push_back(p);
  }
  Mat ra = tensor::partial_trace(a.matrix, a.dims, keep_a);
  Mat rb = tensor::partial_trace(b.matrix, b.dims, keep_b);
  return (ra.adjoint() * rb).trace();
}

long OperatorSubspace::ambient_dim() const { return tensor::total(dims); }

LocalOperator OperatorSubspace::element(int i) const {
  LocalOperator op;
  op.slots = ambient;
  op.dims = dims;
  op.matrix = basis.at(i);
  return op;
}

Mat OperatorSubspace::project(const Mat& m) const {
  long n = ambient_dim();
  Mat out = Mat::Zero(n, n);
  for (const auto& b : basis) out += (b.adjoint() * m).trace() * b;
  return out;
}

double OperatorSubspace::residual(const Mat& m) const {
  double nm = m.norm();
  if (nm == 0) return 0;
  return (m - project(m)).norm() / nm;
}

std::vector<Slot> single_slot_ambient() { return {Slot{Cell{0}, 0}}; }

OperatorSubspace orthonormalize(const std::vector<LocalOperator>& generators, double tol) {
  OperatorSubspace out;
  out.tol = tol;
  if (generators.empty()) return out;
  LocalOperator acc = generators.front();
  std::vector<Slot> s = acc.slots;
  std::vector<int> d = acc.dims;
  for (const auto& g : generators) {
    LocalOperator tmp;
    tmp.slots = s;
    tmp.dims = d;
    std::vector<Slot> s2;
    std::vector<int> d2;
    union_support(tmp, g, s2, d2);
    s = s2;
    d = d2;
  }
  std::vector<Mat> mats;
  mats.reserve(generators.size());
  for (const auto& g : generators) mats.push_back(extend(g, s, d).matrix);
  return orthonormalize(mats, s, d, tol);
}

OperatorSubspace orthonormalize(const std::vector<Mat>& generators, const std::vector<Slot>& ambient,
                                const std::vector<int>& dims, double tol) {
  OperatorSubspace out;
  out.ambient = ambient;
  out.dims = dims;
  out.tol = tol;
  if (generators.empty()) return out;
  long n = tensor::total(dims);
  long rows = n * n;
  Mat stacked(rows, static_cast<long>(generators.size()));
  for (size_t k = 0; k < generators.size(); ++k)
    stacked.col(static_cast<long>(k)) = Eigen::Map<const Vec>(generators[k].data(), rows);
  // Reduce to a square factor with the same left singular vectors.
  Mat q;
  if (stacked.rows() > stacked.cols()) {
    Eigen::HouseholderQR<Mat> qr(stacked);
    const long k = stacked.cols();
    q = qr.householderQ() * Mat::Identity(rows, k);
    stacked = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  } else if (stacked.cols() > stacked.rows()) {
    Eigen::HouseholderQR<Mat> qr(stacked.adjoint());
    stacked = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>().toDenseMatrix().adjoint();
  }
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0) return out;
  double cut = tol * sv(0);
  Mat u = q.size() ? Mat(q * svd.matrixU()) : Mat(svd.matrixU());
  for (long k = 0; k < sv.size(); ++k) {
    if (sv(k) < cut) break;
    out.basis.push_back(Eigen::Map<const Mat>(u.col(k).data(), n, n));
  }
  return out;
}

OperatorSubspace intersect(const OperatorSubspace& s1, const OperatorSubspace& s2) {
  // Work on the union ambient; only Gram data between s1 and s2 is formed.
  LocalOperator a0 = LocalOperator::identity(s1.ambient, s1.dims);
  LocalOperator b0 = LocalOperator::identity(s2.ambient, s2.dims);
  std::vector<Slot> us;
  std::vector<int> ud;
  union_support(a0, b0, us, ud);
  double c1 = static_cast<double>(tensor::total(ud)) / static_cast<double>(s1.ambient_dim());
  double c2 = static_cast<double>(tensor::total(ud)) / static_cast<double>(s2.ambient_dim());
  OperatorSubspace out;
  out.ambient = us;
  out.dims = ud;
  out.tol = std::max(s1.tol, s2.tol);
  int k1 = s1.dim(), k2 = s2.dim();
  if (k1 == 0 || k2 == 0) return out;
  Mat g12(k1, k2);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k2; ++j) g12(i, j) = hs_inner(s1.element(i), s2.element(j));
  // c^dagger (I - G12 G12^dagger / (c1 c2)) c = squared distance to span(s2).
  Mat m = Mat::Identity(k1, k1) - g12 * g12.adjoint() / (c1 * c2);
  m = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  // Gram data resolves angles only to about sqrt(machine epsilon).
  double thresh = std::max(out.tol * out.tol, 1e-13);
  double norm = std::sqrt(c1);
  std::vector<Mat> ext;
  for (int i = 0; i < k1; ++i) ext.push_back(extend(s1.element(i), us, ud).matrix);
  for (int k = 0; k < k1; ++k) {
    if (es.eigenvalues()(k) > thresh) break;
    Vec c = es.eigenvectors().col(k);
    LocalOperator acc;
    acc.slots = us;
    acc.dims = ud;
    acc.matrix = Mat::Zero(tensor::total(ud), tensor::total(ud));
    for (int i = 0; i < k1; ++i) acc.matrix += c(i) * ext[i];
    out.basis.push_back(acc.matrix / norm);
  }
  return out;
}

OperatorSubspace algebra_closure(const std::vector<LocalOperator>& generators,
                                 bool include_identity, double tol) {
  std::vector<LocalOperator> gens = generators;
  for (const auto& g : generators) gens.push_back(g.adjoint());
  if (gens.empty()) throw StructuralError("algebra_closure needs at least one generator");
  OperatorSubspace cur = orthonormalize(gens, tol);
  if (include_identity) {
    long n = cur.ambient_dim();
    std::vector<Mat> mats = cur.basis;
    mats.push_back(Mat::Identity(n, n));
    cur = orthonormalize(mats, cur.ambient, cur.dims, tol);
  }
  for (;;) {
    std::vector<Mat> mats = cur.basis;
    for (const auto& a : cur.basis)
      for (const auto& b : cur.basis) mats.push_back(a * b);
    OperatorSubspace next = orthonormalize(mats, cur.ambient, cur.dims, tol);
    if (next.dim() == cur.dim()) return next;
    cur = std::move(next);
  }
}

OperatorSubspace commutant(const OperatorSubspace& s) {
  long n = s.ambient_dim();
  long n2 = n * n;
  OperatorSubspace out;
  out.ambient = s.ambient;
  out.dims = s.dims;
  out.tol = s.tol;
  if (s.dim() == 0) {
    for (long k = 0; k < n2; ++k) {
      Mat e = Mat::Zero(n, n);
      e(k % n, k / n) = 1;
      out.basis.push_back(e);
    }
    return out;
  }
  Mat id = Mat::Identity(n, n);
  Mat stacked(n2 * s.dim(), n2);
  for (int k = 0; k < s.dim(); ++k) {
    const Mat& b = s.basis[k];
    // vec(Xb - bX) = (b^T (x) I - I (x) b) vec(X), column-major vec.
    Mat blk = Mat::Zero(n2, n2);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        blk.block(i * n, j * n, n, n) += b(j, i) * id;
        if (i == j) blk.block(i * n, j * n, n, n) -= b;
      }
    stacked.block(k * n2, 0, n2, n2) = blk;
  }
  // Same singular values and right vectors as the tall stack, far cheaper.
  if (stacked.rows() > n2) {
    Eigen::HouseholderQR<Mat> qr(stacked);
    stacked = qr.matrixQR().topRows(n2).triangularView<Eigen::Upper>();
  }
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // Unit basis elements give a commutator map of order one; floor the cut.
  double cut = sv.size() > 0 ? s.tol * std::max(1.0, sv(0)) : s.tol;
  Mat v = svd.matrixV();
  for (long k = 0; k < n2; ++k) {
    bool null = k >= sv.size() || sv(k) < cut;
    if (!null) continue;
    out.basis.push_back(Eigen::Map<const Mat>(v.col(k).data(), n, n));
  }
  return out;
}

OperatorSubspace span_product(const std::vector<OperatorSubspace>& algebras) {
  if (algebras.empty()) throw StructuralError("span_product of an empty list");
  const auto& first = algebras.front();
  for (const auto& a : algebras)
    if (a.ambient != first.ambient || a.dims != first.dims)
      throw StructuralError("span_product requires a shared ambient support");
  double tol = first.tol;
  OperatorSubspace cur = orthonormalize(first.basis, first.ambient, first.dims, tol);
  for (size_t k = 1; k < algebras.size(); ++k) {
    std::vector<Mat> mats;
    for (const auto& p : cur.basis)
      for (const auto& a : algebras[k].basis) mats.push_back(p * a);
    cur = orthonormalize(mats, first.ambient, first.dims, tol);
  }
  // Products of pairwise commuting unital *-algebras are already closed.
  bool commuting = true;
  for (size_t i = 0; i < algebras.size() && commuting; ++i)
    for (size_t j = i + 1; j < algebras.size() && commuting; ++j)
      commuting = commutation_residual(algebras[i], algebras[j]) < tol;
  if (commuting) return cur;
  for (;;) {
    std::vector<Mat> mats = cur.basis;
    for (const auto& alg : algebras)
      for (const auto& a : alg.basis)
        for (const auto& p : cur.basis) {
          mats.push_back(p * a);
          mats.push_back(a * p);
        }
    OperatorSubspace next = orthonormalize(mats, first.ambient, first.dims, tol);
    if (next.dim() == cur.dim()) return next;
    cur = std::move(next);
  }
}

namespace {

Mat frame(const OperatorSubspace& s) {
  long n2 = s.ambient_dim() * s.ambient_dim();
  Mat f(n2, s.dim());
  for (int k = 0; k < s.dim(); ++k) f.col(k) = Eigen::Map<const Vec>(s.basis[k].data(), n2);
  return f;
}

}  // namespace

double projector_distance(const OperatorSubspace& a, const OperatorSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw StructuralError("projector_distance requires equal ambient dimension");
  Mat fa = frame(a), fb = frame(b);
  Mat diff = fa * fa.adjoint() - fb * fb.adjoint();
  if (diff.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double adjoint_closure_residual(const OperatorSubspace& s) {
  double r = 0;
  for (const auto& b : s.basis) {
    Mat m = b.adjoint();
    r = std::max(r, (m - s.project(m)).norm());
  }
  return r;
}

double product_closure_residual(const OperatorSubspace& s) {
  double r = 0;
  for (const auto& a : s.basis)
    for (const auto& b : s.basis) {
      // Absolute: products of unit basis elements may vanish.
      Mat m = a * b;
      r = std::max(r, (m - s.project(m)).norm());
    }
  return r;
}

double identity_residual(const OperatorSubspace& s) {
  long n = s.ambient_dim();
  return s.residual(Mat::Identity(n, n));
}

double commutation_residual(const OperatorSubspace& a, const OperatorSubspace& b) {
  double r = 0;
  for (const auto& x : a.basis)
    for (const auto& y : b.basis) r = std::max(r, (x * y - y * x).norm());
  return r;
}

}  // namespace qlga
