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

#include "qlga/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "qlga/tensor.hpp"

namespace qlga {

Mat factor_expectation(const Mat& m, const std::vector<int>& dims, int p) {
  double rest = static_cast<double>(tensor::total(dims)) / dims[p];
  Mat red = tensor::partial_trace(m, dims, {p}) / rest;
  return tensor::embed(red, dims, {p});
}

double FactorizationCheck::max_residual() const {
  double r = unitarity_residual;
  for (double x : residuals) r = std::max(r, x);
  return r;
}

namespace {

std::vector<Mat> hermitian_parts(const OperatorSubspace& s) {
  const cplx i(0, 1);
  std::vector<Mat> out;
  for (const auto& b : s.basis) {
    out.push_back((b + b.adjoint()) / 2.0);
    out.push_back((b - b.adjoint()) / (2.0 * i));
  }
  return out;
}

Mat generic_element(const std::vector<Mat>& herm, long n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat m = Mat::Zero(n, n);
  for (const auto& h : herm) m += nd(rng) * h;
  return (m + m.adjoint()) / 2.0;
}

struct Spectrum {
  Mat vectors;
  std::vector<std::vector<long>> clusters;
};

// Eigenvalue clusters (gap <= `gap`) when all clusters have equal size.
std::optional<Spectrum> uniform_clusters(const Mat& h, double gap) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Spectrum s;
  s.vectors = es.eigenvectors();
  const auto& ev = es.eigenvalues();
  for (long k = 0; k < ev.size(); ++k) {
    if (k == 0 || ev(k) - ev(k - 1) > gap)
      s.clusters.push_back({k});
    else
      s.clusters.back().push_back(k);
  }
  for (const auto& c : s.clusters)
    if (c.size() != s.clusters[0].size()) return std::nullopt;
  return s;
}

Mat cluster_projector(const Spectrum& s, size_t c) {
  const long n = s.vectors.rows();
  Mat p = Mat::Zero(n, n);
  for (long k : s.clusters[c]) p += s.vectors.col(k) * s.vectors.col(k).adjoint();
  return p;
}

// Orthonormal basis of span{w, gens...}, starting from w.
std::vector<Vec> orbit_basis(const Vec& w, const std::vector<Mat>& basis) {
  std::vector<Vec> out{w};
  for (const auto& b : basis) {
    Vec v = b * w;
    double scale = v.norm();
    if (scale == 0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : out) v -= u * u.dot(v);
    if (v.norm() > 1e-8 * std::max(1.0, scale)) out.push_back(v.normalized());
  }
  return out;
}

// Element a of span(basis) with a w = target (least squares).
Mat mapping_element(const std::vector<Mat>& basis, const Vec& w, const Vec& target) {
  const long n = w.size();
  Mat cols(n, static_cast<long>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) cols.col(k) = basis[k] * w;
  Vec x = cols.completeOrthogonalDecomposition().solve(target);
  Mat a = Mat::Zero(n, n);
  for (size_t k = 0; k < basis.size(); ++k) a += x(k) * basis[k];
  return a;
}

}  // namespace

IsotypicSplit single_isotypic_split(const OperatorSubspace& t, double tol, uint64_t seed) {
  const long n = t.ambient_dim();
  if (t.dim() == 0) throw StructuralError("single_isotypic_split: empty algebra");
  OperatorSubspace comm = commutant(t);
  OperatorSubspace center = intersect(t, comm);
  if (center.dim() > 1)
    throw StructuralError("not single-isotypic: center has dimension " +
                          std::to_string(center.dim()));
  std::mt19937_64 rng(seed);
  const auto ht = hermitian_parts(t);
  const auto hc = hermitian_parts(comm);
  const double gap = 10 * tol;
  for (int attempt = 1; attempt <= 32; ++attempt) {
    auto st = uniform_clusters(generic_element(ht, n, rng), gap);
    auto sc = uniform_clusters(generic_element(hc, n, rng), gap);
    if (!st || !sc) continue;
    const int du = static_cast<int>(st->clusters[0].size());
    const int dy = static_cast<int>(st->clusters.size());
    if (static_cast<int>(sc->clusters.size()) != du || static_cast<int>(sc->clusters[0].size()) != dy)
      continue;
    if (t.dim() != dy * dy || comm.dim() != du * du) continue;
    // Spectral projections lie in the algebras; re-project against drift.
    Mat p1 = t.project(cluster_projector(*st, 0));
    Mat q1 = comm.project(cluster_projector(*sc, 0));
    Eigen::JacobiSVD<Mat> svd(p1 * q1, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv(0) < 0.5 || (sv.size() > 1 && sv(1) > 1e-6)) continue;
    Vec w = svd.matrixU().col(0);

    auto ybasis = orbit_basis(w, t.basis);
    auto ubasis = orbit_basis(w, comm.basis);
    if (static_cast<int>(ybasis.size()) != dy || static_cast<int>(ubasis.size()) != du) continue;

    std::vector<Mat> a, b;
    for (const auto& y : ybasis) a.push_back(mapping_element(t.basis, w, y));
    for (const auto& u : ubasis) b.push_back(mapping_element(comm.basis, w, u));
    IsotypicSplit out;
    out.dim_u = du;
    out.dim_y = dy;
    out.attempts = attempt;
    out.multiplicity_basis = ubasis;
    out.irreducible_basis = ybasis;
    out.change_of_basis.resize(n, n);
    for (int al = 0; al < du; ++al)
      for (int be = 0; be < dy; ++be) {
        Vec v = b[al] * (a[be] * w);
        out.change_of_basis.row(al * dy + be) = v.adjoint();
      }
    const Mat& c = out.change_of_basis;
    out.unitarity_residual = (c.adjoint() * c - Mat::Identity(n, n)).norm();
    std::vector<int> dims{du, dy};
    for (const auto& x : t.basis) {
      Mat m = c * x * c.adjoint();
      out.algebra_residual = std::max(out.algebra_residual, (m - factor_expectation(m, dims, 1)).norm());
    }
    for (const auto& x : comm.basis) {
      Mat m = c * x * c.adjoint();
      out.commutant_residual =
          std::max(out.commutant_residual, (m - factor_expectation(m, dims, 0)).norm());
    }
    double worst = std::max({out.unitarity_residual, out.algebra_residual, out.commutant_residual});
    if (worst > 100 * tol) continue;
    return out;
  }
  throw NumericalError("single_isotypic_split: spectral degeneracy persisted after 32 draws");
}

namespace {

struct Partial {
  std::vector<int> dims;
  Mat s;
};

Partial factor_recursive(const std::vector<OperatorSubspace>& algs, long n, double tol,
                         uint64_t seed) {
  const size_t m = algs.size();
  if (m == 0) {
    if (n != 1) throw StructuralError("no algebras left for a nontrivial space");
    return {{}, Mat::Identity(1, 1)};
  }
  if (m == 1) {
    if (algs[0].dim() != n * n)
      throw StructuralError("last algebra is not the full matrix algebra");
    return {{static_cast<int>(n)}, Mat::Identity(n, n)};
  }
  std::vector<OperatorSubspace> head(algs.begin(), algs.end() - 1);
  if (algs.back().dim() == 1) {
    Partial p = factor_recursive(head, n, tol, seed);
    p.dims.push_back(1);
    return p;
  }
  IsotypicSplit sp = single_isotypic_split(algs.back(), tol, seed);
  const Mat& c = sp.change_of_basis;
  std::vector<int> dims{sp.dim_u, sp.dim_y};
  std::vector<OperatorSubspace> restricted;
  for (const auto& a : head) {
    std::vector<Mat> mats;
    for (const auto& b : a.basis)
      mats.push_back(tensor::partial_trace(c * b * c.adjoint(), dims, {0}) /
                     static_cast<double>(sp.dim_y));
    restricted.push_back(orthonormalize(mats, a.ambient, {sp.dim_u}, a.tol));
  }
  Partial p = factor_recursive(restricted, sp.dim_u, tol, seed);
  p.s = tensor::embed(p.s, dims, {0}) * c;
  p.dims.push_back(sp.dim_y);
  return p;
}

}  // namespace

TensorFactorization tensor_factorize(const std::vector<Cell>& offsets,
                                     const std::vector<OperatorSubspace>& algebras, int w_dim,
                                     double tol, uint64_t seed) {
  if (offsets.size() != algebras.size())
    throw StructuralError("tensor_factorize: offsets and algebras differ in length");
  const double lim = 100 * tol;
  for (size_t i = 0; i < algebras.size(); ++i) {
    const auto& a = algebras[i];
    if (a.ambient_dim() != w_dim)
      throw StructuralError("algebra for offset " + to_string(offsets[i]) + " has wrong ambient");
    if (identity_residual(a) > lim)
      throw StructuralError("algebra for offset " + to_string(offsets[i]) + " lacks the identity");
    if (adjoint_closure_residual(a) > lim)
      throw StructuralError("algebra for offset " + to_string(offsets[i]) +
                            " is not self-adjoint");
    for (size_t j = i + 1; j < algebras.size(); ++j)
      if (commutation_residual(a, algebras[j]) > lim)
        throw StructuralError("algebras for offsets " + to_string(offsets[i]) + " and " +
                              to_string(offsets[j]) + " do not commute");
  }
  if (span_product(algebras).dim() != static_cast<long>(w_dim) * w_dim)
    throw StructuralError("algebras do not span the full matrix algebra");
  Partial p = factor_recursive(algebras, w_dim, tol, seed);
  TensorFactorization f;
  f.offsets = offsets;
  f.factor_dims = p.dims;
  f.S = p.s;
  FactorizationCheck chk = verify_factorization(f, algebras);
  f.residuals = chk.residuals;
  f.unitarity_residual = chk.unitarity_residual;
  return f;
}

FactorizationCheck verify_factorization(const TensorFactorization& f,
                                        const std::vector<OperatorSubspace>& algebras) {
  FactorizationCheck out;
  const long n = f.S.rows();
  out.unitarity_residual = (f.S.adjoint() * f.S - Mat::Identity(n, n)).norm();
  for (size_t p = 0; p < algebras.size(); ++p) {
    double r = 0;
    for (const auto& b : algebras[p].basis) {
      Mat m = f.S * b * f.S.adjoint();
      r = std::max(r, (m - factor_expectation(m, f.factor_dims, static_cast<int>(p))).norm() /
                          std::max(1e-300, b.norm()));
    }
    out.residuals.push_back(r);
  }
  return out;
}

}  // namespace qlga
