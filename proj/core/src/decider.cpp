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

#include "qlga/decider.hpp"

#include <algorithm>
#include <cmath>

#include "qlga/tensor.hpp"

namespace qlga {

double RoundTrip::max() const { return std::max({structure, brick, hat}); }

Mat align_to_first(const Vec& v) {
  const long n = v.size();
  Mat a = Mat::Identity(n, n);
  a.col(0) = v;
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat g = q.adjoint();
  cplx ph = (g * v)(0);
  g.row(0) /= ph / std::abs(ph);
  return g;
}

namespace {

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Unitary whose column `q` is the unit vector x.
Mat unitary_with_column(const Vec& x, int q) {
  Mat u = align_to_first(x).adjoint();
  if (q != 0) u.col(0).swap(u.col(q));
  return u;
}

Stage cell_stage(const std::vector<int>& part_dims, int n, const Mat& m, long qin, long qout) {
  std::vector<Slot> slots;
  for (size_t i = 0; i < part_dims.size(); ++i) slots.push_back(Slot{Cell(n, 0), static_cast<int>(i)});
  Stage st;
  st.gate = LocalOperator::make(slots, part_dims, m);
  st.stride.assign(n, 1);
  st.quiescent_in = qin;
  st.quiescent_out = qout;
  st.single_cell = true;
  return st;
}

Stage sigma_stage(int n) {
  Stage st;
  st.kind = Stage::Kind::Sigma;
  st.stride.assign(n, 1);
  return st;
}

DenseProgram component_program(const ComponentScheme& sc, int n, std::vector<Stage> stages) {
  DenseProgram p;
  p.n = n;
  p.part_dims = sc.dims;
  p.cell_quiescent_digits = sc.quiescent;
  p.scheme = sc;
  p.stages = std::move(stages);
  return p;
}

bool is_identity(const Mat& u) {
  return u.size() == 0 || (u - Mat::Identity(u.rows(), u.cols())).norm() < 1e-14;
}

// The program whose ring evolution the decomposition reproduces:
// R itself, or U~^dagger R U~ after a nontrivial quiescent fix.
DenseProgram target_program(const QcaDescriptor& d, const Mat& u) {
  DenseProgram p = compile(d);
  if (is_identity(u)) return p;
  p.stages.insert(p.stages.begin(), cell_stage(p.part_dims, d.n, u, -1, -1));
  p.stages.push_back(cell_stage(p.part_dims, d.n, u.adjoint(), -1, -1));
  return p;
}

SparseState relayout(const SparseState& s, const std::vector<int>& from, const std::vector<int>& to) {
  if (from == to) return s;
  SparseState out;
  const size_t kf = from.size();
  for (const auto& [dg, amp] : s) {
    Digits nd;
    for (size_t c = 0; c * kf < dg.size(); ++c) {
      std::vector<int> blk(dg.begin() + c * kf, dg.begin() + (c + 1) * kf);
      auto t = tensor::digits(tensor::index(blk, from), to);
      nd.insert(nd.end(), t.begin(), t.end());
    }
    out[nd] += amp;
  }
  return out;
}

cplx ring_quiescent_eigenvalue(const RingEngine& e) {
  SparseState q{{e.quiescent(), 1.0}};
  return sparse_inner(q, e.apply(q));
}

double sparse_distance(const SparseState& a, const SparseState& b) {
  SparseState d = a;
  for (const auto& [k, v] : b) d[k] -= v;
  return sparse_norm(d);
}

SparseState scaled(SparseState s, cplx f) {
  for (auto& kv : s) kv.second *= f;
  return s;
}

}  // namespace

QuiescentFix fix_quiescent(const TensorFactorization& f, int q0_index, double tol) {
  const Vec v = f.S.col(q0_index);
  const auto& dims = f.factor_dims;
  QuiescentFix out;
  Vec cur = v;
  for (size_t p = 0; p < dims.size(); ++p) {
    const long dp = dims[p];
    const long rest = cur.size() / dp;
    if (p + 1 == dims.size()) {
      out.factors.push_back(cur.normalized());
      break;
    }
    Mat m(dp, rest);
    for (long i = 0; i < dp; ++i)
      for (long j = 0; j < rest; ++j) m(i, j) = cur(i * rest + j);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    out.schmidt_tails.push_back(sv.size() > 1 ? sv(1) : 0.0);
    out.factors.push_back(svd.matrixU().col(0));
    cur = sv(0) * svd.matrixV().col(0).conjugate();
  }
  Vec vhat = Vec::Ones(1);
  for (const auto& a : out.factors) vhat = kron(vhat, a);
  cplx ov = vhat.dot(v);
  if (std::abs(ov) > 0) {
    out.factors[0] *= ov / std::abs(ov);
    vhat *= ov / std::abs(ov);
  }
  out.simple_tensor = vhat;
  out.trivial = true;
  for (double t : out.schmidt_tails) out.trivial = out.trivial && t <= tol;
  const long n = v.size();
  if (out.trivial) {
    out.u = Mat::Identity(n, n);
  } else {
    out.u = unitary_with_column(f.S.adjoint() * vhat, q0_index);
  }
  return out;
}

Mat extract_collision(const QcaDescriptor& d, const TensorFactorization& f,
                      const std::vector<int>& quiescent, const std::vector<int>& lengths,
                      const Mat& u, double tol) {
  DenseProgram tp = target_program(d, u);
  RingWindow w{d.n, lengths, d.cell};
  w.check(d.neighborhood);
  ComponentScheme sc{f.offsets, f.factor_dims, quiescent};
  DenseProgram cp = component_program(sc, d.n, {});
  RingEngine er(tp, w), ec(cp, w);
  const cplx lam = ring_quiescent_eigenvalue(er);
  if (std::abs(std::abs(lam) - 1) > 1e3 * tol)
    throw NumericalError("quiescent configuration is not an eigenvector of the ring evolution");
  const long qh = sc.quiescent_cell_index();
  const long q0 = d.cell.quiescent_index;
  const int dw = d.cell.dim;
  const int k = static_cast<int>(sc.dims.size());
  const Mat sd = f.S.adjoint();
  const Digits base = ec.quiescent();
  Mat out = Mat::Zero(dw, dw);
  for (int b = 0; b < dw; ++b) {
    Digits s = base;
    auto bd = tensor::digits(b, sc.dims);
    std::copy(bd.begin(), bd.end(), s.begin());
    SparseState st{{s, 1.0}};
    st = ec.apply_sigma(st, true);
    st = ec.apply_cellwise(st, sd, qh, q0);
    st = relayout(st, sc.dims, tp.part_dims);
    st = er.apply(st);
    st = relayout(st, tp.part_dims, sc.dims);
    st = ec.apply_cellwise(st, f.S, q0, qh);
    double leak = 0;
    for (const auto& [dg, amp] : st) {
      bool background = std::equal(dg.begin() + k, dg.end(), base.begin() + k);
      if (!background) {
        leak += std::norm(amp);
        continue;
      }
      std::vector<int> c0(dg.begin(), dg.begin() + k);
      out(tensor::index(c0, sc.dims), b) = amp / lam;
    }
    if (std::sqrt(leak) > 100 * tol)
      throw NumericalError("not cell-wise: collision column " + std::to_string(b) +
                           " leaks outside cell 0");
  }
  return out;
}

RoundTrip roundtrip_residual(const QcaDescriptor& d, const ClassificationResult& r,
                             const std::vector<int>& lengths, long dense_cap) {
  const Mat& u = r.quiescent_fix.u;
  DenseProgram tp = target_program(d, u);
  RingWindow w{d.n, lengths, d.cell};
  w.check(d.neighborhood);
  const ComponentScheme& sc = r.scheme;
  const Mat& S = r.factorization.S;
  const Mat& F = r.collision;
  const long q0 = d.cell.quiescent_index;
  const long qh = sc.quiescent_cell_index();
  const int n = d.n;
  DenseProgram structure = component_program(
      sc, n,
      {cell_stage(sc.dims, n, S, q0, qh), sigma_stage(n), cell_stage(sc.dims, n, F, qh, qh),
       cell_stage(sc.dims, n, S.adjoint(), qh, q0)});
  DenseProgram brick = component_program(
      sc, n,
      {cell_stage(sc.dims, n, S, q0, qh), sigma_stage(n), cell_stage(sc.dims, n, S.adjoint() * F, qh, q0)});
  DenseProgram hat = component_program(sc, n, {sigma_stage(n), cell_stage(sc.dims, n, F, qh, qh)});

  RoundTrip out;
  out.window = lengths;
  const int dw = d.cell.dim;
  double size = std::pow(static_cast<double>(dw), static_cast<double>(w.num_cells()));
  if (size <= static_cast<double>(dense_cap)) {
    Mat R = ring_unitary(tp, w);
    std::vector<int> cdims(w.num_cells(), dw);
    long qidx = tensor::index(std::vector<int>(w.num_cells(), static_cast<int>(q0)), cdims);
    R /= R(qidx, qidx);
    const double nr = R.norm();
    out.structure = (R - ring_unitary(structure, w)).norm() / nr;
    out.brick = (R - ring_unitary(brick, w)).norm() / nr;
    Mat rh = R;
    for (long c = 0; c < w.num_cells(); ++c) {
      std::vector<int> pos{static_cast<int>(c)};
      tensor::apply_left(rh, cdims, pos, S);
      tensor::apply_right(rh, cdims, pos, S.adjoint());
    }
    out.hat = (rh - ring_unitary(hat, w)).norm() / nr;
    return out;
  }
  // Sampled: one- and two-cell excitations over the quiescent background.
  out.sampled = true;
  RingEngine er(tp, w), es(structure, w), eb(brick, w), eh(hat, w);
  const cplx lam = ring_quiescent_eigenvalue(er);
  const std::vector<int> cell_layout{dw};
  // Excitations as (cell, value) lists over a quiescent background.
  std::vector<std::vector<std::pair<long, int>>> samples;
  const long cells = w.num_cells();
  Cell e1(n, 0);
  e1[0] = 1;
  const long c1 = w.cell_index(w.reduce(e1));
  // A pair of excitations touches up to 2k cells after one step; when that
  // state would be large only a couple of pairs are sampled.
  const double spread =
      std::pow(static_cast<double>(dw), static_cast<double>(std::min<long>(cells, 2 * sc.dims.size())));
  const bool all_pairs = static_cast<long>(dw) * dw <= 256 && spread <= 4096;
  for (int a = 0; a < dw; ++a) {
    samples.push_back({{0, a}});
    if (all_pairs)
      for (int b = 0; b < dw; ++b) samples.push_back({{0, a}, {c1, b}});
  }
  if (!all_pairs && dw > 1) {
    samples.push_back({{0, 1}, {c1, dw - 1}});
    samples.push_back({{0, dw - 1}, {c1, 1}});
  }
  auto place = [&](const std::vector<std::pair<long, int>>& ex, long background) {
    Digits s(cells, static_cast<int>(background));
    for (auto [c, v] : ex) s[c] = v;
    return SparseState{{s, 1.0}};
  };
  for (const auto& ex : samples) {
    SparseState phi = place(ex, q0);
    SparseState rp = scaled(er.apply(relayout(phi, cell_layout, tp.part_dims)), 1.0 / lam);
    rp = relayout(rp, tp.part_dims, sc.dims);
    SparseState pc = relayout(phi, cell_layout, sc.dims);
    out.structure = std::max(out.structure, sparse_distance(rp, es.apply(pc)));
    out.brick = std::max(out.brick, sparse_distance(rp, eb.apply(pc)));
    SparseState psi = relayout(place(ex, qh), cell_layout, sc.dims);
    SparseState x = es.apply_cellwise(psi, S.adjoint(), qh, q0);
    x = relayout(x, sc.dims, tp.part_dims);
    x = scaled(er.apply(x), 1.0 / lam);
    x = relayout(x, tp.part_dims, sc.dims);
    x = es.apply_cellwise(x, S, q0, qh);
    out.hat = std::max(out.hat, sparse_distance(x, eh.apply(psi)));
  }
  return out;
}

ClassificationResult decide(const QcaDescriptor& d, const DecideOptions& opts) {
  ClassificationResult r;
  r.report = criterion_report(d, opts.backend, opts.tol);
  if (!r.report.verdict) return r;
  const int dw = d.cell.dim;
  std::vector<OperatorSubspace> algebras = r.report.algebras;
  if (algebras.empty()) {
    if (dw > 64) throw NumericalError("cell too large to factorize densely");
    algebras = dense_d_algebras(d, opts.tol).algebras;
  }
  TensorFactorization f =
      tensor_factorize(r.report.offsets, algebras, dw, opts.tol.residual, opts.seed);
  QuiescentFix fix = fix_quiescent(f, d.cell.quiescent_index, opts.tol.residual);
  if (!fix.trivial) {
    f.S = f.S * fix.u;
    for (auto& a : algebras)
      for (auto& b : a.basis) b = fix.u.adjoint() * b * fix.u;
  }
  // Per-factor gauge sending each quiescent factor to basis vector 0.
  Mat g = Mat::Identity(1, 1);
  for (const auto& a : fix.factors) g = kron(g, align_to_first(a));
  f.S = g * f.S;
  FactorizationCheck chk = verify_factorization(f, algebras);
  f.residuals = chk.residuals;
  f.unitarity_residual = chk.unitarity_residual;

  r.scheme.offsets = f.offsets;
  r.scheme.dims = f.factor_dims;
  r.scheme.quiescent.assign(f.factor_dims.size(), 0);
  r.factorization = f;
  r.quiescent_fix = fix;

  std::vector<int> L = opts.window.empty() ? default_ring_lengths(d.neighborhood) : opts.window;
  const Mat u = fix.trivial ? Mat() : fix.u;
  r.collision = extract_collision(d, f, r.scheme.quiescent, L, u, opts.tol.residual);
  const Mat& F = r.collision;
  Vec e0 = Vec::Zero(dw);
  e0(0) = 1;
  r.collision_unitarity = (F.adjoint() * F - Mat::Identity(dw, dw)).norm();
  r.collision_quiescent = (F * e0 - e0).norm();
  r.qlga = true;
  r.roundtrip = roundtrip_residual(d, r, L, opts.dense_cap);
  r.roundtrip_residual = r.roundtrip.structure;
  if (opts.verify) {
    std::vector<int> L1 = L;
    for (auto& x : L1) ++x;
    Mat F1 = extract_collision(d, f, r.scheme.quiescent, L1, u, opts.tol.residual);
    r.extraction_consistency = (F1 - F).norm();
    if (r.extraction_consistency > 100 * opts.tol.residual)
      throw NumericalError("not cell-wise: collision differs between ring sizes");
    r.roundtrip_next = roundtrip_residual(d, r, L1, opts.dense_cap);
  }
  return r;
}

ClassificationResult from_qlga_descriptor(const QcaDescriptor& ref) {
  if (!ref.is_qlga()) throw StructuralError("reference must be a qlga-form descriptor");
  const QlgaEvolution& g = ref.qlga();
  ClassificationResult r;
  r.qlga = true;
  r.scheme = g.scheme;
  r.collision = g.collision;
  r.factorization.offsets = g.scheme.offsets;
  r.factorization.factor_dims = g.scheme.dims;
  r.factorization.S = g.isomorphism;
  r.quiescent_fix.u = Mat::Identity(ref.cell.dim, ref.cell.dim);
  return r;
}

QcaDescriptor to_qlga_descriptor(const QcaDescriptor& d, const ClassificationResult& r) {
  if (!r.qlga) throw StructuralError("no decomposition: the automaton is not a QLGA");
  nlohmann::json doc;
  doc["dimension"] = d.n;
  doc["cell"] = {{"dim", d.cell.dim}, {"quiescent", d.cell.quiescent_index}};
  if (!d.cell.labels.empty()) doc["cell"]["labels"] = d.cell.labels;
  nlohmann::json nb = nlohmann::json::array(), factors = nlohmann::json::array();
  for (size_t i = 0; i < r.scheme.offsets.size(); ++i) {
    nb.push_back(r.scheme.offsets[i]);
    factors.push_back({{"offset", r.scheme.offsets[i]},
                       {"dim", r.scheme.dims[i]},
                       {"quiescent", r.scheme.quiescent[i]}});
  }
  doc["neighborhood"] = nb;
  doc["evolution"] = {{"type", "qlga"},
                      {"factors", factors},
                      {"collision", matrix_to_json(r.collision)},
                      {"isomorphism", matrix_to_json(r.factorization.S)}};
  return parse_descriptor(doc, 1e-6);
}

}  // namespace qlga
