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

#include "qlga/program.hpp"

#include <set>

#include "qlga/tensor.hpp"

namespace qlga {

int DenseProgram::cell_dim() const { return static_cast<int>(tensor::total(part_dims)); }

size_t DenseProgram::leading_cellwise() const {
  size_t k = 0;
  while (k < stages.size() && stages[k].kind == Stage::Kind::Gates && stages[k].single_cell) ++k;
  return k;
}

namespace {

bool on_lattice(const Cell& x, const std::vector<int>& stride) {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] % stride[i] != 0) return false;
  return true;
}

LocalOperator sigma_relabel(const LocalOperator& a, const ComponentScheme& sc, bool forward) {
  std::vector<Slot> s = a.slots;
  for (auto& sl : s) {
    const Cell& z = sc.offsets.at(sl.part);
    sl.cell = forward ? sl.cell + z : sl.cell - z;
  }
  return LocalOperator::make(s, a.dims, a.matrix);
}

}  // namespace

LocalOperator conjugate_stages(const LocalOperator& a, const DenseProgram& p, bool forward,
                               size_t first, double shrink_tol) {
  LocalOperator cur = shrink(a, shrink_tol);
  auto run = [&](const Stage& st) {
    if (st.kind == Stage::Kind::Sigma) {
      cur = sigma_relabel(cur, p.scheme, forward);
      return;
    }
    std::set<Cell> sites;
    for (const auto& s : cur.slots)
      for (const auto& t : st.gate.slots)
        if (s.part == t.part) {
          Cell x = s.cell - t.cell;
          if (on_lattice(x, st.stride)) sites.insert(x);
        }
    for (const auto& x : sites) {
      cur = conjugate(cur, translate(st.gate, x), forward);
      cur = shrink(cur, shrink_tol);
    }
  };
  if (forward) {
    for (size_t i = p.stages.size(); i > first; --i) run(p.stages[i - 1]);
  } else {
    for (size_t i = first; i < p.stages.size(); ++i) run(p.stages[i]);
  }
  return cur;
}

Mat cellwise_matrix(const Stage& s, const DenseProgram& p) {
  if (!s.single_cell) throw StructuralError("stage is not cell-wise");
  return merge_parts(s.gate, p.part_dims).matrix;
}

RingEngine::RingEngine(const DenseProgram& p, const RingWindow& window)
    : p_(p), w_(window), part_dims_(p.part_dims) {
  cells_ = w_.num_cells();
  for (long c = 0; c < cells_; ++c)
    for (int d : part_dims_) dims_.push_back(d);
}

namespace {

std::vector<std::vector<int>> sites_on_ring(const Stage& st, const RingWindow& w, int k) {
  for (int i = 0; i < w.n; ++i)
    if (w.lengths[i] % st.stride[i] != 0)
      throw StructuralError("ring length must be a multiple of the layer stride");
  std::vector<std::vector<int>> out;
  for (const auto& x : w.cells()) {
    if (!on_lattice(x, st.stride)) continue;
    std::vector<int> pos;
    for (const auto& t : st.gate.slots)
      pos.push_back(static_cast<int>(w.cell_index(w.reduce(t.cell + x)) * k + t.part));
    std::set<int> uniq(pos.begin(), pos.end());
    if (uniq.size() != pos.size())
      throw StructuralError("gate support wraps onto itself; ring too small");
    out.push_back(std::move(pos));
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> RingEngine::site_positions(const Stage& st) const {
  return sites_on_ring(st, w_, parts());
}

Digits RingEngine::quiescent() const {
  Digits d;
  for (long c = 0; c < cells_; ++c)
    for (int q : p_.cell_quiescent_digits) d.push_back(q);
  return d;
}

namespace {

constexpr double kPrune = 1e-15;

void prune(SparseState& s) {
  for (auto it = s.begin(); it != s.end();) {
    if (std::abs(it->second) <= kPrune)
      it = s.erase(it);
    else
      ++it;
  }
}

SparseState apply_local(const SparseState& s, const std::vector<int>& dims,
                        const std::vector<int>& pos, const Mat& g, long q_in, long q_out) {
  std::vector<int> ld;
  for (int p : pos) ld.push_back(dims[p]);
  auto qout = tensor::digits(q_out, ld);
  SparseState out;
  for (const auto& [dg, amp] : s) {
    long loc = 0;
    for (int p : pos) loc = loc * dims[p] + dg[p];
    Digits nd = dg;
    if (loc == q_in) {
      for (size_t i = 0; i < pos.size(); ++i) nd[pos[i]] = qout[i];
      out[nd] += amp;
      continue;
    }
    for (long j = 0; j < g.rows(); ++j) {
      cplx gj = g(j, loc);
      if (gj == cplx(0)) continue;
      auto jd = tensor::digits(j, ld);
      for (size_t i = 0; i < pos.size(); ++i) nd[pos[i]] = jd[i];
      out[nd] += gj * amp;
    }
  }
  prune(out);
  return out;
}

}  // namespace

SparseState RingEngine::apply_stage(const SparseState& s, const Stage& st, bool inverse) const {
  if (st.kind == Stage::Kind::Sigma) return apply_sigma(s, inverse);
  Mat g = inverse ? Mat(st.gate.matrix.adjoint()) : st.gate.matrix;
  long qi = inverse ? st.quiescent_out : st.quiescent_in;
  long qo = inverse ? st.quiescent_in : st.quiescent_out;
  SparseState cur = s;
  for (const auto& pos : site_positions(st)) cur = apply_local(cur, dims_, pos, g, qi, qo);
  return cur;
}

SparseState RingEngine::apply_cellwise(const SparseState& s, const Mat& m, long q_in,
                                       long q_out) const {
  const int k = parts();
  SparseState cur = s;
  for (long c = 0; c < cells_; ++c) {
    std::vector<int> pos;
    for (int i = 0; i < k; ++i) pos.push_back(static_cast<int>(c * k + i));
    cur = apply_local(cur, dims_, pos, m, q_in, q_out);
  }
  return cur;
}

SparseState RingEngine::apply_sigma(const SparseState& s, bool inverse) const {
  auto perm = sigma_permutation(w_, p_.scheme);
  SparseState out;
  for (const auto& [dg, amp] : s) {
    Digits nd(dg.size());
    for (size_t d = 0; d < perm.size(); ++d) {
      if (inverse)
        nd[perm[d]] = dg[d];
      else
        nd[d] = dg[perm[d]];
    }
    out[nd] += amp;
  }
  return out;
}

SparseState RingEngine::apply(const SparseState& s, bool inverse) const {
  SparseState cur = s;
  if (!inverse) {
    for (const auto& st : p_.stages) cur = apply_stage(cur, st, false);
  } else {
    for (auto it = p_.stages.rbegin(); it != p_.stages.rend(); ++it) cur = apply_stage(cur, *it, true);
  }
  return cur;
}

Mat ring_unitary(const DenseProgram& p, const RingWindow& window) {
  RingEngine eng(p, window);
  const auto& dims = eng.slot_dims();
  const long n = tensor::total(dims);
  const int k = static_cast<int>(p.part_dims.size());
  // Each stage is a list of local gates or a permutation; columns are evolved
  // one at a time so the working vector stays in cache.
  struct Step {
    std::vector<tensor::Split> sites;
    const Mat* gate = nullptr;
    std::vector<long> dest;
  };
  std::vector<Step> steps;
  for (const auto& st : p.stages) {
    Step s;
    if (st.kind == Stage::Kind::Gates) {
      const Mat& g = st.gate.matrix;
      if ((g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() == 0) continue;
      s.gate = &g;
      for (const auto& pos : sites_on_ring(st, window, k)) s.sites.push_back(tensor::split(dims, pos));
    } else {
      auto sp = sigma_permutation(window, p.scheme);
      s.dest.resize(n);
      for (long old = 0; old < n; ++old) {
        auto dg = tensor::digits(old, dims);
        std::vector<int> nd(dg.size());
        for (size_t d = 0; d < sp.size(); ++d) nd[d] = dg[sp[d]];
        s.dest[old] = tensor::index(nd, dims);
      }
    }
    steps.push_back(std::move(s));
  }
  Mat m(n, n);
  std::vector<cplx> v(n), w(n), buf;
  for (long j = 0; j < n; ++j) {
    std::fill(v.begin(), v.end(), cplx(0));
    v[j] = 1;
    for (const auto& s : steps) {
      if (!s.gate) {
        for (long i = 0; i < n; ++i) w[s.dest[i]] = v[i];
        v.swap(w);
        continue;
      }
      const long kk = s.gate->rows();
      const cplx* gd = s.gate->data();
      buf.resize(kk);
      for (const auto& sp : s.sites)
        for (long t : sp.rest) {
          bool zero = true;
          for (long c = 0; c < kk; ++c) {
            buf[c] = v[sp.sub[c] + t];
            zero = zero && buf[c] == cplx(0);
          }
          if (zero) continue;
          for (long r = 0; r < kk; ++r) {
            double re = 0, im = 0;
            for (long c = 0; c < kk; ++c) {
              const cplx& x = gd[r + c * kk];
              re += x.real() * buf[c].real() - x.imag() * buf[c].imag();
              im += x.real() * buf[c].imag() + x.imag() * buf[c].real();
            }
            v[sp.sub[r] + t] = cplx(re, im);
          }
        }
    }
    std::copy(v.begin(), v.end(), m.col(j).data());
  }
  return m;
}

double sparse_norm(const SparseState& s) {
  double acc = 0;
  for (const auto& kv : s) acc += std::norm(kv.second);
  return std::sqrt(acc);
}

cplx sparse_inner(const SparseState& a, const SparseState& b) {
  cplx acc = 0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end()) acc += std::conj(v) * it->second;
  }
  return acc;
}

}  // namespace qlga
