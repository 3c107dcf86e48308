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

#include "qlga/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace qlga::tensor {

long total(const std::vector<int>& dims) {
  long n = 1;
  for (int d : dims) n *= d;
  return n;
}

namespace {

std::vector<long> strides(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

std::vector<long> offsets(const std::vector<int>& dims, const std::vector<long>& st,
                          const std::vector<int>& pos) {
  std::vector<long> out{0};
  for (int p : pos) {
    std::vector<long> next;
    next.reserve(out.size() * dims[p]);
    for (long o : out)
      for (int k = 0; k < dims[p]; ++k) next.push_back(o + k * st[p]);
    out.swap(next);
  }
  return out;
}

}  // namespace

Split split(const std::vector<int>& dims, const std::vector<int>& positions) {
  auto st = strides(dims);
  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (std::find(positions.begin(), positions.end(), i) == positions.end()) rest.push_back(i);
  return {offsets(dims, st, positions), offsets(dims, st, rest)};
}

std::vector<int> digits(long index, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    d[i] = static_cast<int>(index % dims[i]);
    index /= dims[i];
  }
  return d;
}

long index(const std::vector<int>& dg, const std::vector<int>& dims) {
  long r = 0;
  for (size_t i = 0; i < dims.size(); ++i) r = r * dims[i] + dg[i];
  return r;
}

namespace {

// map[old] = new index after factor permutation.
std::vector<long> permutation_map(const std::vector<int>& dims, const std::vector<int>& perm) {
  std::vector<int> ndims(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) ndims[i] = dims[perm[i]];
  auto nst = strides(ndims);
  // new factor i sits where old factor perm[i] was; old factor j has new stride.
  std::vector<long> old_to_new_stride(dims.size());
  for (size_t i = 0; i < perm.size(); ++i) old_to_new_stride[perm[i]] = nst[i];
  long n = total(dims);
  std::vector<long> map(n);
  std::vector<int> dg(dims.size(), 0);
  for (long k = 0; k < n; ++k) {
    long r = 0;
    for (size_t j = 0; j < dims.size(); ++j) r += dg[j] * old_to_new_stride[j];
    map[k] = r;
    for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
      if (++dg[j] < dims[j]) break;
      dg[j] = 0;
    }
  }
  return map;
}

}  // namespace

Mat permute(const Mat& m, const std::vector<int>& dims, const std::vector<int>& perm) {
  auto map = permutation_map(dims, perm);
  Mat out(m.rows(), m.cols());
  for (long c = 0; c < m.cols(); ++c)
    for (long r = 0; r < m.rows(); ++r) out(map[r], map[c]) = m(r, c);
  return out;
}

Vec permute(const Vec& v, const std::vector<int>& dims, const std::vector<int>& perm) {
  auto map = permutation_map(dims, perm);
  Vec out(v.size());
  for (long r = 0; r < v.size(); ++r) out(map[r]) = v(r);
  return out;
}

Mat embed(const Mat& m, const std::vector<int>& dims, const std::vector<int>& positions) {
  auto sp = split(dims, positions);
  long n = total(dims);
  Mat out = Mat::Zero(n, n);
  for (long t : sp.rest)
    for (size_t c = 0; c < sp.sub.size(); ++c)
      for (size_t r = 0; r < sp.sub.size(); ++r) out(sp.sub[r] + t, sp.sub[c] + t) = m(r, c);
  return out;
}

Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep) {
  auto sp = split(dims, keep);
  long k = static_cast<long>(sp.sub.size());
  Mat out = Mat::Zero(k, k);
  for (long c = 0; c < k; ++c)
    for (long r = 0; r < k; ++r) {
      cplx s = 0;
      for (long t : sp.rest) s += m(sp.sub[r] + t, sp.sub[c] + t);
      out(r, c) = s;
    }
  return out;
}

void apply_left(Mat& a, const std::vector<int>& dims, const std::vector<int>& positions,
                const Mat& g) {
  bool contiguous = !positions.empty();
  for (size_t i = 1; i < positions.size(); ++i) contiguous = contiguous && positions[i] == positions[i - 1] + 1;
  if (contiguous) {
    // Column-major storage is then a [blocks][k][inner] array.
    long k = 1, inner = 1;
    for (int p : positions) k *= dims[p];
    for (size_t i = positions.back() + 1; i < dims.size(); ++i) inner *= dims[i];
    const long blocks = a.size() / (k * inner);
    if (inner == 1) {
      Eigen::Map<Mat> m(a.data(), k, blocks);
      m = g * m;
      return;
    }
    if (inner >= 16) {
      const Mat gt = g.transpose();
      Mat tmp(inner, k);
      for (long b = 0; b < blocks; ++b) {
        Eigen::Map<Mat> x(a.data() + b * k * inner, inner, k);
        tmp.noalias() = x * gt;
        x = tmp;
      }
      return;
    }
  }
  auto sp = split(dims, positions);
  const long k = static_cast<long>(sp.sub.size());
  const cplx* gd = g.data();
  std::vector<cplx> buf(k);
  // Column by column: a is column-major, rows are strided.
  for (long j = 0; j < a.cols(); ++j) {
    cplx* col = a.data() + j * a.rows();
    for (long t : sp.rest) {
      for (long c = 0; c < k; ++c) buf[c] = col[sp.sub[c] + t];
      for (long r = 0; r < k; ++r) {
        // Spelled out: std::complex products take a slow NaN-checking path.
        double re = 0, im = 0;
        for (long c = 0; c < k; ++c) {
          const cplx& x = gd[r + c * k];
          re += x.real() * buf[c].real() - x.imag() * buf[c].imag();
          im += x.real() * buf[c].imag() + x.imag() * buf[c].real();
        }
        col[sp.sub[r] + t] = cplx(re, im);
      }
    }
  }
}

void apply_right(Mat& a, const std::vector<int>& dims, const std::vector<int>& positions,
                 const Mat& g) {
  auto sp = split(dims, positions);
  long k = static_cast<long>(sp.sub.size());
  Mat block(a.rows(), k);
  for (long t : sp.rest) {
    for (long c = 0; c < k; ++c) block.col(c) = a.col(sp.sub[c] + t);
    Mat res = block * g;
    for (long c = 0; c < k; ++c) a.col(sp.sub[c] + t) = res.col(c);
  }
}

void apply(Vec& v, const std::vector<int>& dims, const std::vector<int>& positions, const Mat& g) {
  auto sp = split(dims, positions);
  long k = static_cast<long>(sp.sub.size());
  Vec block(k);
  for (long t : sp.rest) {
    for (long r = 0; r < k; ++r) block(r) = v(sp.sub[r] + t);
    Vec res = g * block;
    for (long r = 0; r < k; ++r) v(sp.sub[r] + t) = res(r);
  }
}

double identity_residual(const Mat& m, const std::vector<int>& dims, int position) {
  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (i != position) rest.push_back(i);
  // Offsets: `rest` digits select the reduced operator entry, the traced
  // digit must agree between row and column.
  auto sp = split(dims, rest);
  const int d = dims[position];
  auto st = strides(dims);
  long k = static_cast<long>(sp.sub.size());
  double acc = 0;
  for (long c = 0; c < k; ++c)
    for (long r = 0; r < k; ++r) {
      cplx tr = 0;
      for (int j = 0; j < d; ++j) tr += m(sp.sub[r] + j * st[position], sp.sub[c] + j * st[position]);
      cplx avg = tr / static_cast<double>(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          cplx v = m(sp.sub[r] + i * st[position], sp.sub[c] + j * st[position]);
          if (i == j) v -= avg;
          acc += std::norm(v);
        }
    }
  return std::sqrt(acc);
}

double hs_norm(const Mat& m) { return m.norm(); }

}  // namespace qlga::tensor
