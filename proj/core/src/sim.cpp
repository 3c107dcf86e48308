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

#include "qlga/sim.hpp"

#include <algorithm>
#include <cmath>

#include "qlga/tensor.hpp"

namespace qlga {

long ConfigState::num_cells() const {
  long c = 1;
  for (int e : extent) c *= e;
  return c;
}

int ConfigState::cell_dim() const { return static_cast<int>(tensor::total(dims)); }

double ConfigState::norm() const { return sparse_norm(amplitudes); }

std::vector<Cell> ConfigState::cells() const {
  std::vector<Cell> out;
  for (long k = 0; k < num_cells(); ++k) out.push_back(origin + tensor::digits(k, extent));
  return out;
}

long ConfigState::cell_position(const Cell& absolute) const {
  long k = 0;
  for (int i = 0; i < n; ++i) {
    int r = absolute[i] - origin[i];
    if (r < 0 || r >= extent[i]) return -1;
    k = k * extent[i] + r;
  }
  return k;
}

int ConfigState::cell_value(const Digits& config, long position) const {
  const size_t k = dims.size();
  std::vector<int> blk(config.begin() + position * k, config.begin() + (position + 1) * k);
  return static_cast<int>(tensor::index(blk, dims));
}

namespace {

ConfigState empty_like(const QlgaEvolution& g, int n) {
  ConfigState s;
  s.n = n;
  s.dims = g.scheme.dims;
  s.quiescent = g.scheme.quiescent;
  return s;
}

Digits quiescent_config(const ConfigState& s) {
  Digits d;
  for (long c = 0; c < s.num_cells(); ++c) d.insert(d.end(), s.quiescent.begin(), s.quiescent.end());
  return d;
}

void prune(SparseState& s) {
  for (auto it = s.begin(); it != s.end();)
    it = std::abs(it->second) <= 1e-15 ? s.erase(it) : std::next(it);
}

std::vector<int> scheme_radius(const ComponentScheme& sc, int n) {
  std::vector<int> r(n, 0);
  for (const auto& z : sc.offsets)
    for (int i = 0; i < n; ++i) r[i] = std::max(r[i], std::abs(z[i]));
  return r;
}

ConfigState regrid(const ConfigState& s, const Cell& origin, const std::vector<int>& extent) {
  ConfigState out = s;
  out.origin = origin;
  out.extent = extent;
  out.amplitudes.clear();
  const size_t k = s.dims.size();
  const auto old_cells = s.cells();
  const Digits base = quiescent_config(out);
  for (const auto& [dg, amp] : s.amplitudes) {
    Digits nd = base;
    for (size_t c = 0; c < old_cells.size(); ++c) {
      long p = out.cell_position(old_cells[c]);
      bool quiet = std::equal(dg.begin() + c * k, dg.begin() + (c + 1) * k, s.quiescent.begin());
      if (p < 0) {
        if (!quiet) throw StructuralError("regrid would drop a non-quiescent cell");
        continue;
      }
      std::copy(dg.begin() + c * k, dg.begin() + (c + 1) * k, nd.begin() + p * k);
    }
    out.amplitudes[nd] += amp;
  }
  return out;
}

}  // namespace

ConfigState vacuum(const QlgaEvolution& g, int n, const Cell& origin, const std::vector<int>& extent) {
  ConfigState s = empty_like(g, n);
  s.origin = origin;
  s.extent = extent;
  s.amplitudes[quiescent_config(s)] = 1.0;
  return s;
}

ConfigState basis_state(const QlgaEvolution& g, int n, const std::vector<std::pair<Cell, int>>& values) {
  if (values.empty()) return vacuum(g, n, Cell(n, 0), std::vector<int>(n, 1));
  Cell lo = values[0].first, hi = values[0].first;
  for (const auto& [c, v] : values)
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  std::vector<int> extent(n);
  for (int i = 0; i < n; ++i) extent[i] = hi[i] - lo[i] + 1;
  ConfigState s = vacuum(g, n, lo, extent);
  Digits d = quiescent_config(s);
  const size_t k = s.dims.size();
  for (const auto& [c, v] : values) {
    if (v < 0 || v >= s.cell_dim()) throw StructuralError("cell value out of range");
    auto blk = tensor::digits(v, s.dims);
    std::copy(blk.begin(), blk.end(), d.begin() + s.cell_position(c) * k);
  }
  s.amplitudes.clear();
  s.amplitudes[d] = 1.0;
  return s;
}

ConfigState padded(const ConfigState& s, int pad) {
  Cell origin = s.origin;
  std::vector<int> extent = s.extent;
  for (int i = 0; i < s.n; ++i) {
    origin[i] -= pad;
    extent[i] += 2 * pad;
  }
  return regrid(s, origin, extent);
}

ConfigState translated(const ConfigState& s, const Cell& z) {
  ConfigState out = s;
  out.origin = s.origin + z;
  return out;
}

ConfigState step(const ConfigState& s, const QlgaEvolution& g) {
  const auto r = scheme_radius(g.scheme, s.n);
  Cell origin = s.origin;
  std::vector<int> extent = s.extent;
  for (int i = 0; i < s.n; ++i) {
    origin[i] -= r[i];
    extent[i] += 2 * r[i];
  }
  ConfigState grown = regrid(s, origin, extent);
  const size_t k = s.dims.size();
  const auto cells = grown.cells();
  // sigma: component z of cell x is taken from cell x + z.
  std::vector<std::vector<long>> source(cells.size(), std::vector<long>(k));
  for (size_t c = 0; c < cells.size(); ++c)
    for (size_t z = 0; z < k; ++z) source[c][z] = grown.cell_position(cells[c] + g.scheme.offsets[z]);
  SparseState moved;
  for (const auto& [dg, amp] : grown.amplitudes) {
    Digits nd(dg.size());
    for (size_t c = 0; c < cells.size(); ++c)
      for (size_t z = 0; z < k; ++z) {
        long src = source[c][z];
        nd[c * k + z] = src < 0 ? s.quiescent[z] : dg[src * k + z];
      }
    moved[nd] += amp;
  }
  // Collision on every cell; quiescent cells are fixed points.
  const long qh = tensor::index(s.quiescent, s.dims);
  const Mat& F = g.collision;
  for (size_t c = 0; c < cells.size(); ++c) {
    SparseState next;
    for (const auto& [dg, amp] : moved) {
      long v = grown.cell_value(dg, static_cast<long>(c));
      if (v == qh) {
        next[dg] += amp;
        continue;
      }
      Digits nd = dg;
      for (long j = 0; j < F.rows(); ++j) {
        cplx f = F(j, v);
        if (f == cplx(0)) continue;
        auto blk = tensor::digits(j, s.dims);
        std::copy(blk.begin(), blk.end(), nd.begin() + c * k);
        next[nd] += f * amp;
      }
    }
    prune(next);
    moved = std::move(next);
  }
  grown.amplitudes = std::move(moved);
  return grown;
}

ConfigState run(const ConfigState& s, const QlgaEvolution& g, int steps, std::vector<double>* norms) {
  ConfigState cur = s;
  for (int t = 0; t < steps; ++t) {
    cur = step(cur, g);
    if (norms) norms->push_back(cur.norm());
  }
  return cur;
}

cplx observe(const ConfigState& s, const LocalOperator& o) {
  const size_t k = s.dims.size();
  const long qh = tensor::index(s.quiescent, s.dims);
  const int dw = s.cell_dim();
  std::vector<long> pos;
  for (size_t i = 0; i < o.slots.size(); ++i) {
    if (o.dims[i] != dw) throw StructuralError("observable slots must be whole cells");
    pos.push_back(s.cell_position(o.slots[i].cell));
  }
  std::vector<int> odims(o.slots.size(), dw);
  cplx acc = 0;
  for (const auto& [dg, amp] : s.amplitudes) {
    std::vector<int> loc;
    for (long p : pos) loc.push_back(p < 0 ? static_cast<int>(qh) : s.cell_value(dg, p));
    long l = tensor::index(loc, odims);
    for (long j = 0; j < o.matrix.rows(); ++j) {
      cplx oj = o.matrix(j, l);
      if (oj == cplx(0)) continue;
      auto jd = tensor::digits(j, odims);
      Digits nd = dg;
      bool ok = true;
      for (size_t i = 0; i < pos.size(); ++i) {
        if (pos[i] < 0) {
          ok = ok && jd[i] == qh;
          continue;
        }
        auto blk = tensor::digits(jd[i], s.dims);
        std::copy(blk.begin(), blk.end(), nd.begin() + pos[i] * k);
      }
      if (!ok) continue;
      auto it = s.amplitudes.find(nd);
      if (it != s.amplitudes.end()) acc += std::conj(it->second) * oj * amp;
    }
  }
  return acc;
}

Excitations excitations(const ConfigState& s) {
  Excitations out;
  const auto cells = s.cells();
  const long qh = tensor::index(s.quiescent, s.dims);
  for (const auto& [dg, amp] : s.amplitudes) {
    std::vector<std::pair<Cell, int>> key;
    for (size_t c = 0; c < cells.size(); ++c) {
      int v = s.cell_value(dg, static_cast<long>(c));
      if (v != qh) key.emplace_back(cells[c], v);
    }
    out[key] += amp;
  }
  return out;
}

double excitation_distance(const Excitations& a, const Excitations& b) {
  Excitations d = a;
  for (const auto& [k, v] : b) d[k] -= v;
  double acc = 0;
  for (const auto& kv : d) acc += std::norm(kv.second);
  return std::sqrt(acc);
}

nlohmann::json state_to_json(const ConfigState& s, long dense_limit) {
  nlohmann::json j;
  j["origin"] = s.origin;
  j["extent"] = s.extent;
  j["component_dims"] = s.dims;
  j["norm"] = s.norm();
  const int dw = s.cell_dim();
  const long cells = s.num_cells();
  double total = std::pow(static_cast<double>(dw), static_cast<double>(cells));
  std::vector<int> cdims(cells, dw);
  if (total <= static_cast<double>(dense_limit)) {
    std::vector<cplx> flat(static_cast<size_t>(total), 0.0);
    for (const auto& [dg, amp] : s.amplitudes) {
      std::vector<int> vals;
      for (long c = 0; c < cells; ++c) vals.push_back(s.cell_value(dg, c));
      flat[tensor::index(vals, cdims)] += amp;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& z : flat) arr.push_back({z.real(), z.imag()});
    j["amplitudes"] = arr;
  } else {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [dg, amp] : s.amplitudes) {
      std::vector<int> vals;
      for (long c = 0; c < cells; ++c) vals.push_back(s.cell_value(dg, c));
      terms.push_back({{"cells", vals}, {"amplitude", {amp.real(), amp.imag()}}});
    }
    j["terms"] = terms;
  }
  return j;
}

ConfigState state_from_json(const nlohmann::json& j, const QlgaEvolution& g, int n) {
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("/") + key, "missing field");
    return j[key];
  };
  ConfigState s = empty_like(g, n);
  try {
    s.origin = need("origin").get<std::vector<int>>();
    s.extent = need("extent").get<std::vector<int>>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("/origin", "origin and extent must be integer arrays");
  }
  if (static_cast<int>(s.origin.size()) != n || static_cast<int>(s.extent.size()) != n)
    throw ParseError("/extent", "origin and extent must have the lattice dimension");
  for (int e : s.extent)
    if (e < 1) throw ParseError("/extent", "extent entries must be positive");
  if (j.contains("component_dims") && j["component_dims"].get<std::vector<int>>() != s.dims)
    throw ParseError("/component_dims", "component dimensions differ from the descriptor");
  const int dw = s.cell_dim();
  const long cells = s.num_cells();
  std::vector<int> cdims(cells, dw);
  auto config_of = [&](const std::vector<int>& vals) {
    Digits d;
    for (int v : vals) {
      if (v < 0 || v >= dw) throw ParseError("/terms", "cell value out of range");
      auto blk = tensor::digits(v, s.dims);
      d.insert(d.end(), blk.begin(), blk.end());
    }
    return d;
  };
  auto complex_of = [](const nlohmann::json& z, const std::string& path) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      throw ParseError(path, "complex entries are [re, im] pairs");
    return cplx(z[0].get<double>(), z[1].get<double>());
  };
  if (j.contains("amplitudes")) {
    const auto& arr = j["amplitudes"];
    double total = std::pow(static_cast<double>(dw), static_cast<double>(cells));
    if (!arr.is_array() || static_cast<double>(arr.size()) != total)
      throw ParseError("/amplitudes", "expected d_W^cells entries");
    for (size_t i = 0; i < arr.size(); ++i) {
      cplx a = complex_of(arr[i], "/amplitudes/" + std::to_string(i));
      if (a == cplx(0)) continue;
      s.amplitudes[config_of(tensor::digits(static_cast<long>(i), cdims))] += a;
    }
  } else if (j.contains("terms")) {
    const auto& terms = j["terms"];
    for (size_t i = 0; i < terms.size(); ++i) {
      const std::string p = "/terms/" + std::to_string(i);
      auto vals = terms[i].at("cells").get<std::vector<int>>();
      if (static_cast<long>(vals.size()) != cells) throw ParseError(p + "/cells", "wrong length");
      s.amplitudes[config_of(vals)] += complex_of(terms[i].at("amplitude"), p + "/amplitude");
    }
  } else {
    throw ParseError("/amplitudes", "missing field");
  }
  return s;
}

}  // namespace qlga
