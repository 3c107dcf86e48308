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

#include "qlga/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qlga/tensor.hpp"

namespace qlga {

using nlohmann::json;

std::string QcaDescriptor::evolution_type() const {
  switch (evolution.index()) {
    case 0: return "circuit";
    case 1: return "clifford";
    default: return "qlga";
  }
}

namespace {

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "/" + key, "missing field");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

Cell as_cell(const json& j, int n, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(path, "expected an integer vector of length " + std::to_string(n));
  Cell c;
  for (size_t i = 0; i < j.size(); ++i) c.push_back(as_int(j[i], path + "/" + std::to_string(i)));
  return c;
}

double unitarity_defect(const Mat& m) {
  return (m.adjoint() * m - Mat::Identity(m.rows(), m.cols())).norm();
}

void check_unitary(const Mat& m, double tol, const std::string& path) {
  double r = unitarity_defect(m);
  if (r > tol) {
    std::ostringstream os;
    os << "matrix is not unitary (residual " << r << ")";
    throw ParseError(path, os.str());
  }
}

CircuitEvolution parse_circuit(const json& ev, const QcaDescriptor& d, double tol) {
  CircuitEvolution out;
  const std::string base = "/evolution/layers";
  const json& layers = field(ev, "layers", "/evolution");
  if (!layers.is_array()) throw ParseError(base, "expected an array");
  const int dw = d.cell.dim;
  for (size_t li = 0; li < layers.size(); ++li) {
    const std::string lp = base + "/" + std::to_string(li);
    const json& lj = layers[li];
    CircuitLayer layer;
    const json& mode = field(lj, "mode", lp);
    if (mode == "partitioned")
      layer.mode = LayerMode::Partitioned;
    else if (mode == "commuting")
      layer.mode = LayerMode::Commuting;
    else
      throw ParseError(lp + "/mode", "expected \"partitioned\" or \"commuting\"");
    layer.stride.assign(d.n, 1);
    if (lj.contains("stride")) {
      layer.stride = as_cell(lj["stride"], d.n, lp + "/stride");
      for (int s : layer.stride)
        if (s < 1) throw ParseError(lp + "/stride", "stride entries must be positive");
    }
    const json& gate = field(lj, "gate", lp);
    const json& sup = field(gate, "supports", lp + "/gate");
    if (!sup.is_array() || sup.empty()) throw ParseError(lp + "/gate/supports", "expected a non-empty array");
    std::vector<Slot> slots;
    for (size_t k = 0; k < sup.size(); ++k)
      slots.push_back(Slot{as_cell(sup[k], d.n, lp + "/gate/supports/" + std::to_string(k)), 0});
    Mat m = matrix_from_json(field(gate, "matrix", lp + "/gate"), lp + "/gate/matrix");
    std::vector<int> dims(slots.size(), dw);
    LocalOperator op;
    try {
      op = LocalOperator::make(slots, dims, m);
    } catch (const StructuralError& e) {
      throw ParseError(lp + "/gate", e.what());
    }
    check_unitary(op.matrix, tol, lp + "/gate/matrix");
    long q = tensor::index(std::vector<int>(slots.size(), d.cell.quiescent_index), dims);
    for (long i = 0; i < op.dim(); ++i) {
      cplx want = i == q ? cplx(1) : cplx(0);
      if (op.matrix(i, q) != want)
        throw ParseError(lp + "/gate/matrix", "gate does not fix the quiescent tensor exactly");
    }
    for (const auto& a : op.slots)
      for (const auto& b : op.slots) {
        if (a == b) continue;
        Cell x = a.cell - b.cell;
        bool on = true;
        for (int i = 0; i < d.n; ++i) on = on && x[i] % layer.stride[i] == 0;
        if (!on) continue;
        if (layer.mode == LayerMode::Partitioned)
          throw ParseError(lp + "/stride", "translated gate copies overlap under this stride");
        LocalOperator t = translate(op, x);
        LocalOperator ab = multiply(op, t), ba = multiply(t, op);
        if (add(ab, ba, -1.0).matrix.norm() > tol)
          throw ParseError(lp + "/gate", "overlapping translated copies do not commute");
      }
    for (const auto& s : op.slots) layer.supports.push_back(s.cell);
    layer.gate = op.matrix;
    out.layers.push_back(std::move(layer));
  }
  return out;
}

CliffordEvolution parse_clifford(const json& ev, const QcaDescriptor& d) {
  CliffordEvolution out;
  out.qubits_per_cell = as_int(field(ev, "qubits_per_cell", "/evolution"), "/evolution/qubits_per_cell");
  const int m = out.qubits_per_cell;
  if (m < 1 || m > 30) throw ParseError("/evolution/qubits_per_cell", "out of range");
  if (d.cell.dim != (1 << m))
    throw ParseError("/cell/dim", "cell dimension must equal 2^qubits_per_cell");
  const json& gates = field(ev, "gates", "/evolution");
  if (!gates.is_array()) throw ParseError("/evolution/gates", "expected an array");
  for (size_t gi = 0; gi < gates.size(); ++gi) {
    const std::string gp = "/evolution/gates/" + std::to_string(gi);
    CliffordGate g;
    const json& kind = field(gates[gi], "kind", gp);
    static const std::map<std::string, CliffordKind> kinds = {
        {"CNOT", CliffordKind::CNOT}, {"CZ", CliffordKind::CZ}, {"H", CliffordKind::H},
        {"S", CliffordKind::S},       {"X", CliffordKind::X},   {"Z", CliffordKind::Z}};
    if (!kind.is_string() || !kinds.count(kind.get<std::string>()))
      throw ParseError(gp + "/kind", "unknown gate kind");
    g.kind = kinds.at(kind.get<std::string>());
    const json& ops = field(gates[gi], "operands", gp);
    size_t want = (g.kind == CliffordKind::CNOT || g.kind == CliffordKind::CZ) ? 2 : 1;
    if (!ops.is_array() || ops.size() != want)
      throw ParseError(gp + "/operands", "expected " + std::to_string(want) + " operands");
    for (size_t k = 0; k < ops.size(); ++k) {
      const std::string op = gp + "/operands/" + std::to_string(k);
      QubitAddress a{as_cell(field(ops[k], "offset", op), d.n, op + "/offset"),
                     as_int(field(ops[k], "qubit", op), op + "/qubit")};
      if (a.qubit < 0 || a.qubit >= m) throw ParseError(op + "/qubit", "qubit index out of range");
      g.operands.push_back(a);
    }
    if (want == 2) {
      if (g.operands[0] == g.operands[1]) throw ParseError(gp + "/operands", "operands coincide");
      // Translated copies of a CNOT chain along one qubit index do not commute.
      if (g.kind == CliffordKind::CNOT && g.operands[0].qubit == g.operands[1].qubit)
        throw ParseError(gp + "/operands", "translated copies of this CNOT do not commute");
    }
    out.gates.push_back(std::move(g));
  }
  return out;
}

QlgaEvolution parse_qlga(const json& ev, const QcaDescriptor& d, double tol) {
  QlgaEvolution out;
  const json& factors = field(ev, "factors", "/evolution");
  if (!factors.is_array() || factors.empty())
    throw ParseError("/evolution/factors", "expected a non-empty array");
  for (size_t k = 0; k < factors.size(); ++k) {
    const std::string fp = "/evolution/factors/" + std::to_string(k);
    out.scheme.offsets.push_back(as_cell(field(factors[k], "offset", fp), d.n, fp + "/offset"));
    out.scheme.dims.push_back(as_int(field(factors[k], "dim", fp), fp + "/dim"));
    out.scheme.quiescent.push_back(as_int(field(factors[k], "quiescent", fp), fp + "/quiescent"));
  }
  try {
    out.scheme.validate(d.cell.dim);
  } catch (const StructuralError& e) {
    throw ParseError("/evolution/factors", e.what());
  }
  if (out.scheme.offsets != d.neighborhood.offsets)
    throw ParseError("/evolution/factors", "factor offsets must match the neighborhood");
  const long qhat = out.scheme.quiescent_cell_index();
  out.collision = matrix_from_json(field(ev, "collision", "/evolution"), "/evolution/collision");
  if (out.collision.rows() != d.cell.dim)
    throw ParseError("/evolution/collision", "collision size differs from cell dimension");
  check_unitary(out.collision, tol, "/evolution/collision");
  Vec e = Vec::Zero(d.cell.dim);
  e(qhat) = 1;
  if ((out.collision * e - e).norm() > tol)
    throw ParseError("/evolution/collision", "collision does not fix the quiescent tensor");
  if (ev.contains("isomorphism")) {
    out.isomorphism = matrix_from_json(ev["isomorphism"], "/evolution/isomorphism");
    if (out.isomorphism.rows() != d.cell.dim)
      throw ParseError("/evolution/isomorphism", "isomorphism size differs from cell dimension");
    check_unitary(out.isomorphism, tol, "/evolution/isomorphism");
  } else {
    out.isomorphism = Mat::Identity(d.cell.dim, d.cell.dim);
  }
  Vec q = Vec::Zero(d.cell.dim);
  q(d.cell.quiescent_index) = 1;
  if ((out.isomorphism * q - e).norm() > tol)
    throw ParseError("/evolution/isomorphism",
                     "isomorphism must map the quiescent state to the quiescent tensor");
  return out;
}

std::vector<int> bits_of(int value, int m) {
  std::vector<int> b(m);
  for (int i = 0; i < m; ++i) b[i] = (value >> (m - 1 - i)) & 1;
  return b;
}

Mat clifford_matrix(CliffordKind k) {
  const cplx I(0, 1);
  const double r = 1 / std::sqrt(2.0);
  Mat m;
  switch (k) {
    case CliffordKind::CNOT:
      m = Mat::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      break;
    case CliffordKind::CZ:
      m = Mat::Identity(4, 4);
      m(3, 3) = -1;
      break;
    case CliffordKind::H:
      m.resize(2, 2);
      m << r, r, r, -r;
      break;
    case CliffordKind::S:
      m = Mat::Identity(2, 2);
      m(1, 1) = I;
      break;
    case CliffordKind::X:
      m = Mat::Zero(2, 2);
      m(0, 1) = m(1, 0) = 1;
      break;
    case CliffordKind::Z:
      m = Mat::Identity(2, 2);
      m(1, 1) = -1;
      break;
  }
  return m;
}

}  // namespace

Mat matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty matrix");
  const long n = static_cast<long>(j.size());
  Mat m(n, n);
  for (long r = 0; r < n; ++r) {
    const json& row = j[r];
    const std::string rp = path + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<long>(row.size()) != n)
      throw ParseError(rp, "expected a row of length " + std::to_string(n));
    for (long c = 0; c < n; ++c) {
      const json& z = row[c];
      const std::string zp = rp + "/" + std::to_string(c);
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw ParseError(zp, "complex entries are [re, im] pairs");
      m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

QcaDescriptor parse_descriptor(const json& doc, double tol) {
  if (!doc.is_object()) throw ParseError("", "descriptor must be a JSON object");
  QcaDescriptor d;
  d.source = doc;
  d.n = as_int(field(doc, "dimension", ""), "/dimension");
  if (d.n < 1) throw ParseError("/dimension", "must be positive");
  const json& cell = field(doc, "cell", "");
  d.cell.dim = as_int(field(cell, "dim", "/cell"), "/cell/dim");
  d.cell.quiescent_index = as_int(field(cell, "quiescent", "/cell"), "/cell/quiescent");
  if (cell.contains("labels")) {
    if (!cell["labels"].is_array()) throw ParseError("/cell/labels", "expected an array of strings");
    for (size_t i = 0; i < cell["labels"].size(); ++i) {
      if (!cell["labels"][i].is_string())
        throw ParseError("/cell/labels/" + std::to_string(i), "expected a string");
      d.cell.labels.push_back(cell["labels"][i].get<std::string>());
    }
  }
  try {
    d.cell.validate();
  } catch (const StructuralError& e) {
    throw ParseError("/cell", e.what());
  }
  const json& nb = field(doc, "neighborhood", "");
  if (!nb.is_array()) throw ParseError("/neighborhood", "expected an array");
  std::vector<Cell> offs;
  for (size_t i = 0; i < nb.size(); ++i)
    offs.push_back(as_cell(nb[i], d.n, "/neighborhood/" + std::to_string(i)));
  try {
    d.neighborhood = Neighborhood::make(d.n, offs);
  } catch (const StructuralError& e) {
    throw ParseError("/neighborhood", e.what());
  }
  const json& ev = field(doc, "evolution", "");
  const json& type = field(ev, "type", "/evolution");
  if (type == "circuit")
    d.evolution = parse_circuit(ev, d, tol);
  else if (type == "clifford")
    d.evolution = parse_clifford(ev, d);
  else if (type == "qlga")
    d.evolution = parse_qlga(ev, d, tol);
  else
    throw ParseError("/evolution/type", "expected \"circuit\", \"clifford\" or \"qlga\"");

  if (d.is_clifford()) {
    // Rules may pass through non-fixing gates (H); the whole rule must
    // return the quiescent configuration to itself with eigenvalue 1.
    DenseProgram p = compile(d);
    Neighborhood wide = d.neighborhood;
    std::vector<Cell> touched = wide.offsets;
    for (const auto& g : d.clifford().gates)
      for (const auto& a : g.operands) touched.push_back(a.offset);
    for (const auto& g : d.clifford().gates)
      for (const auto& a : g.operands)
        for (const auto& b : g.operands) touched.push_back(a.offset - b.offset);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    RingWindow w{d.n, default_ring_lengths(Neighborhood::make(d.n, touched)), d.cell};
    RingEngine eng(p, w);
    SparseState s{{eng.quiescent(), 1.0}};
    SparseState r = eng.apply(s);
    cplx lam = sparse_inner(s, r);
    if (std::abs(lam - cplx(1)) > tol)
      throw ParseError("/evolution/gates", "rule does not fix the quiescent configuration");
  }
  return d;
}

QcaDescriptor load_descriptor(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_descriptor(doc, tol);
}

json to_json(const QcaDescriptor& d) { return d.source; }

QcaDescriptor with_neighborhood(const QcaDescriptor& d, const Neighborhood& nb) {
  QcaDescriptor out = d;
  out.neighborhood = nb;
  json offs = json::array();
  for (const auto& z : nb.offsets) offs.push_back(z);
  out.source["neighborhood"] = offs;
  return out;
}

DenseProgram compile(const QcaDescriptor& d) {
  DenseProgram p;
  p.n = d.n;
  std::vector<int> ones(d.n, 1);
  if (std::holds_alternative<CircuitEvolution>(d.evolution)) {
    const auto& ce = std::get<CircuitEvolution>(d.evolution);
    p.part_dims = {d.cell.dim};
    p.cell_quiescent_digits = {d.cell.quiescent_index};
    for (const auto& layer : ce.layers) {
      Stage st;
      std::vector<Slot> slots;
      for (const auto& c : layer.supports) slots.push_back(Slot{c, 0});
      std::vector<int> dims(slots.size(), d.cell.dim);
      st.gate = LocalOperator::make(slots, dims, layer.gate);
      st.stride = layer.stride;
      st.quiescent_in = st.quiescent_out =
          tensor::index(std::vector<int>(slots.size(), d.cell.quiescent_index), dims);
      st.single_cell = slots.size() == 1 && layer.stride == ones;
      p.stages.push_back(std::move(st));
    }
  } else if (d.is_clifford()) {
    const auto& ce = d.clifford();
    const int m = ce.qubits_per_cell;
    p.part_dims.assign(m, 2);
    p.cell_quiescent_digits = bits_of(d.cell.quiescent_index, m);
    for (const auto& g : ce.gates) {
      Stage st;
      std::vector<Slot> slots;
      for (const auto& a : g.operands) slots.push_back(Slot{a.offset, a.qubit});
      std::vector<int> dims(slots.size(), 2);
      st.gate = LocalOperator::make(slots, dims, clifford_matrix(g.kind));
      st.stride = ones;
      std::vector<int> qd;
      for (const auto& s : st.gate.slots) qd.push_back(p.cell_quiescent_digits[s.part]);
      long q = tensor::index(qd, st.gate.dims);
      st.quiescent_in = q;
      // Only gates that fix the quiescent digits exactly take the shortcut;
      // others are marked with an impossible index.
      bool fixes = true;
      for (long i = 0; i < st.gate.dim(); ++i)
        fixes = fixes && st.gate.matrix(i, q) == (i == q ? cplx(1) : cplx(0));
      st.quiescent_in = fixes ? q : -1;
      st.quiescent_out = fixes ? q : -1;
      bool same = true;
      for (const auto& a : g.operands) same = same && a.offset == g.operands[0].offset;
      st.single_cell = same;
      p.stages.push_back(std::move(st));
    }
  } else {
    const auto& qe = d.qlga();
    p.part_dims = qe.scheme.dims;
    p.scheme = qe.scheme;
    p.cell_quiescent_digits = tensor::digits(d.cell.quiescent_index, p.part_dims);
    const long q0 = d.cell.quiescent_index;
    const long qh = qe.scheme.quiescent_cell_index();
    std::vector<Slot> slots;
    Cell origin(d.n, 0);
    for (size_t i = 0; i < p.part_dims.size(); ++i) slots.push_back(Slot{origin, static_cast<int>(i)});
    auto cell_stage = [&](const Mat& m, long qin, long qout) {
      Stage st;
      st.gate = LocalOperator::make(slots, p.part_dims, m);
      st.stride = ones;
      st.quiescent_in = qin;
      st.quiescent_out = qout;
      st.single_cell = true;
      return st;
    };
    p.stages.push_back(cell_stage(qe.isomorphism, q0, qh));
    Stage sig;
    sig.kind = Stage::Kind::Sigma;
    sig.stride = ones;
    p.stages.push_back(sig);
    p.stages.push_back(cell_stage(qe.collision, qh, qh));
    p.stages.push_back(cell_stage(qe.isomorphism.adjoint(), qh, q0));
  }
  return p;
}

WindowUnitary build_window_unitary(const QcaDescriptor& d, const std::vector<int>& lengths,
                                   long cap) {
  RingWindow w{d.n, lengths, d.cell};
  w.check(d.neighborhood);
  double size = std::pow(static_cast<double>(d.cell.dim), static_cast<double>(w.num_cells()));
  if (size > static_cast<double>(cap))
    throw StructuralError("ring dimension " + std::to_string(static_cast<long long>(size)) +
                          " exceeds the dense cap " + std::to_string(cap) +
                          "; use local conjugation instead");
  DenseProgram p = compile(d);
  WindowUnitary out;
  out.lengths = lengths;
  out.unitary = ring_unitary(p, w);
  const long n = out.unitary.rows();
  std::vector<int> cell_dims(w.num_cells(), d.cell.dim);
  long q = tensor::index(std::vector<int>(w.num_cells(), d.cell.quiescent_index), cell_dims);
  out.quiescent_eigenvalue = out.unitary(q, q);
  Vec col = out.unitary.col(q);
  col(q) -= out.quiescent_eigenvalue;
  out.eigenvector_residual = col.norm();
  if (std::abs(out.quiescent_eigenvalue) > 0) out.unitary /= out.quiescent_eigenvalue;
  out.unitarity_residual =
      (out.unitary.adjoint() * out.unitary - Mat::Identity(n, n)).norm() / std::sqrt(double(n));
  double tr = 0;
  for (int axis = 0; axis < d.n; ++axis) {
    // Shift every cell by one step along `axis`.
    std::vector<long> map(n);
    for (long k = 0; k < n; ++k) {
      auto dg = tensor::digits(k, cell_dims);
      std::vector<int> nd(dg.size());
      auto cells = w.cells();
      for (size_t c = 0; c < cells.size(); ++c) {
        Cell t = cells[c];
        t[axis] += 1;
        nd[w.cell_index(w.reduce(t))] = dg[c];
      }
      map[k] = tensor::index(nd, cell_dims);
    }
    Mat shifted(n, n);
    for (long c = 0; c < n; ++c)
      for (long r = 0; r < n; ++r) shifted(map[r], map[c]) = out.unitary(r, c);
    tr = std::max(tr, (shifted - out.unitary).norm() / out.unitary.norm());
  }
  out.translation_residual = tr;
  return out;
}

}  // namespace qlga
