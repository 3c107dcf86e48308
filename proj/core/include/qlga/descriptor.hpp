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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlga/lattice.hpp"
#include "qlga/program.hpp"

namespace qlga {

enum class LayerMode { Partitioned, Commuting };

struct CircuitLayer {
  LayerMode mode = LayerMode::Commuting;
  std::vector<int> stride;   // all ones unless given
  std::vector<Cell> supports;  // slot order
  Mat gate;                  // on the supports, slot order
};

struct CircuitEvolution {
  std::vector<CircuitLayer> layers;
};

enum class CliffordKind { CNOT, CZ, H, S, X, Z };

struct QubitAddress {
  Cell offset;
  int qubit = 0;
  auto operator<=>(const QubitAddress&) const = default;
};

struct CliffordGate {
  CliffordKind kind = CliffordKind::CNOT;
  std::vector<QubitAddress> operands;  // CNOT: control, target
};

struct CliffordEvolution {
  int qubits_per_cell = 1;
  std::vector<CliffordGate> gates;
};

struct QlgaEvolution {
  ComponentScheme scheme;
  Mat collision;    // F on the component space
  Mat isomorphism;  // S: W -> component space
};

struct QcaDescriptor {
  int n = 1;
  CellStructure cell;
  Neighborhood neighborhood;
  std::variant<CircuitEvolution, CliffordEvolution, QlgaEvolution> evolution;
  nlohmann::json source;  // as parsed

  std::string evolution_type() const;
  bool is_clifford() const { return std::holds_alternative<CliffordEvolution>(evolution); }
  bool is_qlga() const { return std::holds_alternative<QlgaEvolution>(evolution); }
  const QlgaEvolution& qlga() const { return std::get<QlgaEvolution>(evolution); }
  const CliffordEvolution& clifford() const { return std::get<CliffordEvolution>(evolution); }
};

// Parse and structurally validate. Errors are ParseError with a JSON pointer.
QcaDescriptor parse_descriptor(const nlohmann::json& doc, double tol = 1e-8);
QcaDescriptor load_descriptor(const std::string& path, double tol = 1e-8);
nlohmann::json to_json(const QcaDescriptor& d);

// Same cell and neighborhood with a replaced neighborhood (used for checks
// against a different declared N).
QcaDescriptor with_neighborhood(const QcaDescriptor& d, const Neighborhood& nb);

DenseProgram compile(const QcaDescriptor& d);

struct WindowUnitary {
  Mat unitary;  // divided by the quiescent eigenvalue
  cplx quiescent_eigenvalue = 1.0;
  double eigenvector_residual = 0;
  double unitarity_residual = 0;
  double translation_residual = 0;
  std::vector<int> lengths;
};

constexpr long kDefaultDenseCap = 4096;

// Throws StructuralError when d_W^(prod L) exceeds `cap`.
WindowUnitary build_window_unitary(const QcaDescriptor& d, const std::vector<int>& lengths,
                                   long cap = kDefaultDenseCap);

struct ValidationReport {
  bool unitary_ok = false;
  bool translation_ok = false;
  bool causal_ok = false;
  bool forward_causal_ok = false;
  bool backward_causal_ok = false;
  cplx quiescent_eigenvalue = 1.0;
  std::map<std::string, double> residuals;
  std::vector<int> window;
  std::vector<Cell> declared_neighborhood;
  std::vector<Cell> found_neighborhood;  // minimal N enclosing both directions
  std::string backend;
};

ValidationReport validate(const QcaDescriptor& d, double tol = 1e-8);

// Matrix JSON helpers: [[[re, im], ...], ...] row-major.
Mat matrix_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json matrix_to_json(const Mat& m);

}  // namespace qlga
