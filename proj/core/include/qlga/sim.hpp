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
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlga/descriptor.hpp"
#include "qlga/program.hpp"

namespace qlga {

// Finite configuration in component form: a window of cells inside an
// implicit quiescent background. Amplitudes are keyed by the component
// digits of every window cell (cells row-major, components in slot order).
struct ConfigState {
  int n = 1;
  Cell origin;
  std::vector<int> extent;
  std::vector<int> dims;       // component dimensions of one cell
  std::vector<int> quiescent;  // quiescent component digits
  SparseState amplitudes;

  long num_cells() const;
  int cell_dim() const;
  double norm() const;
  // Window cell coordinates in storage order.
  std::vector<Cell> cells() const;
  long cell_position(const Cell& absolute) const;  // -1 outside the window
  int cell_value(const Digits& config, long position) const;
};

ConfigState vacuum(const QlgaEvolution& g, int n, const Cell& origin, const std::vector<int>& extent);
// Basis configuration with the listed cells set to component-basis values.
ConfigState basis_state(const QlgaEvolution& g, int n, const std::vector<std::pair<Cell, int>>& values);

// One step: grow by the neighborhood radius, propagate, collide.
ConfigState step(const ConfigState& s, const QlgaEvolution& g);
// T steps; per-step norms appended to `norms` when given.
ConfigState run(const ConfigState& s, const QlgaEvolution& g, int steps,
                std::vector<double>* norms = nullptr);

// <s| o |s> for o on whole-cell slots (component basis of each cell).
cplx observe(const ConfigState& s, const LocalOperator& o);

ConfigState translated(const ConfigState& s, const Cell& z);
// Adds `pad` quiescent cells on both sides of every axis.
ConfigState padded(const ConfigState& s, int pad);

// Window-independent view: non-quiescent (cell, value) lists -> amplitude.
using Excitations = std::map<std::vector<std::pair<Cell, int>>, cplx>;
Excitations excitations(const ConfigState& s);
double excitation_distance(const Excitations& a, const Excitations& b);

// State files. Small windows are written as a dense "amplitudes" array,
// larger ones as sparse "terms".
nlohmann::json state_to_json(const ConfigState& s, long dense_limit = 4096);
ConfigState state_from_json(const nlohmann::json& j, const QlgaEvolution& g, int n);

}  // namespace qlga
