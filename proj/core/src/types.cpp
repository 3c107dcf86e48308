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

#include "qlga/types.hpp"

namespace qlga {

std::string to_string(const Cell& c) {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

std::string to_string(const Slot& s) { return to_string(s.cell) + "#" + std::to_string(s.part); }

Cell operator+(const Cell& a, const Cell& b) {
  if (a.size() != b.size()) throw StructuralError("cell dimension mismatch");
  Cell r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Cell operator-(const Cell& a, const Cell& b) {
  if (a.size() != b.size()) throw StructuralError("cell dimension mismatch");
  Cell r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Cell operator-(const Cell& a) {
  Cell r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

}  // namespace qlga
