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

#include <complex>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qlga {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Lattice coordinate in Z^n.
using Cell = std::vector<int>;

// A tensor factor of the configuration space. `part` indexes a sub-factor of
// the cell (a qubit or a component); whole-cell slots use part 0.
struct Slot {
  Cell cell;
  int part = 0;

  auto operator<=>(const Slot&) const = default;
  bool operator==(const Slot&) const = default;
};

std::string to_string(const Cell& c);
std::string to_string(const Slot& s);

Cell operator+(const Cell& a, const Cell& b);
Cell operator-(const Cell& a, const Cell& b);
Cell operator-(const Cell& a);

struct Tolerances {
  double rank = 1e-9;
  double residual = 1e-8;
};

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CausalityError : public std::runtime_error {
 public:
  CausalityError(const std::string& what, std::vector<Cell> offending)
      : std::runtime_error(what), offending_(std::move(offending)) {}
  const std::vector<Cell>& offending() const { return offending_; }

 private:
  std::vector<Cell> offending_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& msg)
      : std::runtime_error(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace qlga
