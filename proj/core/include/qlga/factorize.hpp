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

#include <cstdint>
#include <map>
#include <vector>

#include "qlga/opspace.hpp"

namespace qlga {

struct IsotypicSplit {
  int dim_u = 0;  // multiplicity
  int dim_y = 0;  // irreducible
  std::vector<Vec> multiplicity_basis;  // u_alpha (x) y_1 inside W
  std::vector<Vec> irreducible_basis;   // u_1 (x) y_beta inside W
  Mat change_of_basis;                  // W -> U (x) Y, rows w_{alpha beta}^dagger
  double algebra_residual = 0;          // T  -> I_U (x) End(Y)
  double commutant_residual = 0;        // T' -> End(U) (x) I_Y
  double unitarity_residual = 0;
  int attempts = 0;
};

// T: self-adjoint unital algebra on a single slot. Throws StructuralError
// "not single-isotypic" when its center is nontrivial and NumericalError when
// resampling is exhausted.
IsotypicSplit single_isotypic_split(const OperatorSubspace& t, double tol = 1e-8,
                                    uint64_t seed = 42);

struct TensorFactorization {
  std::vector<Cell> offsets;        // slot order
  std::vector<int> factor_dims;     // d_{V_y}
  Mat S;                            // W -> (x)_y V_y
  std::vector<double> residuals;    // per factor
  double unitarity_residual = 0;
};

// Algebras M_y listed in offset slot order, pairwise commuting, spanning End(W).
TensorFactorization tensor_factorize(const std::vector<Cell>& offsets,
                                     const std::vector<OperatorSubspace>& algebras, int w_dim,
                                     double tol = 1e-8, uint64_t seed = 42);

struct FactorizationCheck {
  std::vector<double> residuals;  // per factor
  double unitarity_residual = 0;
  double max_residual() const;
};

FactorizationCheck verify_factorization(const TensorFactorization& f,
                                        const std::vector<OperatorSubspace>& algebras);

// Conditional expectation of m onto End(V_p) (x) I for factor position p.
Mat factor_expectation(const Mat& m, const std::vector<int>& dims, int p);

}  // namespace qlga
