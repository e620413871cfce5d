// Copyright 2026 The lindbladpp Authors
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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace lindblad {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Thrown for mismatched or non-square operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative or direct solver cannot produce a trustworthy result.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a solve requires a stable (left-half-plane) generator and the input is not.
struct StabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix is flagged defective (exceptional point) when the reciprocal
// condition number of its eigenvector matrix falls below this threshold.
inline constexpr double kDefectivenessThreshold = 1e-8;

// Absolute floor under all relative tolerances.
inline constexpr double kAbsTolFloor = 1e-14;

bool is_finite(const CMatrix& a);
void require_finite(const CMatrix& a, const std::string& what);
void require_square(const CMatrix& a, const std::string& what);
void require_same_shape(const CMatrix& a, const CMatrix& b, const std::string& what);

/// Matrix exponential e^A by scaling-and-squaring with Padé approximants,
/// degree selected from the 1-norm (degrees 3,5,7,9,13).
CMatrix expm(const CMatrix& a);

struct EigResult {
  CVector eigenvalues;
  CMatrix right_vectors;   // columns are unit-norm eigenvectors
  double defectiveness;    // reciprocal condition number of right_vectors, in [0,1]
  bool defective() const { return defectiveness < kDefectivenessThreshold; }
};

/// Full eigendecomposition with a defectiveness metric.
EigResult eig(const CMatrix& a);

/// Eigenvalues only (no vectors, no defectiveness).
CVector eigvals(const CMatrix& a);

/// Solves L W + W L^dag + 2 C = 0 by Kronecker vectorization.
/// Requires spec(L) strictly in the open left half-plane.
CMatrix solve_lyapunov(const CMatrix& l, const CMatrix& c);

/// Hilbert-Schmidt inner product Tr(A^dag B).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

/// Hilbert-Schmidt norm sqrt(Tr(A^dag A)).
double hs_norm(const CMatrix& a);

/// Principal logarithm of a Hermitian positive-definite matrix.
CMatrix logm_hpd(const CMatrix& a);

}  // namespace lindblad
