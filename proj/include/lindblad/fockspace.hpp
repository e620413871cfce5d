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

#include "lindblad/model.hpp"

#include <Eigen/SparseCore>
#include <vector>

namespace lindblad {

using SpMat = Eigen::SparseMatrix<Complex>;

/// Truncated multimode Fock basis: `cutoff` levels (0..cutoff-1) per mode,
/// flat index with mode 0 most significant. Ladder matrices are cached sparse.
class FockSpace {
 public:
  FockSpace(int n_modes, int cutoff);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }
  int dim() const { return dim_; }            // cutoff^n_modes
  int liouville_dim() const { return dim_ * dim_; }

  int flat_index(const std::vector<int>& multi) const;
  std::vector<int> multi_index(int flat) const;
  int total_photons(int flat) const;
  int max_level(int flat) const;  // highest occupied single-mode level

  const SpMat& a(int mode) const;
  const SpMat& a_dagger(int mode) const;

  /// Flat indices of basis kets with total photon number <= max_total.
  std::vector<int> kets_with_at_most(int max_total) const;

 private:
  int n_modes_, cutoff_, dim_;
  std::vector<SpMat> a_, adag_;
  std::vector<int> totals_, max_levels_;
};

/// Dense ladder pair (a, a^dag) for one mode, as Hilbert-space matrices.
std::pair<CMatrix, CMatrix> ladder(const FockSpace& fs, int mode);

// Row-stacking vectorization: vec(rho)[i*dim + j] = rho(i,j),
// so rho -> A rho B maps to (A kron B^T) vec(rho).
CVector vec_rowmajor(const CMatrix& rho);
CMatrix unvec_rowmajor(const CVector& v, int dim);

/// Jordan map J_A = sum_nm A_nm a_n^dag a_m (photon-number preserving).
CMatrix jordan_operator(const FockSpace& fs, const CMatrix& a_coef);

/// Dense superoperator on row-stacked vectorized operators.
struct SuperOpMatrix {
  int hilbert_dim = 0;
  CMatrix mat;  // (dim^2) x (dim^2)

  CMatrix apply(const CMatrix& rho) const;
  CVector apply_vec(const CVector& v) const { return mat * v; }
};

enum class AssocKind { K0, KPlus, KMinus, NMinus };

/// Sparse superoperators associated with a mode-space matrix A:
///   NMinus: rho -> J_A rho - rho J_A
///   K0:     rho -> 1/2 sum A_nm (a_n^dag a_m rho + rho a_m a_n^dag)
///   KPlus:  rho -> sum A_nm a_n^dag rho a_m
///   KMinus: rho -> sum A_nm a_m rho a_n^dag
SpMat superop_assoc_sparse(const FockSpace& fs, AssocKind kind, const CMatrix& a_coef);
SuperOpMatrix superop_assoc(const FockSpace& fs, AssocKind kind, const CMatrix& a_coef);

/// Liouvillian in the associated-matrix form
///   -i N_Omega + 2(K0_{Gamma0} + K+_{Gamma+} + K-_{Gamma-}) + TrGamma * Id.
SpMat liouvillian_sparse(const FockSpace& fs, const SystemSpec& spec);

/// Liouvillian assembled directly from the GKSL sum over modes
/// (trace-preserving in the truncated space; differs from the associated
/// form only on boundary rows where the truncated CCR fails).
SpMat liouvillian_gksl_sparse(const FockSpace& fs, const SystemSpec& spec);

/// Adjoint Liouvillian (Omega -> -Omega, gamma_± interchanged).
SpMat liouvillian_adjoint_sparse(const FockSpace& fs, const SystemSpec& spec);

/// Jump-free (diagonalized) Liouvillian -i N_Omega - 2 K0_Gamma + TrGamma * Id.
SpMat liouvillian_diag_sparse(const FockSpace& fs, const SystemSpec& spec);

/// Dense builder; asserts the GKSL and associated constructions agree
/// entrywise on interior columns (inputs clear of the boundary shell).
SuperOpMatrix build_liouvillian(const FockSpace& fs, const SystemSpec& spec);
SuperOpMatrix build_adjoint(const FockSpace& fs, const SystemSpec& spec);
SuperOpMatrix build_liouvillian_diag(const FockSpace& fs, const SystemSpec& spec);

/// e^{S t} v by scaling + truncated Taylor; accurate to ~1e-14 relative.
CVector apply_expm(const SpMat& s, const CVector& v, double t);
CVector apply_expm(const SuperOpMatrix& s, const CVector& v, double t);

struct PropagationResult {
  CMatrix rho_t;
  double boundary_mass = 0.0;   // Frobenius mass on components touching the top level
  bool truncation_warning = false;
};

/// rho_t = unvec(e^{L t} vec(rho0)); preserves trace/Hermiticity up to
/// truncation leakage, which is measured and reported.
PropagationResult oracle_propagate(const FockSpace& fs, const SpMat& liouville,
                                   const CMatrix& rho0, double t);
PropagationResult oracle_propagate(const FockSpace& fs, const SuperOpMatrix& liouville,
                                   const CMatrix& rho0, double t);

/// Action of e^{alpha K+_I} (finite in the truncated space, photon-raising)
/// and e^{alpha K-_I} (nilpotent, photon-lowering) on a vectorized operator.
CVector apply_exp_kplus(const FockSpace& fs, double alpha, const CVector& v);
CVector apply_exp_kminus(const FockSpace& fs, double alpha, const CVector& v);

enum class JumpOrdering { PlusMinus, MinusPlus };

/// Margin (extra Fock levels above the input's photon support) needed for the
/// materialized transforms to act faithfully to `tol` at temperature n_T.
int required_margin(double n_T, int max_photons, double tol);

struct JumpTransform {
  JumpOrdering ordering;
  double coef_plus;   // coefficient of K+_I in the transform
  double coef_minus;  // coefficient of K-_I
  SuperOpMatrix t_matrix;
  SuperOpMatrix t_inverse;
  double elimination_residual;  // from validate_jump_elimination at construction
};

/// Materializes T and T^{-1} (via T_{±∓}^{-1}(a,b) = T_{∓±}(-b,-a)) and
/// validates T L T^{-1} = L_d. Throws NumericalError when the cutoff leaves
/// insufficient margin above `max_photons` for the requested tolerance.
JumpTransform jump_transform(const FockSpace& fs, const ThermalRates& rates,
                             const CMatrix& omega, const CMatrix& gamma,
                             JumpOrdering ordering, int max_photons = 2,
                             double tol = 1e-10);

/// Residual of the jump-elimination identity T L T^{-1} = L_d, evaluated in
/// the numerically well-posed factorized forms
///   T_{+-} L = L_d T_{+-}   and   L T_{-+}^{-1} = T_{-+}^{-1} L_d
/// on basis operators with <= max_photons per side, compared away from the
/// one-level boundary shell (where the truncated CCR fails by construction).
/// Exact up to roundoff at any cutoff.
struct JumpEliminationReport {
  double residual_plus_minus = 0.0;
  double residual_minus_plus = 0.0;
  double scale = 0.0;  // max norm of the compared images
};
JumpEliminationReport validate_jump_elimination(const FockSpace& fs, const ThermalRates& rates,
                                                const CMatrix& omega, const CMatrix& gamma,
                                                int max_photons);

// ---- photon-difference sectors ------------------------------------------
// Every term of the Liouvillian conserves delta = (left total) - (right
// total) photons, so its matrix splits into independent sector blocks.

std::vector<int> sector_members(const FockSpace& fs, int delta);
SpMat sector_block(const SpMat& sup, const std::vector<int>& members);

struct EigenPairResult {
  Complex value;
  CVector vector;
  double residual;   // ||A x - mu x|| / max(1, |mu|)
  bool converged;
};

/// Inverse iteration with a fixed shift on a sparse sector block; returns the
/// eigenvalue nearest the shift with a residual certificate.
EigenPairResult nearest_eigenpair(const SpMat& a, Complex shift,
                                  int max_iter = 60, double tol = 1e-11);

/// Photon-number-preserving Fock lift of an invertible mode matrix M:
/// the operator with U|m> = prod_i (sum_j M_ji a_j^dag)^{m_i} |0> / sqrt(m!).
/// Exact on sectors with total photons <= cutoff-1.
CMatrix fock_lift(const FockSpace& fs, const CMatrix& m);

}  // namespace lindblad
