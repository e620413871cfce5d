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

#include "lindblad/lowtemp.hpp"
#include "lindblad/spectral.hpp"

#include <cmath>

namespace lindblad {

CMatrix q_matrix(const SystemSpec& spec, double t) {
  if (t < 0) throw NumericalError("q_matrix: t must be nonnegative");
  const EffectiveMatrices eff = effective(spec);
  const CMatrix p = expm(CMatrix(eff.l * t));
  const int n = spec.n_modes();
  return CMatrix::Identity(n, n) - p * p.adjoint();
}

SuperOpMatrix u1_superop(const FockSpace& fs, const SystemSpec& spec, double t) {
  if (!spec.is_thermal()) throw NumericalError("u1_superop: thermal spec required");
  const CMatrix q = q_matrix(spec, t);
  SpMat u = superop_assoc_sparse(fs, AssocKind::KPlus, q);
  u -= 2.0 * superop_assoc_sparse(fs, AssocKind::K0, q);
  u += superop_assoc_sparse(fs, AssocKind::KMinus, q);
  return SuperOpMatrix{fs.dim(), CMatrix(u)};
}

namespace {

SystemSpec zero_temperature_of(const SystemSpec& spec) {
  return SystemSpec::thermal(spec.omega(), spec.gamma(), 0.0);
}

CVector apply_l0_exp(const FockSpace& fs, const SpMat& l_diag, const CVector& v, double t) {
  // e^{L0 t} = e^{-K-_I} e^{L_d t} e^{K-_I}
  CVector x = apply_exp_kminus(fs, 1.0, v);
  x = apply_expm(l_diag, x, t);
  return apply_exp_kminus(fs, -1.0, x);
}

int photon_support(const FockSpace& fs, const CMatrix& rho, double tol) {
  int support = 0;
  for (int i = 0; i < fs.dim(); ++i)
    for (int j = 0; j < fs.dim(); ++j) {
      if (std::abs(rho(i, j)) > tol) {
        support = std::max({support, fs.total_photons(i), fs.total_photons(j)});
      }
    }
  return support;
}

}  // namespace

CVector u1_commutator_apply(const FockSpace& fs, const SystemSpec& spec, double t,
                            const CVector& v) {
  const SystemSpec zt = zero_temperature_of(spec);
  const SpMat l_diag = liouvillian_diag_sparse(fs, zt);
  const CMatrix ident = CMatrix::Identity(fs.n_modes(), fs.n_modes());
  const SpMat kp = superop_assoc_sparse(fs, AssocKind::KPlus, ident);
  const SpMat km = superop_assoc_sparse(fs, AssocKind::KMinus, ident);
  const CVector direct = kp * v - km * v;
  CVector x = apply_l0_exp(fs, l_diag, v, -t);
  x = kp * x - km * x;
  x = apply_l0_exp(fs, l_diag, x, t);
  return direct - x;
}

ApproxPropagation approx_propagate(const FockSpace& fs, const SystemSpec& spec,
                                   const CMatrix& rho0, double t) {
  if (!spec.is_thermal()) throw NumericalError("approx_propagate: thermal spec required");
  if (rho0.rows() != fs.dim() || rho0.cols() != fs.dim()) {
    throw DimensionError("approx_propagate: state dimension mismatch");
  }
  const int support = photon_support(fs, rho0, 1e-14);
  if (support > fs.cutoff() - 1 - 2) {
    throw NumericalError("approx_propagate: photon support " + std::to_string(support) +
                         " leaves no 2-level margin below cutoff " + std::to_string(fs.cutoff()));
  }
  const SystemSpec zt = zero_temperature_of(spec);
  const SpMat l_diag = liouvillian_diag_sparse(fs, zt);
  const CVector rho0_t_vec = apply_l0_exp(fs, l_diag, vec_rowmajor(rho0), t);

  ApproxPropagation out;
  out.rho0_t = unvec_rowmajor(rho0_t_vec, fs.dim());
  out.rho1_t = u1_superop(fs, spec, t).apply(out.rho0_t);
  return out;
}

}  // namespace lindblad
