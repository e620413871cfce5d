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

#include "lindblad/fockspace.hpp"

namespace lindblad {

/// Q(t) = I - e^{Lt} e^{L^dag t}; Hermitian, Q(0) = 0, Q(inf) = I,
/// dQ/dt = 2 P(t) Gamma P^dag(t).
CMatrix q_matrix(const SystemSpec& spec, double t);

/// First-order superpropagator correction U1(t) = K+_{Q(t)} - 2 K0_{Q(t)} + K-_{Q(t)}.
SuperOpMatrix u1_superop(const FockSpace& fs, const SystemSpec& spec, double t);

/// U1(t) through the commutator route
///   K+_I - K-_I - e^{L0 t} (K+_I - K-_I) e^{-L0 t},
/// applied to a vectorized operator; agrees with u1_superop on the
/// truncation-safe subspace.
CVector u1_commutator_apply(const FockSpace& fs, const SystemSpec& spec, double t,
                            const CVector& v);

struct ApproxPropagation {
  CMatrix rho0_t;  // zero-temperature evolution of rho0
  CMatrix rho1_t;  // first-order correction, rho(t) ~ rho0_t + n_T rho1_t
};

/// Low-temperature propagation e^{Lt} ~ (I + n_T U1(t)) e^{L0 t}, with the
/// zero-temperature part evaluated through L0 = e^{-K-_I} L_d e^{K-_I}.
/// Requires photon support of rho0 to leave a 2-level margin below the cutoff.
ApproxPropagation approx_propagate(const FockSpace& fs, const SystemSpec& spec,
                                   const CMatrix& rho0, double t);

}  // namespace lindblad
