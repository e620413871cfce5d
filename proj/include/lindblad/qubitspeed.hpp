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

#include "lindblad/spectral.hpp"

namespace lindblad {

/// Pure polarization-qubit state: |psi> = cos(theta/2)|1H,0V> + e^{i phi} sin(theta/2)|0H,1V>,
/// R0 = (sigma_0 + (n, sigma))/2 is the rank-one Bloch projector.
struct QubitState {
  double theta;
  double phi;
  Eigen::Vector3d n_vec;
  CMatrix r0;
};

QubitState initial_qubit(double theta, double phi);

// All qubit-speed operators live in the exactly closed <=2-photon sector of a
// two-mode space; a cutoff of 3 levels per mode holds it without truncation.
FockSpace qubit_sector_space();

/// |psi_0> in that space.
CVector qubit_ket(const QubitState& qubit);

/// Zero-temperature state rho_0(t) = (K+_R + r)|vac><vac| with R = P R0 P^dag,
/// r = 1 - Tr R.
struct ZeroTempState {
  CMatrix r_matrix;
  double r_scalar;
  CMatrix rho_t;  // in qubit_sector_space()
};

ZeroTempState zero_temp_state(const TwoModeChannel& ch, const QubitState& qubit, double t);

/// R1 = L R0 + R0 L^dag = -(gamma0 + (gvec, n)) s0 + (wvec x n - gvec - gamma0 n, sigma).
CMatrix r1_matrix(const TwoModeChannel& ch, const QubitState& qubit);

/// Zero-temperature speed v0 = sqrt(Tr Rdot^2 + rdot^2), Rdot = P R1 P^dag.
double v0_speed(const TwoModeChannel& ch, const QubitState& qubit, double t);

/// The operator v0_hat = d rho_0/dt materialized in the qubit sector.
CMatrix v0_operator(const TwoModeChannel& ch, const QubitState& qubit, double t);

/// First-order thermal correction rho_1 = (K+_Q K+_R + K+_V + v)|vac><vac| with
/// V = Q - Q TrR - R TrQ - {R, Q}, v = Tr(RQ) + TrR TrQ - TrQ, and its time
/// derivative v1_hat (using Rdot = P R1 P^dag, Qdot = 2 P Gamma P^dag).
struct FirstOrderState {
  CMatrix v_matrix;
  double v_scalar;
  CMatrix rho1_t;
  CMatrix v1_op;
};

FirstOrderState first_order_state(const TwoModeChannel& ch, const QubitState& qubit, double t);

/// v(t) ~ || v0_hat + n_T v1_hat ||_HS; equals v0_speed at n_T = 0.
double total_speed(const TwoModeChannel& ch, const QubitState& qubit, double n_T, double t);

/// Time grid with speeds, fidelity and the QSL time for one (channel, n_T).
struct SpeedTrace {
  std::vector<double> times;
  std::vector<double> v0;
  std::vector<double> v;
  std::vector<double> fidelity;
  std::vector<double> t_f;
  TwoModeChannel channel;
  QubitState qubit;
  double n_T;
};

/// F(t) = <psi0| rho(t) |psi0> with rho ~ rho0 + n_T rho1; t_F = (1-F)/<v>_t
/// with the running mean by trapezoidal quadrature. Grid must start at 0 and
/// be strictly increasing.
SpeedTrace fidelity_qsl(const TwoModeChannel& ch, const QubitState& qubit, double n_T,
                        const std::vector<double>& t_grid);

/// One trace per (channel, n_T) pair, in input order.
std::vector<SpeedTrace> sweep(const std::vector<TwoModeChannel>& family, const QubitState& qubit,
                              const std::vector<double>& n_T_list,
                              const std::vector<double>& t_grid);

}  // namespace lindblad
