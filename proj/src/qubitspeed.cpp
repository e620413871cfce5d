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

#include "lindblad/qubitspeed.hpp"

#include <cmath>

namespace lindblad {

QubitState initial_qubit(double theta, double phi) {
  QubitState q;
  q.theta = theta;
  q.phi = phi;
  q.n_vec = Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                            std::cos(theta));
  q.r0 = 0.5 * pauli_combination(1.0, q.n_vec);
  return q;
}

FockSpace qubit_sector_space() { return FockSpace(2, 3); }

CVector qubit_ket(const QubitState& qubit) {
  const FockSpace fs = qubit_sector_space();
  CVector psi = CVector::Zero(fs.dim());
  psi(fs.flat_index({1, 0})) = std::cos(qubit.theta / 2.0);
  psi(fs.flat_index({0, 1})) =
      std::exp(Complex(0, 1) * qubit.phi) * std::sin(qubit.theta / 2.0);
  return psi;
}

namespace {

// K+_A rho = sum_nm A(n,m) a_n^dag rho a_m in the qubit sector space
CMatrix kplus_apply(const FockSpace& fs, const CMatrix& a_coef, const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(fs.dim(), fs.dim());
  for (int n = 0; n < fs.n_modes(); ++n)
    for (int m = 0; m < fs.n_modes(); ++m) {
      if (a_coef(n, m) != Complex(0, 0)) {
        out += a_coef(n, m) * CMatrix(fs.a_dagger(n) * rho * fs.a(m));
      }
    }
  return out;
}

CMatrix vacuum_projector(const FockSpace& fs) {
  CMatrix vac = CMatrix::Zero(fs.dim(), fs.dim());
  vac(0, 0) = 1.0;
  return vac;
}

struct ChannelFrame {
  CMatrix l;       // -i Omega - Gamma (2x2)
  CMatrix gamma;   // channel Gamma
  TwoModePropagator prop;
};

ChannelFrame frame_of(const TwoModeChannel& ch) {
  ChannelFrame f{CMatrix(), CMatrix(), two_mode_propagator(ch)};
  const CMatrix omega = ch.omega_matrix();
  f.gamma = ch.gamma_matrix();
  f.l = Complex(0, -1) * omega - f.gamma;
  return f;
}

struct TimeSlices {
  CMatrix r, r_dot;
  double r_scalar, r_scalar_dot;
  CMatrix q, q_dot;
  CMatrix v, v_dot;
  double v_scalar, v_scalar_dot;
};

TimeSlices slices_at(const TwoModeChannel& ch, const QubitState& qubit, double t) {
  const ChannelFrame f = frame_of(ch);
  const CMatrix p = f.prop.at(t);
  const CMatrix pd = p.adjoint();
  const CMatrix r1 = f.l * qubit.r0 + qubit.r0 * f.l.adjoint();
  TimeSlices s;
  s.r = p * qubit.r0 * pd;
  s.r_dot = p * r1 * pd;
  s.r_scalar = 1.0 - s.r.trace().real();
  s.r_scalar_dot = -s.r_dot.trace().real();
  s.q = CMatrix::Identity(2, 2) - p * pd;
  s.q_dot = 2.0 * p * f.gamma * pd;
  const Complex tr_r = s.r.trace();
  const Complex tr_q = s.q.trace();
  const Complex tr_rd = s.r_dot.trace();
  const Complex tr_qd = s.q_dot.trace();
  s.v = s.q - s.q * tr_r - s.r * tr_q - (s.r * s.q + s.q * s.r);
  s.v_dot = s.q_dot - s.q_dot * tr_r - s.q * tr_rd - s.r_dot * tr_q - s.r * tr_qd -
            (s.r_dot * s.q + s.q * s.r_dot) - (s.r * s.q_dot + s.q_dot * s.r);
  s.v_scalar = ((s.r * s.q).trace() + tr_r * tr_q - tr_q).real();
  s.v_scalar_dot =
      ((s.r_dot * s.q).trace() + (s.r * s.q_dot).trace() + tr_rd * tr_q + tr_r * tr_qd - tr_qd)
          .real();
  return s;
}

}  // namespace

CMatrix r1_matrix(const TwoModeChannel& ch, const QubitState& qubit) {
  const Eigen::Vector3d& w = ch.omega_vec();
  const Eigen::Vector3d& g = ch.gamma_vec();
  const Eigen::Vector3d& n = qubit.n_vec;
  const double c0 = -(ch.gamma0() + g.dot(n));
  const Eigen::Vector3d v = w.cross(n) - g - ch.gamma0() * n;
  return pauli_combination(c0, v);
}

ZeroTempState zero_temp_state(const TwoModeChannel& ch, const QubitState& qubit, double t) {
  if (t < 0) throw NumericalError("zero_temp_state: t must be nonnegative");
  const TimeSlices s = slices_at(ch, qubit, t);
  const FockSpace fs = qubit_sector_space();
  ZeroTempState out{s.r, s.r_scalar, CMatrix()};
  out.rho_t = kplus_apply(fs, s.r, vacuum_projector(fs)) + s.r_scalar * vacuum_projector(fs);
  return out;
}

CMatrix v0_operator(const TwoModeChannel& ch, const QubitState& qubit, double t) {
  const TimeSlices s = slices_at(ch, qubit, t);
  const FockSpace fs = qubit_sector_space();
  return kplus_apply(fs, s.r_dot, vacuum_projector(fs)) + s.r_scalar_dot * vacuum_projector(fs);
}

double v0_speed(const TwoModeChannel& ch, const QubitState& qubit, double t) {
  const TimeSlices s = slices_at(ch, qubit, t);
  return std::sqrt((s.r_dot * s.r_dot).trace().real() + s.r_scalar_dot * s.r_scalar_dot);
}

FirstOrderState first_order_state(const TwoModeChannel& ch, const QubitState& qubit, double t) {
  if (t < 0) throw NumericalError("first_order_state: t must be nonnegative");
  const TimeSlices s = slices_at(ch, qubit, t);
  const FockSpace fs = qubit_sector_space();
  const CMatrix vac = vacuum_projector(fs);
  FirstOrderState out;
  out.v_matrix = s.v;
  out.v_scalar = s.v_scalar;
  out.rho1_t = kplus_apply(fs, s.q, kplus_apply(fs, s.r, vac)) + kplus_apply(fs, s.v, vac) +
               s.v_scalar * vac;
  out.v1_op = kplus_apply(fs, s.q_dot, kplus_apply(fs, s.r, vac)) +
              kplus_apply(fs, s.q, kplus_apply(fs, s.r_dot, vac)) +
              kplus_apply(fs, s.v_dot, vac) + s.v_scalar_dot * vac;
  return out;
}

double total_speed(const TwoModeChannel& ch, const QubitState& qubit, double n_T, double t) {
  const CMatrix v0 = v0_operator(ch, qubit, t);
  if (n_T == 0.0) return hs_norm(v0);
  const CMatrix v1 = first_order_state(ch, qubit, t).v1_op;
  return hs_norm(v0 + n_T * v1);
}

SpeedTrace fidelity_qsl(const TwoModeChannel& ch, const QubitState& qubit, double n_T,
                        const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw NumericalError("fidelity_qsl: empty time grid");
  if (t_grid.front() != 0.0) throw NumericalError("fidelity_qsl: grid must start at t = 0");
  for (size_t k = 1; k < t_grid.size(); ++k) {
    if (t_grid[k] <= t_grid[k - 1]) throw NumericalError("fidelity_qsl: grid must increase");
  }
  const FockSpace fs = qubit_sector_space();
  const CVector psi = qubit_ket(qubit);
  SpeedTrace tr{{}, {}, {}, {}, {}, ch, qubit, n_T};
  tr.times = t_grid;
  for (double t : t_grid) {
    const CMatrix rho = zero_temp_state(ch, qubit, t).rho_t +
                        (n_T > 0 ? CMatrix(n_T * first_order_state(ch, qubit, t).rho1_t)
                                 : CMatrix(CMatrix::Zero(fs.dim(), fs.dim())));
    tr.v0.push_back(v0_speed(ch, qubit, t));
    tr.v.push_back(total_speed(ch, qubit, n_T, t));
    tr.fidelity.push_back((psi.adjoint() * rho * psi)(0).real());
  }
  // running trapezoidal mean of v, then t_F = (1 - F)/<v>_t
  tr.t_f.push_back(0.0);
  double integral = 0.0;
  for (size_t k = 1; k < t_grid.size(); ++k) {
    integral += 0.5 * (tr.v[k] + tr.v[k - 1]) * (t_grid[k] - t_grid[k - 1]);
    const double mean = integral / t_grid[k];
    tr.t_f.push_back(mean > 0 ? (1.0 - tr.fidelity[k]) / mean : 0.0);
  }
  return tr;
}

std::vector<SpeedTrace> sweep(const std::vector<TwoModeChannel>& family, const QubitState& qubit,
                              const std::vector<double>& n_T_list,
                              const std::vector<double>& t_grid) {
  std::vector<SpeedTrace> out;
  for (const auto& ch : family) {
    for (double n_T : n_T_list) {
      out.push_back(fidelity_qsl(ch, qubit, n_T, t_grid));
    }
  }
  return out;
}

}  // namespace lindblad
