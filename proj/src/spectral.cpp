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

#include "lindblad/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace lindblad {

EffectiveMatrices effective(const SystemSpec& spec) {
  EffectiveMatrices out;
  out.h = spec.omega() - Complex(0, 1) * spec.gamma();
  out.l = Complex(0, -1) * out.h;
  out.n_modes = spec.n_modes();
  return out;
}

CMatrix semiclassical_matrix(const SystemSpec& spec) {
  return spec.omega() + Complex(0, 1) * spec.gamma_zero();
}

Complex semiclassical_offset(const SystemSpec& spec) {
  return Complex(0, -1) * spec.gamma_plus().trace();
}

namespace {

Complex q_parameter(const TwoModeChannel& ch) {
  Complex q2(0, 0);
  for (int k = 0; k < 3; ++k) {
    const Complex z(ch.gamma_vec()(k), ch.omega_vec()(k));
    q2 += z * z;
  }
  return std::sqrt(q2);
}

// sinh(z)/z, smooth through z = 0 (6-term series below the branch point).
Complex sinhc(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    Complex term(1, 0), sum(1, 0);
    const double denom[] = {6., 20., 42., 72., 110., 156.};
    for (double d : denom) {
      term *= z2 / d;
      sum += term;
    }
    return sum;
  }
  return std::sinh(z) / z;
}

}  // namespace

CMatrix TwoModePropagator::at(double t) const {
  const Complex qt = q * t;
  const Complex prefactor = std::exp(-(Complex(0, 1) * channel.omega0() + channel.gamma0()) * t);
  CMatrix vec_part = CMatrix::Zero(2, 2);
  for (int k = 0; k < 3; ++k) {
    vec_part += Complex(channel.gamma_vec()(k), channel.omega_vec()(k)) * pauli(k + 1);
  }
  return prefactor * (std::cosh(qt) * pauli(0) - (t * sinhc(qt)) * vec_part);
}

TwoModePropagator two_mode_propagator(const TwoModeChannel& ch) {
  TwoModePropagator out{ch, q_parameter(ch), false};
  const double scale2 = ch.gamma_vec().squaredNorm() + ch.omega_vec().squaredNorm();
  out.ep_flag = std::norm(out.q) <= 1e-14 * std::max(1.0, scale2);
  return out;
}

CMatrix two_mode_propagator(const TwoModeChannel& ch, double t) {
  if (t < 0) throw NumericalError("two_mode_propagator: t must be nonnegative");
  return two_mode_propagator(ch).at(t);
}

const char* regime_name(DynamicalRegime r) {
  switch (r) {
    case DynamicalRegime::Exponential: return "exponential";
    case DynamicalRegime::ExceptionalPoint: return "EP";
    case DynamicalRegime::Oscillatory: return "oscillatory";
    case DynamicalRegime::Mixed: return "mixed";
  }
  return "?";
}

EpClassification ep_classify(const TwoModeChannel& ch) {
  EpClassification out;
  Complex q2(0, 0);
  for (int k = 0; k < 3; ++k) {
    const Complex z(ch.gamma_vec()(k), ch.omega_vec()(k));
    q2 += z * z;
  }
  out.q = std::sqrt(q2);
  out.q_abs2 = std::abs(q2);
  const double scale2 = std::max(1.0, ch.gamma_vec().squaredNorm() + ch.omega_vec().squaredNorm());
  const CMatrix h = pauli_combination(ch.omega0(), ch.omega_vec()) -
                    Complex(0, 1) * pauli_combination(ch.gamma0(), ch.gamma_vec());
  out.defectiveness = eig(h).defectiveness;
  if (out.q_abs2 <= 1e-14 * scale2) {
    out.regime = DynamicalRegime::ExceptionalPoint;
  } else if (std::abs(q2.imag()) <= 1e-12 * out.q_abs2) {
    out.regime = q2.real() > 0 ? DynamicalRegime::Exponential : DynamicalRegime::Oscillatory;
  } else {
    out.regime = DynamicalRegime::Mixed;
  }
  return out;
}

namespace {

void enumerate_multi(int n_modes, int max_total, std::vector<int>& scratch, int mode, int used,
                     std::vector<std::vector<int>>& out) {
  if (mode == n_modes) {
    out.push_back(scratch);
    return;
  }
  for (int level = 0; level + used <= max_total; ++level) {
    scratch[mode] = level;
    enumerate_multi(n_modes, max_total, scratch, mode + 1, used + level, out);
  }
}

std::vector<std::vector<int>> multi_indices_up_to(int n_modes, int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> scratch(n_modes, 0);
  enumerate_multi(n_modes, max_total, scratch, 0, 0, out);
  return out;
}

// unit columns with the first non-negligible component rotated real positive
void normalize_columns(CMatrix& e) {
  for (Eigen::Index j = 0; j < e.cols(); ++j) {
    const double nrm = e.col(j).norm();
    if (nrm > 0) e.col(j) /= nrm;
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      const Complex z = e(i, j);
      if (std::abs(z) > 1e-12) {
        e.col(j) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
}

}  // namespace

SpectrumResult liouvillian_spectrum(const SystemSpec& spec, int max_photons) {
  const EffectiveMatrices eff = effective(spec);
  const EigResult es = eig(eff.l);
  SpectrumResult out;
  out.defectiveness = es.defectiveness;
  out.defective = es.defective();
  if (out.defective) {
    throw ExceptionalPointError(
        "liouvillian_spectrum: H is defective (reciprocal condition " +
        std::to_string(es.defectiveness) +
        "); the analytic spectrum is invalid at an exceptional point, use the "
        "propagator or oracle path");
  }
  out.mode_rates = es.eigenvalues;
  const int n = spec.n_modes();
  out.omega_d.resize(n);
  out.gamma_d.resize(n);
  for (int k = 0; k < n; ++k) {
    out.omega_d(k) = -es.eigenvalues(k).imag();
    out.gamma_d(k) = -es.eigenvalues(k).real();
  }
  out.diagonalizer = es.right_vectors;
  normalize_columns(out.diagonalizer);
  out.diagonalizer_inv = out.diagonalizer.partialPivLu().solve(CMatrix::Identity(n, n));

  const auto multis = multi_indices_up_to(n, max_photons);
  for (const auto& m : multis) {
    for (const auto& nn : multis) {
      Complex lambda(0, 0);
      for (int k = 0; k < n; ++k) {
        lambda += static_cast<double>(m[k]) * es.eigenvalues(k) +
                  static_cast<double>(nn[k]) * std::conj(es.eigenvalues(k));
      }
      out.lines.push_back({m, nn, lambda});
    }
  }
  std::sort(out.lines.begin(), out.lines.end(), [](const SpectralLine& a, const SpectralLine& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() > b.lambda.imag();
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });
  return out;
}

namespace {

double log_factorial(int n) {
  double acc = 0.0;
  for (int k = 2; k <= n; ++k) acc += std::log(static_cast<double>(k));
  return acc;
}

CMatrix matrix_power(const CMatrix& a, int p) {
  CMatrix out = CMatrix::Identity(a.rows(), a.cols());
  for (int k = 0; k < p; ++k) out = out * a;
  return out;
}

}  // namespace

SingleModeEigenoperators eigenoperators_single_mode(double omega, double gamma, double n_T,
                                                    int m, int n, int cutoff) {
  if (m < 0 || n < 0 || m > cutoff - 2 || n > cutoff - 2) {
    throw DimensionError("eigenoperators_single_mode: indices beyond safe cutoff");
  }
  const ThermalRates r = thermal_rates(n_T);
  const FockSpace fs(1, cutoff);
  const CMatrix a = CMatrix(fs.a(0));
  const CMatrix ad = CMatrix(fs.a_dagger(0));

  CMatrix rho0 = CMatrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) {
    rho0(k, k) = (k == 0) ? 1.0 : std::pow(r.exp_minus_zT, k);
  }

  SingleModeEigenoperators out;
  out.rho_mn = CMatrix::Zero(cutoff, cutoff);
  out.sigma_nm = CMatrix::Zero(cutoff, cutoff);
  const double log_mn = 0.5 * (log_factorial(m) + log_factorial(n));
  for (int k = 0; k <= std::min(m, n); ++k) {
    const double mag =
        std::exp(log_mn - log_factorial(k) - log_factorial(m - k) - log_factorial(n - k));
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    out.rho_mn += sgn * std::pow(r.Z, k) * mag * matrix_power(ad, m - k) * rho0 * matrix_power(a, n - k);
    out.sigma_nm += sgn * std::pow(n_T, k) * mag * matrix_power(ad, n - k) * matrix_power(a, m - k);
  }
  out.lambda = Complex(0, -1) * omega * static_cast<double>(m - n) -
               gamma * static_cast<double>(m + n);
  out.q_mn = std::pow(r.Z, m + n + 1);
  return out;
}

CMatrix steady_state(const SystemSpec& spec, const FockSpace& fs) {
  if (spec.n_modes() != fs.n_modes()) {
    throw DimensionError("steady_state: spec/FockSpace mode-count mismatch");
  }
  if (spec.is_thermal() && spec.n_T() == 0.0) {
    CMatrix vac = CMatrix::Zero(fs.dim(), fs.dim());
    vac(0, 0) = 1.0;
    return vac;
  }
  const EffectiveMatrices eff = effective(spec);
  const CMatrix w_plus = solve_lyapunov(eff.l, spec.gamma_plus());
  const CMatrix w_h = (w_plus + w_plus.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(w_h);
  if (es.eigenvalues().minCoeff() <= 0) {
    throw NumericalError("steady_state: W_+ not positive definite");
  }
  const CMatrix v_ss = logm_hpd(w_h.partialPivLu().solve(CMatrix::Identity(w_h.rows(), w_h.cols())) +
                                CMatrix::Identity(w_h.rows(), w_h.cols()));
  const CMatrix j = jordan_operator(fs, v_ss);
  CMatrix rho = expm(CMatrix(-j));
  rho /= rho.trace();
  // tail mass at the top level signals an inadequate cutoff for this n_T
  double tail = 0.0;
  for (int i = 0; i < fs.dim(); ++i) {
    if (fs.max_level(i) == fs.cutoff() - 1) tail += std::abs(rho(i, i));
  }
  if (tail > 1e-6) {
    throw NumericalError("steady_state: truncation leakage " + std::to_string(tail) +
                         " at the cutoff boundary; increase the cutoff");
  }
  return rho;
}

RiccatiSolution solve_riccati(const SystemSpec& spec) {
  const EffectiveMatrices eff = effective(spec);
  const int n = spec.n_modes();
  const CMatrix ident = CMatrix::Identity(n, n);
  RiccatiSolution out;
  out.w_plus = solve_lyapunov(eff.l, spec.gamma_plus());
  out.w_minus = solve_lyapunov(eff.l, spec.gamma_minus());

  const auto invert = [&](const CMatrix& m, const char* name) {
    Eigen::PartialPivLU<CMatrix> lu(m);
    const CMatrix inv = lu.solve(ident);
    if (!inv.allFinite() || (m * inv - ident).norm() > 1e-8 * static_cast<double>(n)) {
      throw NumericalError(std::string("solve_riccati: ") + name + " is numerically singular");
    }
    return inv;
  };

  const CMatrix w_minus_inv = invert(out.w_minus, "W_-");
  const CMatrix w_plus_inv = invert(out.w_plus, "W_+");
  out.a_plus = w_minus_inv - ident;
  out.a_minus = w_plus_inv + ident;
  out.b_plus = out.a_plus;
  // T_{-+} second matrix: Gamma_- + (i/2)[Omega', B_-] + 1/2 {Gamma_0', B_-} = 0
  // with Omega' = W_-^{-1} Omega W_-, Gamma_0' = -W_-^{-1} Gamma W_-; substituting
  // B_- = W_-^{-1} Y W_- reduces it to the Lyapunov equation in L^dag below.
  const CMatrix c_prime = out.w_minus * spec.gamma_minus() * w_minus_inv;
  const CMatrix y = solve_lyapunov(eff.l.adjoint(), c_prime);
  out.b_minus = w_minus_inv * y * out.w_minus;
  out.tpm_plus = -out.w_plus;
  out.tpm_minus = ident;
  const CMatrix w_plus_h = (out.w_plus + out.w_plus.adjoint()) / 2.0;
  out.v_ss = logm_hpd(w_plus_h.partialPivLu().solve(ident) + ident);
  out.gamma0_transformed = -w_minus_inv * spec.gamma() * out.w_minus;
  out.l_tilde = w_minus_inv * eff.l * out.w_minus;
  return out;
}

CMatrix effective_hamiltonian_propagator(const SystemSpec& spec, const FockSpace& fs, double t) {
  const EffectiveMatrices eff = effective(spec);
  return expm(CMatrix(jordan_operator(fs, eff.l) * t));
}

CMatrix eigenmode_evolution(const SystemSpec& spec, const FockSpace& fs,
                            const CMatrix& rho0, double t, int max_photons) {
  if (!spec.is_thermal()) {
    throw NumericalError("eigenmode_evolution: thermal spec required for the closed-form eigenoperators");
  }
  if (rho0.rows() != fs.dim() || rho0.cols() != fs.dim()) {
    throw DimensionError("eigenmode_evolution: state dimension mismatch");
  }
  const ThermalRates rates = thermal_rates(spec.n_T());
  const SpectrumResult spec_res = liouvillian_spectrum(spec, max_photons);  // throws at EPs
  const CMatrix& e_mat = spec_res.diagonalizer;
  const CMatrix& e_inv = spec_res.diagonalizer_inv;

  const CMatrix lift_e = fock_lift(fs, e_mat);        // e^{-V}
  const CMatrix lift_e_adj = lift_e.adjoint();
  const CMatrix lift_einv = fock_lift(fs, e_inv);     // e^{V}
  const CMatrix lift_einv_adj = lift_einv.adjoint();

  const CVector rho0_vec = vec_rowmajor(rho0);
  CVector acc = CVector::Zero(fs.liouville_dim());
  for (const auto& line : spec_res.lines) {
    CMatrix pi = CMatrix::Zero(fs.dim(), fs.dim());
    pi(fs.flat_index(line.m), fs.flat_index(line.n)) = 1.0;
    // rho_mn = e^{e^{-z_T} K+} e^{-Z K-} e^{-V} Pi e^{-V^dag}
    CVector rho_line = vec_rowmajor(CMatrix(lift_e * pi * lift_e_adj));
    rho_line = apply_exp_kminus(fs, -rates.Z, rho_line);
    rho_line = apply_exp_kplus(fs, rates.exp_minus_zT, rho_line);
    // sigma_nm = e^{K+} e^{-n_T K-} e^{V^dag} Pi_nm e^{V}
    CMatrix pi_nm = CMatrix::Zero(fs.dim(), fs.dim());
    pi_nm(fs.flat_index(line.n), fs.flat_index(line.m)) = 1.0;
    CVector sigma_line = vec_rowmajor(CMatrix(lift_einv_adj * pi_nm * lift_einv));
    sigma_line = apply_exp_kminus(fs, -rates.n_T, sigma_line);
    sigma_line = apply_exp_kplus(fs, 1.0, sigma_line);

    const CMatrix sigma_mat = unvec_rowmajor(sigma_line, fs.dim());
    const CMatrix rho_mat = unvec_rowmajor(rho_line, fs.dim());
    const Complex q_line = (sigma_mat * rho_mat).trace();
    if (std::abs(q_line) < 1e-12) {
      throw NumericalError("eigenmode_evolution: degenerate biorthogonality normalization");
    }
    const Complex coef = (sigma_mat * rho0).trace() / q_line;
    acc += std::exp(line.lambda * t) * coef * rho_line;
  }
  return unvec_rowmajor(acc, fs.dim());
}

}  // namespace lindblad
