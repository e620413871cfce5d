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

#include "lindblad/selftest.hpp"

#include "lindblad/lowtemp.hpp"
#include "lindblad/qubitspeed.hpp"
#include "lindblad/spectral.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace lindblad::selftest {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(6.283185307179586 * u2);
  have_spare_ = true;
  return mag * std::cos(6.283185307179586 * u2);
}

CMatrix random_matrix(Rng& rng, int n, double scale) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * rng.cnormal();
  return m;
}

CMatrix random_hermitian(Rng& rng, int n, double scale) {
  const CMatrix m = random_matrix(rng, n, scale);
  return (m + m.adjoint()) / 2.0;
}

CMatrix random_positive(Rng& rng, int n, double floor) {
  const CMatrix m = random_matrix(rng, n);
  return m * m.adjoint() / static_cast<double>(n) + floor * CMatrix::Identity(n, n);
}

SystemSpec random_thermal_spec(Rng& rng, int n_modes, double n_T) {
  return SystemSpec::thermal(random_hermitian(rng, n_modes), random_positive(rng, n_modes), n_T);
}

SystemSpec random_general_spec(Rng& rng, int n_modes) {
  const CMatrix omega = random_hermitian(rng, n_modes);
  const CMatrix gp = random_positive(rng, n_modes, 0.1);
  const CMatrix gap = random_positive(rng, n_modes, 0.3);
  return SystemSpec::general(omega, gp, CMatrix(gp + gap));
}

TwoModeChannel random_channel(Rng& rng) {
  const Eigen::Vector3d w(rng.normal(), rng.normal(), rng.normal());
  Eigen::Vector3d g(rng.normal(), rng.normal(), rng.normal());
  const double gamma0 = 1.0 + rng.uniform();
  if (g.norm() >= gamma0) g *= 0.9 * gamma0 / g.norm();
  return TwoModeChannel::cartesian(rng.normal(), w, gamma0, g);
}

void SuiteResult::check(bool ok, const std::string& what) {
  if (ok) {
    ++passed;
  } else {
    ++failed;
    failures.push_back(what);
  }
}

namespace {

std::string tagged(const std::string& what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  return os.str();
}

}  // namespace

SuiteResult matkernel_suite(std::uint64_t seed) {
  Rng rng(seed);
  SuiteResult r{"matkernel"};
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 5;
    CMatrix a = random_matrix(rng, n);
    const double nrm = a.norm();
    if (nrm > 10.0) a *= 10.0 / nrm;
    // expm(A) expm(-A) = I
    const CMatrix prod = expm(a) * expm(CMatrix(-a));
    const double inv_err = (prod - CMatrix::Identity(n, n)).norm();
    r.check(inv_err <= 1e-10 * std::max(1.0, expm(a).norm()), tagged("expm inverse identity", inv_err));
    // block-diagonal compatibility
    const CMatrix b = random_matrix(rng, 2);
    CMatrix blk = CMatrix::Zero(n + 2, n + 2);
    blk.topLeftCorner(n, n) = a;
    blk.bottomRightCorner(2, 2) = b;
    CMatrix eblk = CMatrix::Zero(n + 2, n + 2);
    eblk.topLeftCorner(n, n) = expm(a);
    eblk.bottomRightCorner(2, 2) = expm(b);
    const double blk_err = (expm(blk) - eblk).norm();
    r.check(blk_err <= 1e-10 * std::max(1.0, eblk.norm()), tagged("expm block-diagonal", blk_err));
    // eig reconstruction
    const EigResult es = eig(a);
    if (es.defectiveness > 1e-6) {
      const double rec = (a * es.right_vectors -
                          es.right_vectors * es.eigenvalues.asDiagonal().toDenseMatrix())
                             .norm();
      r.check(rec <= 1e-10 * std::max(1.0, a.norm()), tagged("eig reconstruction", rec));
    }
    // Lyapunov residual and Hermiticity
    const CMatrix gam = random_positive(rng, n);
    const CMatrix l = Complex(0, -1) * random_hermitian(rng, n) - gam;
    const CMatrix c = random_positive(rng, n, 0.0);
    const CMatrix w = solve_lyapunov(l, c);
    const double res = (l * w + w * l.adjoint() + 2.0 * c).norm();
    const double bound = 1e-10 * std::max(kAbsTolFloor, l.norm() * w.norm() + c.norm());
    r.check(res <= bound, tagged("lyapunov residual", res));
    r.check((w - w.adjoint()).norm() <= 1e-9 * std::max(1.0, w.norm()),
            tagged("lyapunov Hermiticity", (w - w.adjoint()).norm()));
  }
  return r;
}

SuiteResult model_suite(std::uint64_t seed) {
  Rng rng(seed);
  SuiteResult r{"model"};
  for (int trial = 0; trial < 20; ++trial) {
    const SystemSpec spec = (trial % 2 == 0) ? random_general_spec(rng, 2 + trial % 3)
                                             : random_thermal_spec(rng, 2 + trial % 3,
                                                                   rng.uniform(0.0, 1.0));
    const CMatrix l = Complex(0, -1) * spec.omega() - spec.gamma();
    const double err = (l + l.adjoint() + 2.0 * spec.gamma()).norm();
    r.check(err == 0.0, tagged("L + L^dag = -2 Gamma exactly", err));
    // channel round-trip
    const TwoModeChannel ch = random_channel(rng);
    const TwoModeChannel back = TwoModeChannel::angular(
        ch.omega0(), ch.omega_len(), ch.theta_omega(), ch.phi_omega(), ch.gamma0(),
        ch.gamma_len(), ch.theta_gamma(), ch.phi_gamma());
    const double rt = (back.omega_vec() - ch.omega_vec()).norm() +
                      (back.gamma_vec() - ch.gamma_vec()).norm();
    r.check(rt <= 1e-12 * std::max(1.0, ch.omega_len() + ch.gamma_len()),
            tagged("angular round-trip", rt));
    // Pauli decomposition recovers inputs
    const SystemSpec two = assemble_two_mode(ch, 0.1);
    double c0;
    Eigen::Vector3d v;
    pauli_decompose(two.omega(), c0, v);
    const double dec = std::abs(c0 - ch.omega0()) + (v - ch.omega_vec()).norm();
    r.check(dec <= 1e-12 * std::max(1.0, ch.omega_len()), tagged("pauli decomposition", dec));
  }
  return r;
}

namespace {

using ApplyFn = std::function<CVector(const CVector&)>;

double interior_diff(const FockSpace& fs, const CVector& x, const CVector& y, int shell) {
  double acc = 0.0;
  const int hi = fs.cutoff() - 1 - shell;
  for (int i = 0; i < fs.dim(); ++i) {
    if (fs.max_level(i) > hi) continue;
    for (int j = 0; j < fs.dim(); ++j) {
      if (fs.max_level(j) > hi) continue;
      acc += std::norm(x(i * fs.dim() + j) - y(i * fs.dim() + j));
    }
  }
  return std::sqrt(acc);
}

CVector basis_op(const FockSpace& fs, int i, int j) {
  CVector v = CVector::Zero(fs.liouville_dim());
  v(i * fs.dim() + j) = 1.0;
  return v;
}

CVector exp_assoc_apply(const FockSpace& fs, AssocKind kind, const CMatrix& b, double sign,
                        const CVector& v) {
  const SpMat gen = superop_assoc_sparse(fs, kind, b);
  CVector term = v, sum = v;
  for (int k = 1; k <= 4 * fs.cutoff() * fs.n_modes() + 8; ++k) {
    term = (gen * term) * (sign / k);
    if (term.norm() == 0.0) break;
    sum += term;
  }
  return sum;
}

}  // namespace

SuiteResult fockspace_suite(std::uint64_t seed) {
  Rng rng(seed);
  SuiteResult r{"fockspace"};
  const FockSpace fs(2, 5);
  const auto safe = fs.kets_with_at_most(fs.cutoff() - 3);  // total <= d-3

  const auto K = [&](AssocKind kind, const CMatrix& m) { return superop_assoc_sparse(fs, kind, m); };
  using AK = AssocKind;

  double worst_comm = 0.0, worst_conj = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    const CMatrix a = random_matrix(rng, 2);
    const CMatrix b = random_matrix(rng, 2);
    const CMatrix acomm = a * b - b * a;
    const CMatrix anti = a * b + b * a;

    struct Identity {
      SpMat lhs1, lhs2;  // commutator [lhs1, lhs2]
      SpMat rhs;
    };
    std::vector<Identity> comms;
    // [K0_A, K+_B] = +K+_{anti/2};  [K0_A, K-_B] = -K-_{anti/2}
    comms.push_back({K(AK::K0, a), K(AK::KPlus, b), K(AK::KPlus, CMatrix(anti / 2.0))});
    comms.push_back({K(AK::K0, a), K(AK::KMinus, b), SpMat(-1.0 * K(AK::KMinus, CMatrix(anti / 2.0)))});
    // [K-_A, K+_B] = K0_{anti} - N_{comm/2}
    comms.push_back({K(AK::KMinus, a), K(AK::KPlus, b),
                     SpMat(K(AK::K0, anti) - K(AK::NMinus, CMatrix(acomm / 2.0)))});
    // [N_A, K^s_B] = K^s_{comm}
    comms.push_back({K(AK::NMinus, a), K(AK::K0, b), K(AK::K0, acomm)});
    comms.push_back({K(AK::NMinus, a), K(AK::KPlus, b), K(AK::KPlus, acomm)});
    comms.push_back({K(AK::NMinus, a), K(AK::KMinus, b), K(AK::KMinus, acomm)});
    // [K0_A, K0_B] = N_{comm/4}
    comms.push_back({K(AK::K0, a), K(AK::K0, b), K(AK::NMinus, CMatrix(acomm / 4.0))});
    // [N_A, N_B] = N_{comm}
    comms.push_back({K(AK::NMinus, a), K(AK::NMinus, b), K(AK::NMinus, acomm)});
    // [K±_A, K±_B] = 0
    comms.push_back({K(AK::KPlus, a), K(AK::KPlus, b), SpMat(fs.liouville_dim(), fs.liouville_dim())});
    comms.push_back({K(AK::KMinus, a), K(AK::KMinus, b), SpMat(fs.liouville_dim(), fs.liouville_dim())});

    for (int i : safe) {
      for (int j : safe) {
        const CVector v = basis_op(fs, i, j);
        for (const auto& id : comms) {
          const CVector lhs = id.lhs1 * (id.lhs2 * v) - id.lhs2 * (id.lhs1 * v);
          const CVector rhs = id.rhs * v;
          worst_comm = std::max(worst_comm, (lhs - rhs).norm());
        }
        // conjugation identities, for both exponent signs
        for (int sgn = 0; sgn < 2; ++sgn) {
          const AK kp = sgn == 0 ? AK::KPlus : AK::KMinus;
          const AK km = sgn == 0 ? AK::KMinus : AK::KPlus;
          const double pm = sgn == 0 ? 1.0 : -1.0;
          const auto conj_apply = [&](const SpMat& x) {
            return exp_assoc_apply(fs, kp, b, 1.0, CVector(x * exp_assoc_apply(fs, kp, b, -1.0, v)));
          };
          // e^{K±_B} N_A e^{-K±_B} = N_A - K±_{[A,B]}
          CVector lhs = conj_apply(K(AK::NMinus, a));
          CVector rhs = K(AK::NMinus, a) * v - K(kp, acomm) * v;
          worst_conj = std::max(worst_conj, interior_diff(fs, lhs, rhs, 1));
          // e^{K±_B} K0_A e^{-K±_B} = K0_A ∓ K±_{anti/2}
          lhs = conj_apply(K(AK::K0, a));
          rhs = K(AK::K0, a) * v - pm * (K(kp, CMatrix(anti / 2.0)) * v);
          worst_conj = std::max(worst_conj, interior_diff(fs, lhs, rhs, 1));
          // e^{K±_B} K∓_A e^{-K±_B} = K∓_A ∓ K0_{anti} ± N_{[A,B]/2}·(sign conv) + K±_{BAB}
          lhs = conj_apply(K(km, a));
          rhs = K(km, a) * v - pm * (K(AK::K0, anti) * v) + K(AK::NMinus, CMatrix(acomm / 2.0)) * v +
                K(kp, CMatrix(b * a * b)) * v;
          worst_conj = std::max(worst_conj, interior_diff(fs, lhs, rhs, 1));
        }
      }
    }
  }
  r.check(worst_comm <= 1e-10, tagged("six commutation relations on safe subspace", worst_comm));
  r.check(worst_conj <= 1e-10, tagged("three conjugation identities on safe subspace", worst_conj));

  // trace preservation on interior columns
  const SystemSpec spec = random_thermal_spec(rng, 2, 0.4);
  const SpMat liou = liouvillian_sparse(fs, spec);
  CVector tr = CVector::Zero(fs.liouville_dim());
  for (int i = 0; i < fs.dim(); ++i) tr(i * fs.dim() + i) = 1.0;
  const CVector row = SpMat(liou.adjoint()) * tr;  // conj of vec(I)^T L
  double worst_trace = 0.0;
  for (int i : fs.kets_with_at_most(fs.cutoff() - 2)) {
    for (int j : fs.kets_with_at_most(fs.cutoff() - 2)) {
      worst_trace = std::max(worst_trace, std::abs(row(i * fs.dim() + j)));
    }
  }
  r.check(worst_trace <= 1e-12, tagged("trace preservation (boundary rows excluded)", worst_trace));

  // zero-temperature invariance of photon-number support
  const SystemSpec zt = SystemSpec::thermal(spec.omega(), spec.gamma(), 0.0);
  const SpMat l0 = liouvillian_sparse(fs, zt);
  double leak = 0.0;
  for (int i : fs.kets_with_at_most(2)) {
    for (int j : fs.kets_with_at_most(2)) {
      const int kmax = std::max(fs.total_photons(i), fs.total_photons(j));
      const CVector img = l0 * basis_op(fs, i, j);
      for (int p = 0; p < fs.dim(); ++p)
        for (int q = 0; q < fs.dim(); ++q) {
          if (std::max(fs.total_photons(p), fs.total_photons(q)) > kmax) {
            leak = std::max(leak, std::abs(img(p * fs.dim() + q)));
          }
        }
    }
  }
  r.check(leak == 0.0, tagged("zero-temperature Liouvillian keeps photon support", leak));

  // jump elimination identity at the validation cutoff
  for (double n_T : {0.0, 0.1, 0.5}) {
    const auto rates = thermal_rates(n_T);
    const auto rep = validate_jump_elimination(fs, rates, spec.omega(), spec.gamma(), 2);
    const double res = std::max(rep.residual_plus_minus, rep.residual_minus_plus);
    r.check(res <= 1e-10 * std::max(1.0, rep.scale),
            tagged("jump elimination n_T=" + std::to_string(n_T), res));
  }
  return r;
}

SuiteResult spectral_suite(std::uint64_t seed) {
  Rng rng(seed);
  SuiteResult r{"spectral"};
  // 2 integral PGammaP^dag d tau = I as solve_lyapunov(L, Gamma) = I, 30 random specs
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const SystemSpec spec = (trial % 2 == 0) ? random_general_spec(rng, 2 + trial % 3)
                                             : random_thermal_spec(rng, 2 + trial % 3,
                                                                   rng.uniform(0.0, 1.5));
    const EffectiveMatrices eff = effective(spec);
    const CMatrix w = solve_lyapunov(eff.l, spec.gamma());
    worst = std::max(worst, (w - CMatrix::Identity(w.rows(), w.cols())).norm());
  }
  r.check(worst <= 1e-10, tagged("2 int P Gamma P^dag = I (30 specs)", worst));

  // spectrum symmetry and closure
  for (int trial = 0; trial < 5; ++trial) {
    const SystemSpec spec = random_thermal_spec(rng, 2, 0.2);
    const auto sr = liouvillian_spectrum(spec, 2);
    double sym = 0.0, repos = 0.0;
    bool zero_found = false;
    for (const auto& line : sr.lines) {
      repos = std::max(repos, line.lambda.real());
      if (line.m == std::vector<int>{0, 0} && line.n == std::vector<int>{0, 0}) {
        zero_found = std::abs(line.lambda) == 0.0;
      }
      // conjugate partner
      double best = 1e300;
      for (const auto& other : sr.lines) {
        if (other.m == line.n && other.n == line.m) {
          best = std::abs(other.lambda - std::conj(line.lambda));
        }
      }
      sym = std::max(sym, best);
    }
    r.check(sym <= 1e-12, tagged("spectrum conjugation symmetry", sym));
    r.check(repos <= 1e-12, tagged("Re lambda <= 0", repos));
    r.check(zero_found, "lambda_00 = 0 present");
  }

  // EP continuity of the closed form P(t)
  {
    const double g = 0.9;
    const TwoModeChannel ep = TwoModeChannel::cartesian(0.3, {0, 0, g}, 1.0, {g, 0, 0});
    const auto p0 = two_mode_propagator(ep);
    double prev = 1e300;
    bool shrinking = true;
    for (double delta : {1e-3, 1e-5, 1e-7}) {
      const TwoModeChannel near_ep =
          TwoModeChannel::cartesian(0.3, {0, 0, g * (1 + delta)}, 1.0, {g, 0, 0});
      const auto p1 = two_mode_propagator(near_ep);
      double dist = 0.0;
      for (int k = 0; k <= 50; ++k) {
        const double t = 10.0 * k / 50.0;
        dist = std::max(dist, (p1.at(t) - p0.at(t)).norm());
      }
      shrinking = shrinking && dist < prev;
      prev = dist;
    }
    r.check(shrinking && prev <= 1e-5, tagged("P(t) continuity across q -> 0", prev));
    r.check(p0.ep_flag, "EP flag at q = 0");
  }

  // defectiveness: flagged on the EP manifold, clear off it
  {
    const double g = 0.9;
    int misflags = 0;
    for (int k = 0; k < 40; ++k) {
      const double omega = 3.0 * g * (k + 0.5) / 40.0;
      const TwoModeChannel ch = TwoModeChannel::cartesian(0.0, {0, 0, omega}, 1.0, {g, 0, 0});
      const auto cls = ep_classify(ch);
      const bool on_manifold = std::abs(omega - g) < 1e-3;
      if (!on_manifold && cls.defectiveness < kDefectivenessThreshold) ++misflags;
    }
    const auto at_ep = ep_classify(TwoModeChannel::cartesian(0.0, {0, 0, g}, 1.0, {g, 0, 0}));
    r.check(misflags == 0, tagged("no defectiveness off the EP manifold", misflags));
    r.check(at_ep.defectiveness < kDefectivenessThreshold, tagged("defective at EP", at_ep.defectiveness));
  }

  // semiclassical Hamiltonian equals H at n_T = 0
  {
    const TwoModeChannel ch = random_channel(rng);
    const SystemSpec spec = assemble_two_mode(ch, 0.0);
    const double diff = (semiclassical_matrix(spec) - effective(spec).h).norm();
    r.check(diff == 0.0, tagged("H_eff^(0) = H at n_T = 0", diff));
  }

  // Riccati package invariants
  for (int trial = 0; trial < 6; ++trial) {
    const SystemSpec spec = (trial % 2 == 0) ? random_general_spec(rng, 2)
                                             : random_thermal_spec(rng, 2, 0.25 + 0.5 * trial / 6.0);
    const auto ric = solve_riccati(spec);
    const int n = spec.n_modes();
    const CMatrix ident = CMatrix::Identity(n, n);
    r.check((ric.w_plus - (ric.w_minus - ident)).norm() <= 1e-10 * std::max(1.0, ric.w_minus.norm()),
            "W_+ = W_- - I");
    r.check((ric.a_minus + ric.a_plus.partialPivLu().solve(ident)).norm() <=
                1e-10 * std::max(1.0, ric.a_minus.norm()),
            "A_{-nu} = -A_nu^{-1}");
    // quadratic Riccati equation for A_+ (nu = +1):
    //   Gamma_+ + i/2 [Omega, A] - 1/2 {Gamma_0, A} + A Gamma_- A = 0
    const CMatrix a = ric.a_plus;
    const CMatrix res = spec.gamma_plus() +
                        Complex(0, 0.5) * (spec.omega() * a - a * spec.omega()) -
                        0.5 * (spec.gamma_zero() * a + a * spec.gamma_zero()) +
                        a * spec.gamma_minus() * a;
    r.check(res.norm() <= 1e-10 * std::max(1.0, a.norm()), tagged("Riccati equation residual", res.norm()));
    // B_- solves Gamma_- + i/2 [Omega', B] + 1/2 {Gamma_0', B} = 0
    const CMatrix winv = ric.w_minus.partialPivLu().solve(ident);
    const CMatrix omega_p = winv * spec.omega() * ric.w_minus;
    const CMatrix res_b = spec.gamma_minus() +
                          Complex(0, 0.5) * (omega_p * ric.b_minus - ric.b_minus * omega_p) +
                          0.5 * (ric.gamma0_transformed * ric.b_minus + ric.b_minus * ric.gamma0_transformed);
    r.check(res_b.norm() <= 1e-9 * std::max(1.0, ric.b_minus.norm()),
            tagged("B_- elimination equation", res_b.norm()));
    // spectral equivalence of L and L_tilde
    const CVector s1 = eigvals(effective(spec).l);
    const CVector s2 = eigvals(ric.l_tilde);
    double match = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = 1e300;
      for (int j = 0; j < n; ++j) best = std::min(best, std::abs(s1(i) - s2(j)));
      match = std::max(match, best);
    }
    r.check(match <= 1e-9, tagged("spec(L) = spec(L~)", match));
    // e^{V_ss} = W_+^{-1} + I
    const CMatrix lhs = expm(ric.v_ss);
    const CMatrix rhs = ric.w_plus.partialPivLu().solve(ident) + ident;
    r.check((lhs - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()), "e^{V_ss} = W_+^{-1} + I");
  }
  return r;
}

SuiteResult lowtemp_suite(std::uint64_t seed) {
  Rng rng(seed);
  SuiteResult r{"lowtemp"};
  const FockSpace fs(2, 5);
  for (int trial = 0; trial < 4; ++trial) {
    const TwoModeChannel ch = random_channel(rng);
    const double n_T = rng.uniform(0.02, 0.3);
    const SystemSpec spec = assemble_two_mode(ch, n_T);
    // Q invariants
    const CMatrix q0 = q_matrix(spec, 0.0);
    r.check(q0.norm() == 0.0, "Q(0) = 0");
    const double t = rng.uniform(0.2, 2.0);
    const CMatrix q = q_matrix(spec, t);
    r.check((q - q.adjoint()).norm() <= 1e-12 * std::max(1.0, q.norm()), "Q Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es((q + q.adjoint()) / 2.0);
    r.check(es.eigenvalues().minCoeff() >= -1e-12 && es.eigenvalues().maxCoeff() <= 1.0 + 1e-12,
            "Q eigenvalues in [0, 1]");
    const CMatrix q_inf = q_matrix(spec, 200.0 / ch.gamma0());
    r.check((q_inf - CMatrix::Identity(2, 2)).norm() <= 1e-8, "Q(inf) = I");
    // dQ/dt = 2 P Gamma P^dag by central differences
    const double h = 1e-6;
    const CMatrix fd = (q_matrix(spec, t + h) - q_matrix(spec, t - h)) / (2.0 * h);
    const EffectiveMatrices eff = effective(spec);
    const CMatrix p = expm(CMatrix(eff.l * t));
    const CMatrix closed = 2.0 * p * spec.gamma() * p.adjoint();
    r.check((fd - closed).norm() <= 1e-6 * std::max(1.0, closed.norm()),
            tagged("dQ/dt = 2 P Gamma P^dag", (fd - closed).norm()));

    // U1 route agreement on safe inputs
    const SuperOpMatrix u1 = u1_superop(fs, spec, t);
    double route_diff = 0.0;
    for (int i : fs.kets_with_at_most(2)) {
      for (int j : fs.kets_with_at_most(2)) {
        CVector v = CVector::Zero(fs.liouville_dim());
        v(i * fs.dim() + j) = 1.0;
        route_diff = std::max(route_diff,
                              (u1.mat * v - u1_commutator_apply(fs, spec, t, v)).norm());
      }
    }
    r.check(route_diff <= 1e-9, tagged("U1 commutator route", route_diff));

    // correction is traceless and Hermitian for a qubit state
    const QubitState qb = initial_qubit(rng.uniform(0.0, 3.14159), rng.uniform(0.0, 6.28));
    const FockSpace fs4(2, 4);
    CMatrix rho0 = CMatrix::Zero(fs4.dim(), fs4.dim());
    const CVector psi = [&] {
      CVector p4 = CVector::Zero(fs4.dim());
      p4(fs4.flat_index({1, 0})) = std::cos(qb.theta / 2.0);
      p4(fs4.flat_index({0, 1})) = std::exp(Complex(0, 1) * qb.phi) * std::sin(qb.theta / 2.0);
      return p4;
    }();
    rho0 = psi * psi.adjoint();
    const auto ap = approx_propagate(fs4, spec, rho0, t);
    r.check(std::abs(ap.rho1_t.trace()) <= 1e-11, tagged("Tr rho_1 = 0", std::abs(ap.rho1_t.trace())));
    r.check((ap.rho1_t - ap.rho1_t.adjoint()).norm() <= 1e-11, "rho_1 Hermitian");
    r.check(std::abs(ap.rho0_t.trace() - 1.0) <= 1e-11, "zero-temperature part preserves trace");
  }
  return r;
}

SuiteResult qubitspeed_suite(std::uint64_t seed) {
  Rng rng(seed);
  SuiteResult r{"qubitspeed"};
  for (int trial = 0; trial < 4; ++trial) {
    const TwoModeChannel base = random_channel(rng);
    const QubitState qb = initial_qubit(rng.uniform(0.0, 3.14159), rng.uniform(0.0, 6.28));
    const double t = rng.uniform(0.1, 3.0);
    // omega0 has no effect on the speed
    double v_ref = -1.0, worst = 0.0;
    for (double w0 : {0.0, 1.0, 10.0}) {
      const TwoModeChannel ch =
          TwoModeChannel::cartesian(w0, base.omega_vec(), base.gamma0(), base.gamma_vec());
      const double v = total_speed(ch, qb, 0.2, t);
      if (v_ref < 0) v_ref = v;
      worst = std::max(worst, std::abs(v - v_ref));
    }
    r.check(worst <= 1e-12 * std::max(1.0, v_ref), tagged("omega0 invariance", worst));

    // v0_hat and v1_hat Hermitian traceless
    const CMatrix v0 = v0_operator(base, qb, t);
    const CMatrix v1 = first_order_state(base, qb, t).v1_op;
    r.check((v0 - v0.adjoint()).norm() <= 1e-12 && std::abs(v0.trace()) <= 1e-12,
            "v0_hat Hermitian traceless");
    r.check((v1 - v1.adjoint()).norm() <= 1e-11 && std::abs(v1.trace()) <= 1e-11,
            "v1_hat Hermitian traceless");

    // R1 closed form vs direct L R0 + R0 L^dag
    const CMatrix omega = base.omega_matrix();
    const CMatrix gamma = base.gamma_matrix();
    const CMatrix l = Complex(0, -1) * omega - gamma;
    const CMatrix direct = l * qb.r0 + qb.r0 * l.adjoint();
    r.check((r1_matrix(base, qb) - direct).norm() <= 1e-12 * std::max(1.0, direct.norm()),
            "R1 Pauli closed form");

    // closed-form speed vs finite differences of the materialized state
    const double h = 1e-6;
    const FockSpace fs = qubit_sector_space();
    const CMatrix rp = zero_temp_state(base, qb, t + h).rho_t;
    const CMatrix rm = zero_temp_state(base, qb, t - h).rho_t;
    const double v_fd = hs_norm(CMatrix((rp - rm) / (2.0 * h)));
    const double v_cl = v0_speed(base, qb, t);
    r.check(std::abs(v_fd - v_cl) <= 1e-5 * std::max(1e-6, v_cl),
            tagged("v0 vs finite differences", std::abs(v_fd - v_cl)));

    // QSL inequalities on a grid
    std::vector<double> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back(5.0 * k / 40.0);
    const auto trace = fidelity_qsl(base, qb, 0.1, grid);
    r.check(std::abs(trace.fidelity.front() - 1.0) <= 1e-12, "F(0) = 1");
    bool qsl_ok = true, bound_ok = true;
    for (size_t k = 0; k < grid.size(); ++k) {
      if (grid[k] + 1e-9 < trace.t_f[k]) qsl_ok = false;
      if (k > 0 && k + 1 < grid.size()) {
        const double dfdt =
            (trace.fidelity[k + 1] - trace.fidelity[k - 1]) / (grid[k + 1] - grid[k - 1]);
        // discrete derivative: allow quadrature slack
        if (std::abs(dfdt) > trace.v[k] + 0.02 * (trace.v[k - 1] + trace.v[k + 1]) + 1e-9) {
          bound_ok = false;
        }
      }
    }
    r.check(qsl_ok, "t >= t_F(t)");
    r.check(bound_ok, "|dF/dt| <= v(t)");
  }
  return r;
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
  return {matkernel_suite(seed),      model_suite(seed + 1),  fockspace_suite(seed + 2),
          spectral_suite(seed + 3),   lowtemp_suite(seed + 4), qubitspeed_suite(seed + 5)};
}

}  // namespace lindblad::selftest
