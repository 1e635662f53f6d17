#pragma once

#include "spinone/spin_operators.hpp"
#include "spinone/sym_eigen.hpp"
#include "spinone/types.hpp"

#include <cmath>

namespace spinone {

/// A 3x3 Hermitian unit-trace matrix. Positivity (membership in the physical
/// set) is a property tested by is_physical(), not an invariant of the type.
struct DensityMatrix {
  CMat3 m;
};

/// The coordinate pair (u, W): u_a = tr(rho J_a) and
/// W_ab = tr rho (Ja Jb + Jb Ja) - delta_ab, with W symmetric and tr W = 1.
struct BlochPair {
  Vec3 u;
  Mat3 w;
};

inline void validate_density(const CMat3& m, Tolerance tol = {}) {
  detail::require((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol.eps,
                  "density matrix is not Hermitian");
  detail::require(std::abs(m.trace().real() - 1.0) <= tol.eps &&
                      std::abs(m.trace().imag()) <= tol.eps,
                  "density matrix trace differs from 1");
}

inline DensityMatrix make_density_matrix(const CMat3& m, Tolerance tol = {}) {
  validate_density(m, tol);
  return {m};
}

inline void validate_bloch(const Vec3&, const Mat3& w, Tolerance tol = {}) {
  detail::require((w - w.transpose()).cwiseAbs().maxCoeff() <= tol.eps,
                  "W is not symmetric");
  detail::require(std::abs(w.trace() - 1.0) <= tol.eps,
                  "W trace differs from 1");
}

inline BlochPair make_bloch_pair(const Vec3& u, const Mat3& w,
                                 Tolerance tol = {}) {
  validate_bloch(u, w, tol);
  return {u, w};
}

/// Expansion of (u, W) over {I, J_a, (Ja Jb + Jb Ja)/2}:
///   rho = I/3 + u.J/2 + (1/2) sum_ab (W_ab - delta_ab/3) (Ja Jb + Jb Ja)/2.
/// Hermitian with unit trace by construction.
inline DensityMatrix rho_from_bloch(const BlochPair& bp, Tolerance tol = {}) {
  validate_bloch(bp.u, bp.w, tol);
  const auto& anti = detail::spin1_anticommutators();
  CMat3 rho = CMat3::Identity() / 3.0 + 0.5 * dot_j(bp.u);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double coeff = bp.w(a, b) - (a == b ? 1.0 / 3.0 : 0.0);
      rho += 0.25 * coeff * anti[a][b];
    }
  return {rho};
}

/// Coefficient extraction; exact inverse of rho_from_bloch.
inline BlochPair bloch_from_rho(const DensityMatrix& rho, Tolerance tol = {}) {
  validate_density(rho.m, tol);
  const auto& ops = spin1_operators();
  const auto& anti = detail::spin1_anticommutators();
  BlochPair bp;
  for (int a = 0; a < 3; ++a)
    bp.u(a) = (rho.m * ops.component(a)).trace().real();
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      const double w = (rho.m * anti[a][b]).trace().real() - (a == b ? 1.0 : 0.0);
      bp.w(a, b) = w;
      bp.w(b, a) = w;
    }
  return bp;
}

/// u and W transform with the same rotation: (u, W) -> (O u, O W O^T).
inline BlochPair rotate_state(const BlochPair& bp, const Mat3& o,
                              Tolerance tol = {}) {
  detail::require(
      (o.transpose() * o - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol.eps,
      "rotation matrix is not orthogonal");
  return {o * bp.u, o * bp.w * o.transpose()};
}

/// Basis in which W is diagonal: mu ascending, O orthogonal with
/// O W O^T = diag(mu) and u_frame = O u.
struct DiagonalFrame {
  Vec3 mu;
  Vec3 u_frame;
  Mat3 o;
};

inline DiagonalFrame diagonal_frame(const BlochPair& bp, Tolerance tol = {}) {
  validate_bloch(bp.u, bp.w, tol);
  const SymEigen3 eig = sym_eigen_3x3(bp.w, tol);
  DiagonalFrame f;
  f.mu = eig.values;
  f.o = eig.vectors.transpose();
  f.u_frame = f.o * bp.u;
  return f;
}

/// Projector onto the spin-1 coherent state along (theta, phi): the
/// eigenvector of n.J with eigenvalue +1 for
/// n = (sin t cos p, sin t sin p, cos t). Amplitudes in the (|1,1>, |1,0>,
/// |1,-1>) basis are (e^{-ip} cos^2(t/2), sin t / sqrt2, e^{ip} sin^2(t/2)).
inline DensityMatrix coherent_state(double theta, double phi) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  CVec3 psi;
  psi << std::polar(c * c, -phi),
         Complex(std::sqrt(2.0) * s * c, 0.0),
         std::polar(s * s, phi);
  return {psi * psi.adjoint()};
}

/// Gibbs state for H = Jz^2: diagonal (e^-b, 1, e^-b) / (1 + 2 e^-b),
/// computed in closed form. Both signs of beta are stable.
inline DensityMatrix thermal_state(double beta) {
  detail::require(std::isfinite(beta), "thermal_state: beta must be finite");
  double p, q;  // populations of |1,+-1> and of |1,0>
  if (beta >= 0.0) {
    const double x = std::exp(-beta);
    p = x / (1.0 + 2.0 * x);
    q = 1.0 / (1.0 + 2.0 * x);
  } else {
    const double y = std::exp(beta);
    p = 1.0 / (y + 2.0);
    q = y / (y + 2.0);
  }
  CMat3 rho = CMat3::Zero();
  rho(0, 0) = p;
  rho(1, 1) = q;
  rho(2, 2) = p;
  return {rho};
}

}  // namespace spinone
