#pragma once

// Shared generators and independent oracles for the test suite. Everything
// here must stay independent of the library code paths it is used to check:
// the cubic-root oracle goes through a companion matrix and Eigen's general
// (non-selfadjoint) solver, never through sym_eigen.hpp.

#include "spinone/rng.hpp"
#include "spinone/state.hpp"
#include "spinone/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace testutil {

using spinone::BlochPair;
using spinone::CMat3;
using spinone::Mat3;
using spinone::SeedStream;
using spinone::Vec3;

// Roots of x^3 - c2 x^2 + c1 x - c0 (all real for symmetric sources) via the
// companion matrix and unsymmetric QR iteration. Ascending real parts.
inline Vec3 companion_cubic_roots(double c2, double c1, double c0) {
  Mat3 companion = Mat3::Zero();
  companion(0, 2) = c0;
  companion(1, 2) = -c1;
  companion(2, 2) = c2;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  Eigen::EigenSolver<Mat3> solver(companion);
  Vec3 roots = solver.eigenvalues().real();
  std::sort(roots.data(), roots.data() + 3);
  return roots;
}

inline Vec3 companion_sym_eigs(const Mat3& a) {
  const double c2 = a.trace();
  const double c1 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) +
                    a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                    a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  const double c0 = a.determinant();
  return companion_cubic_roots(c2, c1, c0);
}

inline Mat3 random_symmetric(SeedStream& rng, double scale = 1.0) {
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = scale * rng.normal();
  return 0.5 * (a + a.transpose());
}

// Random W: symmetric with trace exactly 1.
inline Mat3 random_w(SeedStream& rng) {
  Mat3 w = random_symmetric(rng, 0.5);
  w.diagonal().array() += (1.0 - w.trace()) / 3.0;
  return w;
}

inline BlochPair random_bloch_pair(SeedStream& rng) {
  Vec3 u{rng.normal(), rng.normal(), rng.normal()};
  return {0.5 * u, random_w(rng)};
}

// Haar-ish random orthogonal matrix from QR of a Gaussian matrix, with the
// sign of R's diagonal fixed; half the draws get det flipped to -1.
inline Mat3 random_orthogonal(SeedStream& rng, bool allow_improper = true) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat3> qr(g);
  Mat3 q = qr.householderQ();
  const Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 3; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  if (allow_improper && (rng.bits() & 1)) q.col(0) = -q.col(0);
  return q;
}

// Random point of the mu-simplex with all mu in [-1, 1] (via uniform
// lambda' on the probability simplex and mu = 1 - 2 lambda').
inline Vec3 random_mu(SeedStream& rng) {
  double a = rng.uniform(), b = rng.uniform();
  if (a > b) std::swap(a, b);
  const Vec3 lam{a, b - a, 1.0 - b};
  return Vec3::Ones() - 2.0 * lam;
}

// Random mu with all components in (0, 1) (classical case-1 domain).
inline Vec3 random_mu_classical(SeedStream& rng) {
  double a = rng.uniform(), b = rng.uniform();
  if (a > b) std::swap(a, b);
  return {a, b - a, 1.0 - b};
}

inline Vec3 sorted_vec3(Vec3 v) {
  std::sort(v.data(), v.data() + 3);
  return v;
}

}  // namespace testutil
