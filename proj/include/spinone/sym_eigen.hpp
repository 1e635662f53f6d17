#pragma once

#include "spinone/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spinone {

/// Eigen-decomposition of a real symmetric 3x3 matrix: values ascending,
/// vectors as orthonormal columns with a deterministic sign convention
/// (largest-magnitude component of each column is positive).
struct SymEigen3 {
  Vec3 values;
  Mat3 vectors;
};

namespace detail {

// Characteristic polynomial p(x) = x^3 - c2 x^2 + c1 x - c0.
struct CharPoly3 {
  double c2, c1, c0;

  double eval(double x) const { return ((x - c2) * x + c1) * x - c0; }
  double deriv(double x) const { return (3.0 * x - 2.0 * c2) * x + c1; }
};

inline CharPoly3 char_poly(const Mat3& a) {
  const double c2 = a.trace();
  const double c1 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) +
                    a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                    a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  const double c0 = a.determinant();
  return {c2, c1, c0};
}

// Roots of the characteristic polynomial by the trigonometric method for
// the shifted matrix B = A - (tr A / 3) I, followed by one Newton step per
// root. Returns ascending order.
inline Vec3 sym_eigs_trig(const Mat3& a) {
  const double q = a.trace() / 3.0;
  Mat3 b = a;
  b.diagonal().array() -= q;

  const double p2 = b.squaredNorm() / 6.0;
  const double p = std::sqrt(p2);
  const double scale = a.cwiseAbs().maxCoeff();
  if (p <= 1e-300 || p <= 1e-18 * std::max(1.0, scale)) {
    return {q, q, q};  // (near-)scalar matrix
  }

  double r = b.determinant() / (2.0 * p2 * p);
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;

  const double two_pi_3 = 2.0 * std::numbers::pi / 3.0;
  double hi = q + 2.0 * p * std::cos(phi);
  double lo = q + 2.0 * p * std::cos(phi + two_pi_3);
  double mid = 3.0 * q - hi - lo;

  // One Newton polish per root against the exact characteristic polynomial.
  const CharPoly3 cp = char_poly(a);
  const auto polish = [&cp](double x) {
    const double d = cp.deriv(x);
    if (std::abs(d) < 1e-14) return x;  // multiple root: leave the trig value
    return x - cp.eval(x) / d;
  };
  hi = polish(hi);
  mid = polish(mid);
  lo = polish(lo);

  Vec3 ev{lo, mid, hi};
  std::sort(ev.data(), ev.data() + 3);
  return ev;
}

// Deterministic orthonormal pair spanning the plane orthogonal to unit v.
inline void complement_basis(const Vec3& v, Vec3& s, Vec3& t) {
  int k = 0;
  if (std::abs(v.y()) < std::abs(v.x())) k = 1;
  if (std::abs(v.z()) < std::abs(v.coeff(k))) k = 2;
  Vec3 e = Vec3::Zero();
  e(k) = 1.0;
  s = v.cross(e).normalized();
  t = v.cross(s);
}

// Eigenvector of (a - lambda I) via the largest cross product of its rows;
// valid when lambda is well separated from the other two eigenvalues.
inline Vec3 isolated_eigenvector(const Mat3& a, double lambda) {
  Mat3 m = a;
  m.diagonal().array() -= lambda;
  const Vec3 r0 = m.row(0), r1 = m.row(1), r2 = m.row(2);
  Vec3 c01 = r0.cross(r1), c02 = r0.cross(r2), c12 = r1.cross(r2);
  double n01 = c01.squaredNorm(), n02 = c02.squaredNorm(),
         n12 = c12.squaredNorm();
  Vec3 best = c01;
  double nb = n01;
  if (n02 > nb) { best = c02; nb = n02; }
  if (n12 > nb) { best = c12; nb = n12; }
  if (nb <= 0.0) return Vec3::UnitX();  // fully degenerate; any direction
  return best / std::sqrt(nb);
}

inline void fix_column_sign(Mat3& v, int col) {
  int imax = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v(i, col)) > std::abs(v(imax, col))) imax = i;
  if (v(imax, col) < 0.0) v.col(col) = -v.col(col);
}

}  // namespace detail

/// Eigen-decomposition of a symmetric 3x3 matrix by the closed-form
/// trigonometric method with Newton polish. The eigenvector for the most
/// isolated eigenvalue comes from row cross products; the remaining pair is
/// solved in the orthogonal complement, whose 2x2 closed form is accurate to
/// rounding even when that pair is (near-)degenerate - the cubic formula
/// alone loses half the digits there. Residual ||Av - lambda v|| stays at
/// the 1e-15 * ||A|| level for |entries| = O(1).
inline SymEigen3 sym_eigen_3x3(const Mat3& m, Tolerance tol = {}) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  detail::require((m - m.transpose()).cwiseAbs().maxCoeff() <= tol.eps * scale,
                  "sym_eigen_3x3: matrix is not symmetric");
  const Mat3 a = 0.5 * (m + m.transpose());

  SymEigen3 out;
  const Vec3 trig = detail::sym_eigs_trig(a);

  const double gap_lo = trig(1) - trig(0);
  const double gap_hi = trig(2) - trig(1);
  if (std::max(gap_lo, gap_hi) <= 1e-14 * scale) {
    out.values = trig;  // triple eigenvalue
    out.vectors = Mat3::Identity();
    return out;
  }

  // Most isolated eigenvalue: index 0 if the low gap dominates, 2 otherwise.
  const int iso = gap_lo >= gap_hi ? 0 : 2;
  const Vec3 v_iso = detail::isolated_eigenvector(a, trig(iso));

  Vec3 s, t;
  detail::complement_basis(v_iso, s, t);
  // 2x2 restriction of a to span{s, t} carries the non-isolated pair.
  const double m00 = s.dot(a * s);
  const double m01 = s.dot(a * t);
  const double m11 = t.dot(a * t);

  double lam_a, lam_b;  // ascending non-isolated pair
  Vec3 v_a, v_b;
  if (std::abs(m01) <= 1e-18 * scale) {
    if (m00 <= m11) { lam_a = m00; lam_b = m11; v_a = s; v_b = t; }
    else            { lam_a = m11; lam_b = m00; v_a = t; v_b = s; }
  } else {
    const double half_tr = 0.5 * (m00 + m11);
    const double disc =
        std::sqrt(0.25 * (m00 - m11) * (m00 - m11) + m01 * m01);
    lam_a = half_tr - disc;
    lam_b = half_tr + disc;
    // Eigenvector of [[m00,m01],[m01,m11]]: the better-conditioned of the
    // two analytic forms.
    const double x1 = m01, y1 = lam_a - m00;
    const double x2 = lam_a - m11, y2 = m01;
    if (x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2)
      v_a = (x1 * s + y1 * t).normalized();
    else
      v_a = (x2 * s + y2 * t).normalized();
    v_b = v_iso.cross(v_a);  // orthogonal completion inside the plane
  }

  if (iso == 0) {
    out.values = {trig(0), lam_a, lam_b};
    out.vectors.col(0) = v_iso;
    out.vectors.col(1) = v_a;
    out.vectors.col(2) = v_b;
  } else {
    out.values = {lam_a, lam_b, trig(2)};
    out.vectors.col(0) = v_a;
    out.vectors.col(1) = v_b;
    out.vectors.col(2) = v_iso;
  }
  // The complement pair is computed independently of the cubic roots; restore
  // ascending order if rounding reordered a near tie.
  for (int c = 0; c < 2; ++c)
    for (int k = 0; k < 2 - c; ++k)
      if (out.values(k) > out.values(k + 1)) {
        std::swap(out.values(k), out.values(k + 1));
        out.vectors.col(k).swap(out.vectors.col(k + 1));
      }
  for (int c = 0; c < 3; ++c) detail::fix_column_sign(out.vectors, c);
  return out;
}

/// Eigenvalues only, ascending. Same values as sym_eigen_3x3 bit for bit.
inline Vec3 sym_eigs_3x3(const Mat3& m, Tolerance tol = {}) {
  return sym_eigen_3x3(m, tol).values;
}

}  // namespace spinone
