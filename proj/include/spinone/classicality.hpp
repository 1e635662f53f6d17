#pragma once

#include "spinone/state.hpp"
#include "spinone/sym_eigen.hpp"
#include "spinone/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spinone {

/// The classicality witness matrix Z = W - u u^T. A state in the physical set
/// is classical exactly when Z >= 0; tr Z = 1 - |u|^2.
struct ZMatrix {
  Mat3 z;
};

inline ZMatrix z_matrix(const BlochPair& bp) {
  return {bp.w - bp.u * bp.u.transpose()};
}

namespace detail {

inline Vec3 hermitian_eigs(const CMat3& m) {
  Eigen::SelfAdjointEigenSolver<CMat3> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// Verdict for "all of these quantities are >= 0", each with the same
// absolute band. Outside as soon as one falls below -eps.
inline Verdict verdict_all_nonneg(std::initializer_list<double> qs,
                                  Tolerance tol) {
  Verdict v = Verdict::Inside;
  for (double q : qs) {
    if (q < -tol.eps) return Verdict::Outside;
    if (q <= tol.eps) v = Verdict::Boundary;
  }
  return v;
}

// Strict Inside-vs-Outside conflicts are bugs; anything touching the band is
// legitimate disagreement between routes with different scales.
inline void check_route_agreement(Verdict a, Verdict b, const char* what) {
  const bool conflict =
      (a == Verdict::Inside && b == Verdict::Outside) ||
      (a == Verdict::Outside && b == Verdict::Inside);
  if (conflict) throw InternalCheckError(what);
}

}  // namespace detail

struct PhysicalityDetails {
  Verdict verdict;
  Vec3 rho_eigs;       // ascending eigenvalues of rho
  double a_quantity;   // 1 - |u|^2 + (1 - tr W^2)/2, the sphere condition
  double det_form;     // <u|W|u> - |u|^2 + (1 - tr W^2)/2 - det W  (= 8 det rho)
};

/// Membership in the physical set. The deciding route is the Descartes sign
/// pair on the characteristic polynomial of rho (both coefficient quantities
/// nonnegative); the eigenvalue route must agree or the call throws.
inline PhysicalityDetails is_physical(const BlochPair& bp, Tolerance tol = {}) {
  validate_bloch(bp.u, bp.w, tol);
  PhysicalityDetails d;
  const double u2 = bp.u.squaredNorm();
  const double trw2 = bp.w.squaredNorm();
  d.a_quantity = 1.0 - u2 + 0.5 * (1.0 - trw2);
  d.det_form = bp.u.dot(bp.w * bp.u) - u2 + 0.5 * (1.0 - trw2) -
               bp.w.determinant();
  d.verdict = detail::verdict_all_nonneg({d.a_quantity, d.det_form}, tol);

  d.rho_eigs = detail::hermitian_eigs(rho_from_bloch(bp, tol).m);
  const Verdict eig_verdict = verdict_from_min(d.rho_eigs(0), tol);
  detail::check_route_agreement(d.verdict, eig_verdict,
                                "is_physical: Descartes pair and eigenvalue "
                                "check disagree");
  return d;
}

struct ClassicalityDetails {
  Verdict verdict;
  Vec3 z_eigs;                     // ascending eigenvalues of Z
  double tr_z, tr_z2_gap, det_z;   // Descartes triple; middle entry is
                                   // (tr Z)^2 - tr Z^2
};

/// Membership in the classical set, defined only inside the physical set:
/// a non-physical input throws NotPhysicalError rather than reporting
/// "quantum". lambda_min(Z) decides; the Descartes triple evaluated from
/// (u, W) is a mandatory cross-check.
inline ClassicalityDetails is_classical(const BlochPair& bp,
                                        Tolerance tol = {}) {
  if (is_physical(bp, tol).verdict == Verdict::Outside)
    throw NotPhysicalError("is_classical: state is not physical");

  ClassicalityDetails d;
  d.z_eigs = sym_eigs_3x3(z_matrix(bp).z, tol);
  d.verdict = verdict_from_min(d.z_eigs(0), tol);

  const double u2 = bp.u.squaredNorm();
  d.tr_z = 1.0 - u2;
  const double tr_z2 = bp.w.squaredNorm() - 2.0 * bp.u.dot(bp.w * bp.u) +
                       u2 * u2;
  d.tr_z2_gap = d.tr_z * d.tr_z - tr_z2;
  d.det_z = (bp.w - bp.u * bp.u.transpose()).determinant();

  const Verdict triple =
      detail::verdict_all_nonneg({d.tr_z, d.tr_z2_gap, d.det_z}, tol);
  detail::check_route_agreement(d.verdict, triple,
                                "is_classical: eigenvalue verdict and "
                                "Descartes triple disagree");
  return d;
}

/// The direction t minimizing the witness Q_t = t^T Z t, i.e. the lowest
/// eigenpair of Z. Negative q_min certifies non-classicality.
struct QuantumnessWitness {
  double q_min;
  Vec3 direction;  // unit vector achieving q_min
};

inline QuantumnessWitness min_quantumness_direction(const BlochPair& bp) {
  const SymEigen3 eig = sym_eigen_3x3(z_matrix(bp).z);
  return {eig.values(0), eig.vectors.col(0)};
}

enum class CaseLabel { None, Case1, Case2, Case3 };

inline const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::None: return "none";
    case CaseLabel::Case1: return "case1";
    case CaseLabel::Case2: return "case2";
    case CaseLabel::Case3: return "case3";
  }
  return "?";
}

struct CaseReport {
  CaseLabel case_n = CaseLabel::None;  // by count of mu_a = 1
  CaseLabel case_c = CaseLabel::None;  // by count of mu_a = 0
  std::vector<std::string> violations;
};

/// Boundary-structure classification of a diagonal frame.
///
/// Physical-set cases count eigenvalues mu_a equal to 1 (none / one / two);
/// classical-set cases count eigenvalues equal to 0. The side conditions the
/// enumerations force (vanishing u components, mu relations) are verified and
/// reported as violations, not errors: a frame may carry the degeneracy
/// pattern of a case while failing its membership conditions.
inline CaseReport classify_case(const DiagonalFrame& frame, Tolerance tol = {}) {
  CaseReport rep;
  const Vec3& mu = frame.mu;
  const Vec3& u = frame.u_frame;

  const auto near = [&](double x, double target) {
    return std::abs(x - target) <= tol.eps;
  };
  const auto flag = [&rep](const std::string& s) { rep.violations.push_back(s); };

  // --- physical set: which mu_a equal 1 ---
  std::vector<int> ones, others_n;
  for (int i = 0; i < 3; ++i)
    (mu(i) >= 1.0 - tol.eps ? ones : others_n).push_back(i);
  switch (ones.size()) {
    case 0: rep.case_n = CaseLabel::Case1; break;
    case 1: rep.case_n = CaseLabel::Case2; break;
    case 2: rep.case_n = CaseLabel::Case3; break;
    default: rep.case_n = CaseLabel::None; break;  // three ones: tr W != 1
  }
  for (int i = 0; i < 3; ++i) {
    if (mu(i) > 1.0 + tol.eps) flag("mu exceeds 1");
    if (mu(i) < -1.0 - tol.eps) flag("mu below -1");
  }
  if (rep.case_n == CaseLabel::Case2) {
    // say mu_z = 1: then mu_y = -mu_x and u_x = u_y = 0
    if (!near(mu(others_n[0]) + mu(others_n[1]), 0.0))
      flag("caseN2: remaining mu do not sum to 0");
    for (int i : others_n)
      if (!near(u(i), 0.0)) flag("caseN2: u component not forced to 0");
    const double mu_x = mu(others_n[0]);
    if (u(ones[0]) * u(ones[0]) > 1.0 - mu_x * mu_x + tol.eps)
      flag("caseN2: u_z^2 exceeds 1 - mu_x^2");
  } else if (rep.case_n == CaseLabel::Case3) {
    if (!near(mu(others_n[0]), -1.0)) flag("caseN3: remaining mu is not -1");
    if (u.cwiseAbs().maxCoeff() > tol.eps) flag("caseN3: u not forced to 0");
  }

  // --- classical set: which mu_a equal 0 ---
  // The classical enumeration lives on mu in [0, 1]; frames outside that
  // domain get no classical case label at all.
  std::vector<int> zeros, others_c;
  for (int i = 0; i < 3; ++i)
    (mu(i) <= tol.eps ? zeros : others_c).push_back(i);
  const bool in_c_domain = mu.minCoeff() >= -tol.eps;
  const bool all_open = [&] {
    for (int i = 0; i < 3; ++i)
      if (mu(i) <= tol.eps || mu(i) >= 1.0 - tol.eps) return false;
    return true;
  }();
  if (!in_c_domain) rep.case_c = CaseLabel::None;
  else if (all_open) rep.case_c = CaseLabel::Case1;
  else if (zeros.size() == 1) rep.case_c = CaseLabel::Case2;
  else if (zeros.size() == 2) rep.case_c = CaseLabel::Case3;
  else rep.case_c = CaseLabel::None;

  if (rep.case_c == CaseLabel::Case2) {
    if (!near(u(zeros[0]), 0.0)) flag("caseC2: u component not forced to 0");
    double s = 0.0;
    for (int i : others_c) s += u(i) * u(i) / mu(i);
    if (s > 1.0 + tol.eps) flag("caseC2: flattened ellipse condition violated");
  } else if (rep.case_c == CaseLabel::Case3) {
    if (!near(mu(others_c[0]), 1.0)) flag("caseC3: remaining mu is not 1");
    for (int i : zeros)
      if (!near(u(i), 0.0)) flag("caseC3: u component not forced to 0");
    if (std::abs(u(others_c[0])) > 1.0 + tol.eps)
      flag("caseC3: |u| exceeds 1 on the line");
  }
  return rep;
}

/// rho_kappa = rho' + (kappa/2) u.J built from a diagonal frame.
inline CMat3 rho_kappa(const DiagonalFrame& frame, double kappa) {
  const auto& ops = spin1_operators();
  CMat3 rp = 0.5 * (frame.mu(0) * ops.jx * ops.jx +
                    frame.mu(1) * ops.jy * ops.jy +
                    frame.mu(2) * ops.jz * ops.jz);
  return rp + 0.5 * kappa * dot_j(frame.u_frame);
}

/// Lowest eigenvalue of rho_kappa on a grid of kappa >= 0. For u = 0 the
/// curve is constant min_a (1 - mu_a)/2.
inline std::vector<double> lowest_eigenvalue_curve(
    const DiagonalFrame& frame, std::span<const double> kappa_grid) {
  std::vector<double> out;
  out.reserve(kappa_grid.size());
  for (double k : kappa_grid) {
    detail::require(k >= 0.0, "lowest_eigenvalue_curve: kappa must be >= 0");
    out.push_back(detail::hermitian_eigs(rho_kappa(frame, k))(0));
  }
  return out;
}

/// First kappa >= 0 where lambda_min(rho_kappa) crosses 0, located by
/// bisection to 1e-10. Requires u_frame != 0 so the crossing exists.
inline double kappa_at_boundary(const DiagonalFrame& frame) {
  detail::require(frame.u_frame.norm() > 0.0,
                  "kappa_at_boundary: u must be nonzero");
  const auto lmin = [&](double k) {
    return detail::hermitian_eigs(rho_kappa(frame, k))(0);
  };
  detail::require(lmin(0.0) >= 0.0,
                  "kappa_at_boundary: frame is not physical at kappa = 0");
  double lo = 0.0, hi = 1.0;
  while (lmin(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    detail::require(hi < 1e9, "kappa_at_boundary: no boundary crossing found");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (lmin(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Full classification of one state. `classical` is empty when the state is
/// not physical (classicality is undefined there); z_eigs and the witness are
/// well-defined for any Bloch pair and always filled.
struct ClassificationReport {
  Verdict physical = Verdict::Outside;
  std::optional<Verdict> classical;
  Vec3 rho_eigs = Vec3::Zero();
  Vec3 z_eigs = Vec3::Zero();
  double q_min = 0.0;
  Vec3 worst_direction = Vec3::UnitZ();
  CaseLabel case_n = CaseLabel::None;
  CaseLabel case_c = CaseLabel::None;
  double tol = kDefaultTol;
};

inline ClassificationReport classify(const BlochPair& bp, Tolerance tol = {}) {
  ClassificationReport rep;
  rep.tol = tol.eps;

  const PhysicalityDetails phys = is_physical(bp, tol);
  rep.physical = phys.verdict;
  rep.rho_eigs = phys.rho_eigs;

  const QuantumnessWitness wit = min_quantumness_direction(bp);
  rep.q_min = wit.q_min;
  rep.worst_direction = wit.direction;
  rep.z_eigs = sym_eigs_3x3(z_matrix(bp).z, tol);

  if (rep.physical != Verdict::Outside)
    rep.classical = is_classical(bp, tol).verdict;

  const CaseReport cases = classify_case(diagonal_frame(bp, tol), tol);
  rep.case_n = cases.case_n;
  rep.case_c = cases.case_c;
  return rep;
}

}  // namespace spinone
