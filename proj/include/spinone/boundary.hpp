#pragma once

#include "spinone/state.hpp"
#include "spinone/types.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace spinone {

enum class BoundaryFamily { N, C };

inline const char* to_string(BoundaryFamily f) {
  return f == BoundaryFamily::N ? "N" : "C";
}

/// One boundary ellipsoid in u-space, centered at the origin. For the
/// classical family the semi-axes are sqrt(mu_a); for the physical family
/// sqrt(mu_a + mu_b mu_c). `frame` maps diagonal-frame coordinates to the
/// export frame (identity unless a rotation was applied); `mu` is the
/// generating spectrum, kept for export and verification.
struct EllipsoidSpec {
  Vec3 semi_axes;
  Mat3 frame;
  BoundaryFamily family;
  Vec3 mu;
};

/// Upper end of the uniqueness domain for the mu charts: theta up to
/// arctan(1/cos phi) keeps the generated spectra ordered, so each state is
/// produced once. Wider angles up to pi/2 are accepted by the chart
/// operations and simply revisit axis permutations.
inline double theta_prime_max(double phi_prime) {
  return std::atan(1.0 / std::cos(phi_prime));
}

namespace detail {

inline void require_mu_chart_angles(double theta, double phi,
                                    const char* who) {
  require(std::isfinite(theta) && std::isfinite(phi), who);
  require(theta > 0.0 && theta <= 0.5 * std::numbers::pi + 1e-12, who);
  require(phi > 0.0 && phi <= 0.25 * std::numbers::pi + 1e-12, who);
}

inline void require_simplex(const Vec3& mu, double lo, const char* who) {
  require(std::abs(mu.sum() - 1.0) <= 1e-9, who);
  for (int i = 0; i < 3; ++i) require(mu(i) >= lo - 1e-12 && mu(i) < 1.0 + 1e-12, who);
}

}  // namespace detail

/// Chart coordinates for one point of the physical boundary: (theta',
/// phi') select the spectrum through the eigenvalues of the truncated
/// state, (theta, phi) the position on its ellipsoid.
struct AngleChartN {
  double theta_prime = 0.0, phi_prime = 0.0;
  double theta = 0.0, phi = 0.0;

  bool in_unique_domain() const {
    return phi_prime > 0.0 && phi_prime <= 0.25 * std::numbers::pi &&
           theta_prime > 0.0 && theta_prime <= theta_prime_max(phi_prime);
  }
};

/// Spectrum chart for the physical boundary: auxiliary variables are the
/// eigenvalues of rho', lambda' = (sin^2 t' sin^2 p', sin^2 t' cos^2 p',
/// cos^2 t'), and mu_a = 1 - 2 lambda'_a. The sum over mu is 1 by
/// construction.
inline Vec3 mu_from_angles_N(double theta_prime, double phi_prime) {
  detail::require_mu_chart_angles(theta_prime, phi_prime,
                                  "mu_from_angles_N: angles outside chart domain");
  const double st = std::sin(theta_prime), ct = std::cos(theta_prime);
  const double sp = std::sin(phi_prime), cp = std::cos(phi_prime);
  const Vec3 lam{st * st * sp * sp, st * st * cp * cp, ct * ct};
  return Vec3::Ones() - 2.0 * lam;
}

/// Point of the physical boundary for a given spectrum: in the diagonal
/// frame, u lies on the ellipsoid with squared semi-axes mu_a + mu_b mu_c.
/// Note the chart places cos(theta) on the x and y components and sin(theta)
/// on z, double-covering the surface over theta in [0, pi].
inline Vec3 boundary_N_point(const Vec3& mu, double theta, double phi) {
  detail::require_simplex(mu, -1.0, "boundary_N_point: invalid mu");
  Vec3 r2{mu(0) + mu(1) * mu(2), mu(1) + mu(0) * mu(2), mu(2) + mu(0) * mu(1)};
  for (int i = 0; i < 3; ++i) {
    detail::require(r2(i) >= -1e-12,
                    "boundary_N_point: negative squared semi-axis");
    r2(i) = std::max(r2(i), 0.0);
  }
  const double ct = std::cos(theta), st = std::sin(theta);
  return {std::sqrt(r2(0)) * ct * std::cos(phi),
          std::sqrt(r2(1)) * ct * std::sin(phi),
          std::sqrt(r2(2)) * st};
}

/// Full physical-boundary point from one chart: (mu, u) in the diagonal
/// frame.
inline std::pair<Vec3, Vec3> boundary_N_point(const AngleChartN& chart) {
  const Vec3 mu = mu_from_angles_N(chart.theta_prime, chart.phi_prime);
  return {mu, boundary_N_point(mu, chart.theta, chart.phi)};
}

/// Chart coordinates for one point of the classical boundary: (theta1, phi1)
/// select the spectrum, (theta2, phi2) the position on its ellipsoid, and
/// (alpha, beta, gamma) the frame rotation.
struct AngleChartC {
  double theta1 = 0.0, phi1 = 0.0;
  double theta2 = 0.0, phi2 = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;

  bool in_unique_domain() const {
    return phi1 > 0.0 && phi1 <= 0.25 * std::numbers::pi && theta1 > 0.0 &&
           theta1 <= theta_prime_max(phi1);
  }
};

/// Classical-boundary point in the diagonal frame:
///   mu = (sin^2 t1 sin^2 p1, sin^2 t1 cos^2 p1, cos^2 t1)
///   u  = (sin t1 sin p1 cos t2 cos p2, sin t1 cos p1 cos t2 sin p2,
///         cos t1 sin t2)
/// which satisfies sum_a u_a^2 / mu_a = 1, i.e. det Z = 0.
inline std::pair<Vec3, Vec3> boundary_C_point(const AngleChartC& chart) {
  detail::require_mu_chart_angles(chart.theta1, chart.phi1,
                                  "boundary_C_point: angles outside chart domain");
  detail::require(std::isfinite(chart.theta2) && std::isfinite(chart.phi2),
                  "boundary_C_point: angles outside chart domain");
  const double s1 = std::sin(chart.theta1), c1 = std::cos(chart.theta1);
  const double sp = std::sin(chart.phi1), cp = std::cos(chart.phi1);
  const double s2 = std::sin(chart.theta2), c2 = std::cos(chart.theta2);
  const Vec3 mu{s1 * s1 * sp * sp, s1 * s1 * cp * cp, c1 * c1};
  const Vec3 u{s1 * sp * c2 * std::cos(chart.phi2),
               s1 * cp * c2 * std::sin(chart.phi2),
               c1 * s2};
  return {mu, u};
}

/// z-y-z Euler rotation O = Rz(alpha) Ry(beta) Rz(gamma).
inline Mat3 euler_zyz(double alpha, double beta, double gamma) {
  return (Eigen::AngleAxisd(alpha, Vec3::UnitZ()) *
          Eigen::AngleAxisd(beta, Vec3::UnitY()) *
          Eigen::AngleAxisd(gamma, Vec3::UnitZ()))
      .toRotationMatrix();
}

/// Rotate a diagonal-frame point out of its frame:
/// W = O diag(mu) O^T, u -> O u.
inline BlochPair apply_euler(double alpha, double beta, double gamma,
                             const Vec3& mu, const Vec3& u) {
  detail::require(std::abs(mu.sum() - 1.0) <= 1e-9,
                  "apply_euler: mu must sum to 1");
  const Mat3 o = euler_zyz(alpha, beta, gamma);
  return {o * u, o * mu.asDiagonal() * o.transpose()};
}

inline EllipsoidSpec ellipsoid_spec_N(const Vec3& mu) {
  detail::require_simplex(mu, -1.0, "ellipsoid_spec_N: invalid mu");
  Vec3 axes;
  for (int i = 0; i < 3; ++i) {
    const double r2 = mu(i) + mu((i + 1) % 3) * mu((i + 2) % 3);
    detail::require(r2 >= -1e-12, "ellipsoid_spec_N: negative squared semi-axis");
    // Degenerate directions collapse to 0 (the surface flattens).
    axes(i) = r2 <= 1e-12 ? 0.0 : std::sqrt(r2);
  }
  return {axes, Mat3::Identity(), BoundaryFamily::N, mu};
}

inline EllipsoidSpec ellipsoid_spec_C(const Vec3& mu) {
  detail::require_simplex(mu, 0.0, "ellipsoid_spec_C: mu outside [0, 1]");
  const Vec3 clamped = mu.cwiseMax(0.0);
  return {clamped.cwiseSqrt(), Mat3::Identity(), BoundaryFamily::C, mu};
}

/// Both boundary surfaces for one spectrum. The classical ellipsoid is nested
/// inside the physical one component-wise since mu_b mu_c >= 0 on the
/// classical mu-domain.
inline std::pair<EllipsoidSpec, EllipsoidSpec> ellipsoid_specs(const Vec3& mu) {
  return {ellipsoid_spec_N(mu), ellipsoid_spec_C(mu)};
}

/// Latitude-longitude sampling of an ellipsoid surface: n_theta + 1 rows of
/// latitude from the south to the north pole, n_phi columns of longitude,
/// row-major order. Pole rows emit a single point each (the longitudes
/// coincide there).
inline std::vector<Vec3> mesh_ellipsoid(const EllipsoidSpec& spec, int n_theta,
                                        int n_phi) {
  detail::require(n_theta >= 2 && n_phi >= 2,
                  "mesh_ellipsoid: resolution must be at least 2x2");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n_theta - 1) * n_phi + 2);
  for (int i = 0; i <= n_theta; ++i) {
    const double lat = -0.5 * std::numbers::pi +
                       std::numbers::pi * static_cast<double>(i) / n_theta;
    const double cl = std::cos(lat), sl = std::sin(lat);
    const bool pole = (i == 0 || i == n_theta);
    const int cols = pole ? 1 : n_phi;
    for (int j = 0; j < cols; ++j) {
      const double lon =
          2.0 * std::numbers::pi * static_cast<double>(j) / n_phi;
      const Vec3 local{spec.semi_axes(0) * cl * std::cos(lon),
                       spec.semi_axes(1) * cl * std::sin(lon),
                       spec.semi_axes(2) * sl};
      pts.push_back(spec.frame * local);
    }
  }
  return pts;
}

/// The straight-line family on the classical boundary: mixtures
/// rho(v) = (1-v)/2 |psi-><psi-| + (1+v)/2 |psi+><psi+| of the coherent
/// states along -x and +x. In Bloch coordinates W = diag(1,0,0) and
/// u = (v,0,0); det Z = 0 along the whole segment.
inline DensityMatrix coherent_mixture_line(double v) {
  detail::require(v >= -1.0 && v <= 1.0,
                  "coherent_mixture_line: v outside [-1, 1]");
  const DensityMatrix plus = coherent_state(0.5 * std::numbers::pi, 0.0);
  const DensityMatrix minus = coherent_state(0.5 * std::numbers::pi,
                                             std::numbers::pi);
  return {0.5 * (1.0 - v) * minus.m + 0.5 * (1.0 + v) * plus.m};
}

}  // namespace spinone
