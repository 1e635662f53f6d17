#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace spinone {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;
using CMat4 = Eigen::Matrix4cd;
using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

/// Rejected caller input: asymmetric W, wrong trace, non-orthogonal rotation,
/// chart-domain violations.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A classicality query was made for a state outside the physical set.
struct NotPhysicalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two redundant routes to the same verdict disagree beyond the tolerance
/// band. Never expected; indicates a bug in this library.
struct InternalCheckError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Absolute eigenvalue tolerance defining the boundary band of all verdicts.
struct Tolerance {
  double eps = kDefaultTol;

  Tolerance() = default;
  explicit Tolerance(double e) : eps(e) {
    if (!(e > 0.0)) throw ValidationError("tolerance must be positive");
  }
};

/// Tri-state set membership. Every boundary of the state sets is an exact
/// equality that floating point can only bracket, hence the band.
enum class Verdict { Inside, Boundary, Outside };

inline Verdict verdict_from_min(double lambda_min, Tolerance tol) {
  if (lambda_min > tol.eps) return Verdict::Inside;
  if (lambda_min < -tol.eps) return Verdict::Outside;
  return Verdict::Boundary;
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Boundary: return "boundary";
    case Verdict::Outside: return "outside";
  }
  return "?";
}

namespace detail {

inline void require(bool cond, const char* msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace detail

}  // namespace spinone
