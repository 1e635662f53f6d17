#pragma once

#include "spinone/classicality.hpp"
#include "spinone/nnls.hpp"
#include "spinone/rng.hpp"
#include "spinone/state.hpp"
#include "spinone/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace spinone {

/// A two-qubit state produced by embedding a spin-1 state into the symmetric
/// subspace. Classicality of the spin-1 state is equivalent to separability
/// of this state, which for two qubits PPT decides exactly - the independent
/// oracle for the whole Z-criterion pipeline.
struct TwoQubitState {
  CMat4 m;
  bool supported_on_symmetric = false;
};

/// Isometry |1,1> -> |00>, |1,0> -> (|01>+|10>)/sqrt2, |1,-1> -> |11>;
/// returns V rho V^dagger (trace and spectrum preserved, plus one zero).
inline TwoQubitState embed_symmetric_two_qubit(const DensityMatrix& rho,
                                               Tolerance tol = {}) {
  validate_density(rho.m, tol);
  static const Eigen::Matrix<Complex, 4, 3> v = [] {
    Eigen::Matrix<Complex, 4, 3> iso = Eigen::Matrix<Complex, 4, 3>::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    iso(0, 0) = 1.0;
    iso(1, 1) = r;
    iso(2, 1) = r;
    iso(3, 2) = 1.0;
    return iso;
  }();
  return {v * rho.m * v.adjoint(), true};
}

/// Partial transpose on the second qubit (row/col index m = 2 i + a with i
/// the first-qubit index).
inline CMat4 partial_transpose_second(const CMat4& m) {
  CMat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          out(2 * i + a, 2 * j + b) = m(2 * i + b, 2 * j + a);
  return out;
}

struct PptDetails {
  Verdict verdict;
  double lambda_min;
  Eigen::Vector4d eigs;  // ascending spectrum of the partial transpose
};

/// Separability verdict from the lowest eigenvalue of the partial transpose,
/// with the usual tolerance band. Exact for two qubits.
inline PptDetails ppt_separable(const TwoQubitState& ts, Tolerance tol = {}) {
  Eigen::SelfAdjointEigenSolver<CMat4> solver(
      partial_transpose_second(ts.m), Eigen::EigenvaluesOnly);
  PptDetails d;
  d.eigs = solver.eigenvalues();
  d.lambda_min = d.eigs(0);
  d.verdict = verdict_from_min(d.lambda_min, tol);
  return d;
}

/// Deterministic near-uniform sphere grid (Fibonacci lattice), as (theta,
/// phi) pairs.
inline std::vector<std::pair<double, double>> fibonacci_sphere(int n) {
  detail::require(n >= 1, "fibonacci_sphere: n must be >= 1");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    pts.emplace_back(std::acos(std::clamp(z, -1.0, 1.0)), golden * i);
  }
  return pts;
}

namespace detail {

// Real vectorization of a Hermitian 3x3 matrix preserving the Frobenius
// inner product.
inline Eigen::Matrix<double, 9, 1> herm_vec9(const CMat3& h) {
  const double r = std::sqrt(2.0);
  Eigen::Matrix<double, 9, 1> v;
  v << h(0, 0).real(), h(1, 1).real(), h(2, 2).real(),
       r * h(0, 1).real(), r * h(0, 1).imag(),
       r * h(0, 2).real(), r * h(0, 2).imag(),
       r * h(1, 2).real(), r * h(1, 2).imag();
  return v;
}

}  // namespace detail

/// A convex mixture of coherent-state projectors approximating a state:
/// active directions, their weights, and the Frobenius distance between the
/// state and the mixture.
struct Decomposition {
  std::vector<std::pair<double, double>> directions;  // (theta, phi)
  std::vector<double> weights;
  double residual = 0.0;
};

/// Constructive classicality check: nonnegative least-squares fit of rho
/// over a Fibonacci grid of grid_n coherent projectors, with the unit-trace
/// row appended. Strictly classical states reach residuals at rounding level
/// once the grid resolves the state; genuinely quantum states stay bounded
/// away from zero for any grid.
inline Decomposition classical_decomposition(const DensityMatrix& rho,
                                             int grid_n, Tolerance tol = {}) {
  const BlochPair bp = bloch_from_rho(rho, tol);
  if (is_physical(bp, tol).verdict == Verdict::Outside)
    throw NotPhysicalError("classical_decomposition: state is not physical");

  const auto grid = fibonacci_sphere(grid_n);
  Eigen::MatrixXd a(10, grid_n);
  std::vector<CMat3> projectors;
  projectors.reserve(grid.size());
  for (int i = 0; i < grid_n; ++i) {
    projectors.push_back(coherent_state(grid[i].first, grid[i].second).m);
    a.col(i).head<9>() = detail::herm_vec9(projectors.back());
    a(9, i) = 1.0;  // tr P_i = 1: enforces sum of weights = tr rho
  }
  Eigen::VectorXd b(10);
  b.head<9>() = detail::herm_vec9(rho.m);
  b(9) = 1.0;

  const NnlsResult fit = nnls(a, b);

  Decomposition dec;
  CMat3 mix = CMat3::Zero();
  for (int i = 0; i < grid_n; ++i) {
    if (fit.x(i) > 0.0) {
      dec.directions.push_back(grid[i]);
      dec.weights.push_back(fit.x(i));
      mix += fit.x(i) * projectors[static_cast<std::size_t>(i)];
    }
  }
  dec.residual = (rho.m - mix).norm();
  return dec;
}

/// One Hilbert-Schmidt sample: G G^dagger / tr(G G^dagger) with G a 3x3
/// matrix of independent standard complex normals.
inline DensityMatrix sample_random_state(SeedStream& rng) {
  CMat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  CMat3 rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {rho};
}

/// Monte-Carlo estimate of the classical volume fraction under the
/// Hilbert-Schmidt measure, with the PPT oracle run on every sample.
struct VolumeEstimate {
  double fraction = 0.0;       // share of samples strictly inside the
                               // classical set
  double std_error = 0.0;      // binomial standard error
  std::int64_t n_samples = 0;
  std::int64_t n_inside = 0;
  std::int64_t n_band = 0;     // samples in either tolerance band, excluded
                               // from the agreement comparison
  std::int64_t n_disagree = 0; // strict Z-vs-PPT disagreements (expect 0)
  std::int64_t n_ppt_inside = 0;
};

inline VolumeEstimate classical_volume_fraction(std::int64_t n_samples,
                                                std::uint64_t seed,
                                                Tolerance tol = {}) {
  detail::require(n_samples >= 1, "classical_volume_fraction: need >= 1 sample");
  SeedStream rng(seed);
  VolumeEstimate est;
  est.n_samples = n_samples;
  for (std::int64_t k = 0; k < n_samples; ++k) {
    const DensityMatrix rho = sample_random_state(rng);
    const BlochPair bp = bloch_from_rho(rho);
    const Verdict z_verdict = is_classical(bp, tol).verdict;
    const Verdict ppt_verdict =
        ppt_separable(embed_symmetric_two_qubit(rho), tol).verdict;

    if (z_verdict == Verdict::Inside) ++est.n_inside;
    if (ppt_verdict == Verdict::Inside) ++est.n_ppt_inside;
    if (z_verdict == Verdict::Boundary || ppt_verdict == Verdict::Boundary) {
      ++est.n_band;
    } else if (z_verdict != ppt_verdict) {
      ++est.n_disagree;
    }
  }
  est.fraction = static_cast<double>(est.n_inside) /
                 static_cast<double>(n_samples);
  est.std_error = std::sqrt(est.fraction * (1.0 - est.fraction) /
                            static_cast<double>(n_samples));
  return est;
}

}  // namespace spinone
