#pragma once

#include "spinone/types.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <vector>

namespace spinone {

struct NnlsResult {
  Eigen::VectorXd x;      // solution, x >= 0
  double residual_norm;   // ||A x - b||_2
  int iterations = 0;
  bool converged = false;
};

/// Nonnegative least squares min ||A x - b|| s.t. x >= 0 by the
/// Lawson-Hanson active-set method. Intended for small row counts with
/// possibly many columns (the passive set never exceeds the row count).
/// Stops at the KKT point, at 10 n iterations, or when the objective stalls.
inline NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                       int max_iter = -1) {
  const Eigen::Index m = a.rows(), n = a.cols();
  detail::require(b.size() == m, "nnls: dimension mismatch");
  if (max_iter < 0) max_iter = 10 * static_cast<int>(n);

  NnlsResult res;
  res.x = Eigen::VectorXd::Zero(n);

  std::vector<Eigen::Index> passive;
  std::vector<bool> in_passive(static_cast<std::size_t>(n), false);

  Eigen::VectorXd resid = b;  // b - A x
  const double w_tol = 10.0 * std::numeric_limits<double>::epsilon() *
                       a.cwiseAbs().maxCoeff() * std::max(1.0, b.norm()) *
                       static_cast<double>(std::max(m, n));

  // Unconstrained solve restricted to the passive columns.
  const auto solve_passive = [&](Eigen::VectorXd& z) {
    Eigen::MatrixXd ap(m, static_cast<Eigen::Index>(passive.size()));
    for (std::size_t k = 0; k < passive.size(); ++k)
      ap.col(static_cast<Eigen::Index>(k)) = a.col(passive[k]);
    z = ap.colPivHouseholderQr().solve(b);
  };

  double prev_obj = std::numeric_limits<double>::infinity();
  int stalls = 0;

  while (res.iterations < max_iter) {
    ++res.iterations;

    const Eigen::VectorXd w = a.transpose() * resid;
    Eigen::Index j_best = -1;
    double w_best = w_tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!in_passive[static_cast<std::size_t>(j)] && w(j) > w_best) {
        w_best = w(j);
        j_best = j;
      }
    }
    if (j_best < 0) {
      res.converged = true;  // KKT: no active column has positive gradient
      break;
    }
    passive.push_back(j_best);
    in_passive[static_cast<std::size_t>(j_best)] = true;

    // Inner loop: restore feasibility of the passive solve.
    Eigen::VectorXd z;
    solve_passive(z);
    while (true) {
      bool feasible = true;
      double alpha = 1.0;
      for (std::size_t k = 0; k < passive.size(); ++k) {
        const auto zi = z(static_cast<Eigen::Index>(k));
        if (zi <= 0.0) {
          feasible = false;
          const double xi = res.x(passive[k]);
          if (xi - zi > 0.0) alpha = std::min(alpha, xi / (xi - zi));
        }
      }
      if (feasible) break;

      for (std::size_t k = 0; k < passive.size(); ++k) {
        const auto i = passive[k];
        res.x(i) += alpha * (z(static_cast<Eigen::Index>(k)) - res.x(i));
      }
      // Drop columns pinned at zero.
      std::vector<Eigen::Index> keep;
      for (auto i : passive) {
        if (res.x(i) <= 1e-15) {
          res.x(i) = 0.0;
          in_passive[static_cast<std::size_t>(i)] = false;
        } else {
          keep.push_back(i);
        }
      }
      passive = std::move(keep);
      if (passive.empty()) break;
      solve_passive(z);
    }
    for (std::size_t k = 0; k < passive.size(); ++k)
      res.x(passive[k]) = z(static_cast<Eigen::Index>(k));

    resid = b - a * res.x;
    const double obj = resid.squaredNorm();
    if (obj >= prev_obj - 1e-16 * std::max(1.0, prev_obj)) {
      if (++stalls >= 3) break;  // no progress; accept current point
    } else {
      stalls = 0;
    }
    prev_obj = obj;
  }

  res.residual_norm = (b - a * res.x).norm();
  return res;
}

}  // namespace spinone
