#include "spinone/classicality.hpp"

#include "spinone/boundary.hpp"
#include "spinone/oracles.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace spinone;
using testutil::random_bloch_pair;
using testutil::random_mu;
using testutil::random_orthogonal;
using testutil::random_symmetric;

TEST_CASE("z_matrix reference points", "[classicality]") {
  SECTION("u = 0 gives Z = W") {
    const BlochPair bp{Vec3::Zero(), Vec3{0.2, 0.3, 0.5}.asDiagonal()};
    REQUIRE((z_matrix(bp).z - bp.w).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("coherent states have Z = 0") {
    const BlochPair bp = bloch_from_rho(coherent_state(0.7, 2.1));
    REQUIRE(z_matrix(bp).z.cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("|1,0> projector has Z spectrum (-1, 1, 1)") {
    const BlochPair bp{Vec3::Zero(), Vec3{1, 1, -1}.asDiagonal()};
    const Vec3 ev = sym_eigs_3x3(z_matrix(bp).z);
    REQUIRE(ev(0) == Catch::Approx(-1.0).margin(1e-14));
    REQUIRE(ev(1) == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(ev(2) == Catch::Approx(1.0).margin(1e-14));
  }
}

TEST_CASE("is_physical reference points", "[classicality]") {
  const Tolerance tol{};
  SECTION("maximally mixed is inside") {
    const BlochPair bp{Vec3::Zero(), Mat3::Identity() / 3.0};
    REQUIRE(is_physical(bp, tol).verdict == Verdict::Inside);
  }
  SECTION("sphere-of-radius-2/3 point is on the boundary") {
    const BlochPair bp{Vec3{2.0 / 3.0, 0, 0}, Mat3::Identity() / 3.0};
    const PhysicalityDetails d = is_physical(bp, tol);
    REQUIRE(d.verdict == Verdict::Boundary);
    REQUIRE(std::abs(d.rho_eigs(0)) < 1e-12);
  }
  SECTION("u = (0.9, 0, 0) with isotropic W is outside") {
    const BlochPair bp{Vec3{0.9, 0, 0}, Mat3::Identity() / 3.0};
    REQUIRE(is_physical(bp, tol).verdict == Verdict::Outside);
  }
  SECTION("det form equals 8 det(rho)") {
    SeedStream rng(301);
    for (int trial = 0; trial < 200; ++trial) {
      const BlochPair bp = random_bloch_pair(rng);
      const PhysicalityDetails d = [&] {
        try {
          return is_physical(bp);
        } catch (const InternalCheckError&) {
          FAIL("internal check tripped");
          throw;
        }
      }();
      const double det_rho = rho_from_bloch(bp).m.determinant().real();
      REQUIRE(d.det_form == Catch::Approx(8.0 * det_rho).margin(1e-11));
    }
  }
}

TEST_CASE("is_classical on the thermal family", "[classicality]") {
  const auto verdict_at = [](double beta) {
    return is_classical(bloch_from_rho(thermal_state(beta))).verdict;
  };
  const double ln2 = std::log(2.0);
  REQUIRE(verdict_at(ln2 - 0.1) == Verdict::Inside);
  REQUIRE(verdict_at(ln2 + 0.1) == Verdict::Outside);
  REQUIRE(verdict_at(ln2) == Verdict::Boundary);
}

TEST_CASE("is_classical reference points", "[classicality]") {
  SECTION("the |1,0> projector is maximally quantum") {
    const BlochPair bp{Vec3::Zero(), Vec3{1, 1, -1}.asDiagonal()};
    const ClassicalityDetails d = is_classical(bp);
    REQUIRE(d.verdict == Verdict::Outside);
    REQUIRE(d.z_eigs(0) == Catch::Approx(-1.0).margin(1e-14));
  }
  SECTION("coherent states are on the boundary") {
    for (double theta : {0.0, 0.8, 2.0}) {
      const BlochPair bp = bloch_from_rho(coherent_state(theta, 1.2));
      REQUIRE(is_classical(bp).verdict == Verdict::Boundary);
    }
  }
  SECTION("non-physical input is an error, not a quantum verdict") {
    const BlochPair bp{Vec3{0.9, 0, 0}, Mat3::Identity() / 3.0};
    REQUIRE_THROWS_AS(is_classical(bp), NotPhysicalError);
  }
}

TEST_CASE("min_quantumness_direction", "[classicality]") {
  SECTION("|1,0> has q_min = -1 along z") {
    const BlochPair bp{Vec3::Zero(), Vec3{1, 1, -1}.asDiagonal()};
    const QuantumnessWitness w = min_quantumness_direction(bp);
    REQUIRE(w.q_min == Catch::Approx(-1.0).margin(1e-14));
    REQUIRE(std::abs(std::abs(w.direction(2)) - 1.0) < 1e-14);
    REQUIRE(std::abs(w.direction.dot(z_matrix(bp).z * w.direction) -
                     w.q_min) < 1e-13);
  }
  SECTION("coherent state: q_min = 0") {
    const BlochPair bp = bloch_from_rho(coherent_state(1.0, 0.4));
    REQUIRE(min_quantumness_direction(bp).q_min ==
            Catch::Approx(0.0).margin(1e-13));
  }
  SECTION("maximally mixed: q_min = 1/3") {
    const BlochPair bp{Vec3::Zero(), Mat3::Identity() / 3.0};
    REQUIRE(min_quantumness_direction(bp).q_min ==
            Catch::Approx(1.0 / 3.0).margin(1e-14));
  }
}

TEST_CASE("witness minimum over random directions", "[classicality][property]") {
  SeedStream rng(302);
  for (int trial = 0; trial < 20; ++trial) {
    const BlochPair bp = bloch_from_rho(sample_random_state(rng));
    const QuantumnessWitness w = min_quantumness_direction(bp);
    const Mat3 z = z_matrix(bp).z;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 10000; ++k) {
      const Vec3 t = rng.unit_vector();
      best = std::min(best, t.dot(z * t));
    }
    REQUIRE(best >= w.q_min - 1e-12);
    REQUIRE(best - w.q_min < 1e-3);
  }
}

TEST_CASE("classify_case reference points", "[classicality]") {
  const Tolerance tol{};
  SECTION("mu = (-1, 1, 1): physical case 3") {
    const DiagonalFrame f{Vec3{-1, 1, 1}, Vec3::Zero(), Mat3::Identity()};
    const CaseReport rep = classify_case(f, tol);
    REQUIRE(rep.case_n == CaseLabel::Case3);
    REQUIRE(rep.violations.empty());
  }
  SECTION("mu = (1, 0, 0) with u = (0.5, 0, 0): classical case 3") {
    // Unsorted frame on purpose: the labels depend on values, not ordering.
    const DiagonalFrame f{Vec3{1, 0, 0}, Vec3{0.5, 0, 0}, Mat3::Identity()};
    const CaseReport rep = classify_case(f, tol);
    REQUIRE(rep.case_c == CaseLabel::Case3);
    REQUIRE(rep.violations.empty());  // |u_x| = 0.5 <= 1 holds
  }
  SECTION("generic spectrum: case 1 for both sets") {
    const DiagonalFrame f{Vec3{0.05, 0.4, 0.55}, Vec3{0.1, 0, 0},
                          Mat3::Identity()};
    const CaseReport rep = classify_case(f, tol);
    REQUIRE(rep.case_n == CaseLabel::Case1);
    REQUIRE(rep.case_c == CaseLabel::Case1);
  }
  SECTION("violations are reported") {
    const DiagonalFrame f{Vec3{-1, 1, 1}, Vec3{0.2, 0, 0}, Mat3::Identity()};
    const CaseReport rep = classify_case(f, tol);
    REQUIRE(rep.case_n == CaseLabel::Case3);
    REQUIRE_FALSE(rep.violations.empty());
  }
}

TEST_CASE("lowest_eigenvalue_curve", "[classicality]") {
  SECTION("kappa = 0 recovers min (1 - mu_a)/2") {
    const DiagonalFrame f{Vec3{0.05, 0.4, 0.55}, Vec3{0.3, 0, 0},
                          Mat3::Identity()};
    const std::vector<double> grid{0.0};
    const auto lm = lowest_eigenvalue_curve(f, grid);
    REQUIRE(lm[0] == Catch::Approx(0.5 * (1.0 - 0.55)).margin(1e-13));
  }
  SECTION("u = 0 gives a constant curve") {
    const DiagonalFrame f{Vec3{0.05, 0.4, 0.55}, Vec3::Zero(),
                          Mat3::Identity()};
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.1 * i);
    const auto lm = lowest_eigenvalue_curve(f, grid);
    for (double v : lm) REQUIRE(v == Catch::Approx(lm[0]).margin(1e-14));
  }
  SECTION("non-increasing along kappa for the generic frame") {
    const DiagonalFrame f{Vec3{0.05, 0.4, 0.55}, Vec3{0.3, 0, 0},
                          Mat3::Identity()};
    std::vector<double> grid;
    for (int i = 0; i <= 4; ++i) grid.push_back(0.25 * i);
    const auto lm = lowest_eigenvalue_curve(f, grid);
    for (std::size_t i = 1; i < lm.size(); ++i)
      REQUIRE(lm[i] <= lm[i - 1] + 1e-12);
  }
  SECTION("negative kappa rejected") {
    const DiagonalFrame f{Vec3{0.05, 0.4, 0.55}, Vec3{0.3, 0, 0},
                          Mat3::Identity()};
    const std::vector<double> grid{-0.5};
    REQUIRE_THROWS_AS(lowest_eigenvalue_curve(f, grid), ValidationError);
  }
}

TEST_CASE("Descartes triple holds iff lambda_min(Z) >= 0 on random symmetric "
          "matrices",
          "[classicality][property]") {
  SeedStream rng(303);
  for (int trial = 0; trial < 10000; ++trial) {
    const Mat3 z = random_symmetric(rng);
    const double tr = z.trace();
    const double tr2 = (z * z).trace();
    const double det = z.determinant();
    const bool triple = tr >= 0.0 && tr * tr >= tr2 && det >= 0.0;
    const double lmin = sym_eigs_3x3(z)(0);
    if (std::abs(lmin) < 1e-12) continue;  // too close to call either way
    REQUIRE(triple == (lmin > 0.0));
  }
}

TEST_CASE("classical set is nested in the physical set",
          "[classicality][property]") {
  SeedStream rng(304);
  int classical_seen = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const BlochPair bp = bloch_from_rho(sample_random_state(rng));
    const ClassicalityDetails d = is_classical(bp);
    if (d.verdict == Verdict::Inside) {
      ++classical_seen;
      const Verdict phys = is_physical(bp).verdict;
      REQUIRE((phys == Verdict::Inside || phys == Verdict::Boundary));
    }
  }
  REQUIRE(classical_seen > 0);
}

TEST_CASE("classical states are closed under mixing",
          "[classicality][property]") {
  SeedStream rng(305);
  std::vector<DensityMatrix> classical;
  while (classical.size() < 60) {
    const DensityMatrix rho = sample_random_state(rng);
    if (is_classical(bloch_from_rho(rho)).verdict == Verdict::Inside)
      classical.push_back(rho);
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& a = classical[rng.bits() % classical.size()];
    const auto& b = classical[rng.bits() % classical.size()];
    const double lam = rng.uniform();
    const DensityMatrix mix{lam * a.m + (1.0 - lam) * b.m};
    const Verdict v = is_classical(bloch_from_rho(mix)).verdict;
    REQUIRE(v != Verdict::Outside);
  }
}

TEST_CASE("trace identities for the Descartes triple",
          "[classicality][property]") {
  SeedStream rng(306);
  for (int trial = 0; trial < 2000; ++trial) {
    const BlochPair bp = random_bloch_pair(rng);
    const Mat3 z = z_matrix(bp).z;
    const double u2 = bp.u.squaredNorm();

    const double tr_direct = z.trace();
    const double tr_formula = 1.0 - u2;
    REQUIRE(std::abs(tr_direct - tr_formula) <=
            1e-12 * std::max(1.0, std::abs(tr_formula)));

    const double tr2_direct = (z * z).trace();
    const double tr2_formula =
        bp.w.squaredNorm() - 2.0 * bp.u.dot(bp.w * bp.u) + u2 * u2;
    REQUIRE(std::abs(tr2_direct - tr2_formula) <=
            1e-11 * std::max(1.0, std::abs(tr2_formula)));

    const double det_direct = z.determinant();
    const double det_formula =
        (bp.w - bp.u * bp.u.transpose()).determinant();
    REQUIRE(std::abs(det_direct - det_formula) <=
            1e-12 * std::max(1.0, std::abs(det_formula)));
  }
}

TEST_CASE("tr Z >= 0 for every physical state", "[classicality][property]") {
  SeedStream rng(307);
  for (int trial = 0; trial < 5000; ++trial) {
    const BlochPair bp = bloch_from_rho(sample_random_state(rng));
    REQUIRE(z_matrix(bp).z.trace() >= -1e-12);
  }
}

TEST_CASE("verdicts and witness are rotation invariant",
          "[classicality][property]") {
  SeedStream rng(308);
  for (int trial = 0; trial < 300; ++trial) {
    const BlochPair bp = bloch_from_rho(sample_random_state(rng));
    const BlochPair rot = rotate_state(bp, random_orthogonal(rng));
    REQUIRE(is_physical(bp).verdict == is_physical(rot).verdict);
    REQUIRE(is_classical(bp).verdict == is_classical(rot).verdict);
    REQUIRE(min_quantumness_direction(bp).q_min ==
            Catch::Approx(min_quantumness_direction(rot).q_min)
                .margin(1e-12));
  }
}

TEST_CASE("lowest eigenvalue decreases monotonically up to the boundary",
          "[classicality][property]") {
  SeedStream rng(309);
  int tested = 0, skipped_degenerate = 0;
  while (tested + skipped_degenerate < 300) {
    Vec3 mu = random_mu(rng);
    std::sort(mu.data(), mu.data() + 3);
    // Ground state of rho' is non-degenerate iff the top mu gap is open.
    if (mu(2) - mu(1) < 1e-6) {
      ++skipped_degenerate;
      continue;
    }
    const Vec3 dir = rng.unit_vector();
    const DiagonalFrame f{mu, 0.3 * dir, Mat3::Identity()};
    if (f.u_frame.norm() < 1e-12) continue;
    ++tested;

    const double k_max = kappa_at_boundary(f);
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(k_max * i / 100.0);
    const auto lm = lowest_eigenvalue_curve(f, grid);
    for (std::size_t i = 1; i < lm.size(); ++i)
      REQUIRE(lm[i] <= lm[i - 1] + 1e-12);
    REQUIRE(std::abs(lm.back()) < 1e-9);  // ends on the boundary
  }
  // The theorem assumes a non-degenerate ground state; report the skip rate.
  WARN("monotonicity: tested " << tested << " frames, skipped "
                               << skipped_degenerate
                               << " with degenerate ground state");
  REQUIRE(tested >= 200);
}

TEST_CASE("alternative boundary strata lie on det Z = 0",
          "[classicality][property]") {
  // tr Z = 0 or (tr Z)^2 = tr Z^2 with Z >= 0 force rank deficiency, so
  // those strata are part of the det Z = 0 surface rather than separate
  // pieces of the classical boundary.
  SECTION("tr Z = 0: coherent states (|u| = 1)") {
    SeedStream rng(310);
    for (int k = 0; k < 200; ++k) {
      const double theta = std::acos(2.0 * rng.uniform() - 1.0);
      const double phi = 2.0 * std::numbers::pi * rng.uniform();
      const BlochPair bp = bloch_from_rho(coherent_state(theta, phi));
      const Mat3 z = z_matrix(bp).z;
      REQUIRE(std::abs(z.trace()) < 1e-13);
      REQUIRE(std::abs(z.determinant()) < 1e-13);
    }
  }
  SECTION("(tr Z)^2 = tr Z^2: rank-one Z along the line family") {
    for (int i = 0; i <= 10; ++i) {
      const double v = -1.0 + 0.2 * i;
      const BlochPair bp = bloch_from_rho(coherent_mixture_line(v));
      const Mat3 z = z_matrix(bp).z;
      const double tr = z.trace();
      REQUIRE(std::abs(tr * tr - (z * z).trace()) < 1e-13);
      REQUIRE(std::abs(z.determinant()) < 1e-13);
    }
  }
}

TEST_CASE("report invariant: q_min equals the lowest Z eigenvalue exactly",
          "[classicality][property]") {
  SeedStream rng(311);
  for (int trial = 0; trial < 500; ++trial) {
    const BlochPair bp = bloch_from_rho(sample_random_state(rng));
    const ClassificationReport rep = classify(bp);
    REQUIRE(rep.q_min == rep.z_eigs(0));  // same code path, bit for bit
    REQUIRE(std::abs(rep.worst_direction.norm() - 1.0) < 1e-13);
    const double rayleigh =
        rep.worst_direction.dot(z_matrix(bp).z * rep.worst_direction);
    REQUIRE(rayleigh == Catch::Approx(rep.q_min).margin(1e-12));
  }
}

TEST_CASE("classify assembles a coherent report", "[classicality]") {
  SECTION("classical state") {
    const ClassificationReport rep =
        classify(bloch_from_rho(thermal_state(0.2)));
    REQUIRE(rep.physical == Verdict::Inside);
    REQUIRE(rep.classical.has_value());
    REQUIRE(*rep.classical == Verdict::Inside);
    REQUIRE(rep.q_min > 0.0);
  }
  SECTION("most quantum state") {
    const BlochPair bp{Vec3::Zero(), Vec3{1, 1, -1}.asDiagonal()};
    const ClassificationReport rep = classify(bp);
    REQUIRE(rep.physical == Verdict::Boundary);  // pure state: det rho = 0
    REQUIRE(rep.classical.has_value());
    REQUIRE(*rep.classical == Verdict::Outside);
    REQUIRE(rep.q_min == Catch::Approx(-1.0).margin(1e-13));
    REQUIRE(rep.case_n == CaseLabel::Case3);
  }
  SECTION("non-physical state: classical verdict left empty") {
    const BlochPair bp{Vec3{0.9, 0, 0}, Mat3::Identity() / 3.0};
    const ClassificationReport rep = classify(bp);
    REQUIRE(rep.physical == Verdict::Outside);
    REQUIRE_FALSE(rep.classical.has_value());
  }
}
