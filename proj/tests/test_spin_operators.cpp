#include "spinone/spin_operators.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

using namespace spinone;

TEST_CASE("Jz is diagonal (1, 0, -1) in the chosen basis", "[spin_operators]") {
  const auto& ops = spin1_operators();
  CMat3 expected = CMat3::Zero();
  expected(0, 0) = 1.0;
  expected(2, 2) = -1.0;
  REQUIRE((ops.jz - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spin-1 commutation relations", "[spin_operators]") {
  const auto& ops = spin1_operators();
  const Complex i(0.0, 1.0);
  REQUIRE((ops.jx * ops.jy - ops.jy * ops.jx - i * ops.jz)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  REQUIRE((ops.jy * ops.jz - ops.jz * ops.jy - i * ops.jx)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  REQUIRE((ops.jz * ops.jx - ops.jx * ops.jz - i * ops.jy)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("Casimir Jx^2 + Jy^2 + Jz^2 = 2 I", "[spin_operators]") {
  const auto& ops = spin1_operators();
  const CMat3 casimir =
      ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
  REQUIRE((casimir - 2.0 * CMat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("each component has spectrum {-1, 0, 1}", "[spin_operators]") {
  const auto& ops = spin1_operators();
  for (int a = 0; a < 3; ++a) {
    Eigen::SelfAdjointEigenSolver<CMat3> solver(ops.component(a));
    const Vec3 ev = solver.eigenvalues();
    REQUIRE(ev(0) == Catch::Approx(-1.0).margin(1e-14));
    REQUIRE(ev(1) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(ev(2) == Catch::Approx(1.0).margin(1e-14));
    REQUIRE((ops.component(a) - ops.component(a).adjoint())
                .cwiseAbs()
                .maxCoeff() == 0.0);
  }
}

TEST_CASE("dot_j is linear in the direction", "[spin_operators]") {
  const Vec3 n{0.3, -1.2, 0.5};
  const auto& ops = spin1_operators();
  const CMat3 expect = 0.3 * ops.jx - 1.2 * ops.jy + 0.5 * ops.jz;
  REQUIRE((dot_j(n) - expect).cwiseAbs().maxCoeff() == 0.0);
}
