#include "cellab/errors.hpp"
#include "cellab/numerics.hpp"
#include "cellab/random.hpp"

#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace cellab;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix diag_phase(std::initializer_list<double> angles) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(angles.size()), static_cast<Eigen::Index>(angles.size()));
  Eigen::Index i = 0;
  for (double a : angles) {
    m(i, i) = std::polar(1.0, a);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("hermitian_eigen agrees with Eigen's self-adjoint solver") {
  Rng rng(7);
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix a = random_hermitian(rng, n);
      const HermitianEigen ours = hermitian_eigen(a);
      const Eigen::SelfAdjointEigenSolver<ComplexMatrix> oracle(a);
      CHECK((ours.values - oracle.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
      const ComplexMatrix recon = ours.vectors * ours.values.asDiagonal() * ours.vectors.adjoint();
      CHECK((recon - a).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("hermitian_eigen rejects non-hermitian input") {
  ComplexMatrix a(2, 2);
  a << 1, 2, 0, 1;
  CHECK_THROWS_AS(hermitian_eigen(a), FlavorError);
}

TEST_CASE("2x2 unitary eigenvalues match the closed form") {
  Rng rng(11);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double a = angle(rng);
    const double b = angle(rng);
    const ComplexMatrix q = unitary_exp(random_hermitian(rng, 2));
    const ComplexMatrix u = q * diag_phase({a, b}) * q.adjoint();
    // trace and determinant give z^2 - tr z + det = 0
    const Complex tr = u.trace();
    const Complex det = u.determinant();
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    std::vector<double> expected{wrap_angle(std::arg((tr + disc) / 2.0)), wrap_angle(std::arg((tr - disc) / 2.0))};
    std::vector<double> got = unitary_eigen(u).angles;
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(expected[0]).epsilon(1e-9));
    CHECK(got[1] == doctest::Approx(expected[1]).epsilon(1e-9));
  }
}

TEST_CASE("unitary_eigen resolves a repeated hermitian part") {
  // e^{ia} and e^{-ia} share the real part cos a
  const ComplexMatrix u = diag_phase({0.7, -0.7, 0.7});
  std::vector<double> got = unitary_eigen(u).angles;
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(-0.7));
  CHECK(got[1] == doctest::Approx(0.7));
  CHECK(got[2] == doctest::Approx(0.7));
}

TEST_CASE("operator_norm matches the largest singular value") {
  Rng rng(3);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 40; ++rep) {
    ComplexMatrix a(4, 3);
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = Complex(g(rng), g(rng));
    const Eigen::JacobiSVD<ComplexMatrix> svd(a);
    CHECK(operator_norm(a) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
  }
}

TEST_CASE("principal_log inverts unitary_exp away from -1") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix h = random_hermitian(rng, 4);
    h *= 2.5 / std::max(1.0, operator_norm(h));
    const ComplexMatrix u = unitary_exp(h);
    CHECK((principal_log(u) - h).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK_THROWS_AS(principal_log(diag_phase({kPi, 0.0})), BranchCutError);
}

TEST_CASE("lift_branches follows winding eigenvalues") {
  const auto u = SampledMatrixField::sample(
      [](double t) { return diag_phase({1.5 * kPi * t + 0.5, 0.25 * kPi * t - 0.5}); }, 257, Flavor::unitary);
  const BranchLift lift = lift_branches(u);
  REQUIRE(lift.count() == 2);
  // ascending principal angles at t = 0
  CHECK(lift.branches[0].front() == doctest::Approx(-0.5));
  CHECK(lift.branches[0].back() == doctest::Approx(0.25 * kPi - 0.5));
  CHECK(lift.branches[1].back() == doctest::Approx(1.5 * kPi + 0.5));
  for (std::size_t g = 0; g < lift.grid_size(); g += 32) {
    const ComplexMatrix& frame = lift.frames[g];
    const ComplexMatrix rebuilt = frame * diag_phase({lift.branches[0][g], lift.branches[1][g]}) * frame.adjoint();
    CHECK((rebuilt - u[g]).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("lift_branches reports collisions") {
  const auto u = SampledMatrixField::sample(
      [](double t) { return diag_phase({t - 0.5, 0.5 - t}); }, 65, Flavor::unitary);
  CHECK_THROWS_AS(lift_branches(u), CollisionError);
}

TEST_CASE("jitter separates repeated eigenvalues and keeps the determinant") {
  const ComplexMatrix u = diag_phase({0.3, 0.3, 0.3, -0.9});
  const ComplexMatrix v = jitter(u, 1e-6);
  CHECK(std::abs(v.determinant() - u.determinant()) < 1e-12);
  CHECK(min_circular_gap(unitary_eigen(v).angles) >= 1e-6 * 0.999);
  CHECK(operator_norm(v - u) <= 1.5e-6 + 1e-12);
}

TEST_CASE("min_circular_gap wraps around the circle") {
  const std::vector<double> angles{kPi - 0.01, -kPi + 0.02, 0.0};
  CHECK(min_circular_gap(angles) == doctest::Approx(0.03));
}

TEST_CASE("field construction checks flavor and shape") {
  ComplexMatrix a(2, 2);
  a << 1, 2, 0, 1;
  CHECK_THROWS_AS(SampledMatrixField({a, a}, Flavor::unitary), FlavorError);
  CHECK_THROWS(SampledMatrixField({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)}, Flavor::unitary));
}
