#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qsquare/squaring_map.hpp"
#include "qsquare/state_geometry.hpp"

using namespace qsq;

namespace {

Rvec random_vec(int n, std::mt19937_64& rng, double range = 2.0) {
  std::uniform_real_distribution<double> uni(-range, range);
  Rvec v(n);
  for (int i = 0; i < n; ++i) v(i) = uni(rng);
  return v;
}

// Independent dense oracle: build tau from the generators, square, normalize,
// read the Bloch components back with the trace inner product.
Rvec dense_bloch_oracle(const Rvec& b, const HermitianBasis& basis) {
  const int D = basis.dim;
  Cmat tau = Cmat::Identity(D, D);
  for (int i = 0; i < basis.size(); ++i) tau += b(i) * basis.generators[i];
  tau /= static_cast<double>(D);
  Cmat rho = tau * tau;
  rho /= rho.trace().real();
  Rvec a(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    a(i) = (basis.generators[i] * rho).trace().real();
  return a;
}

Cmat random_pure_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = cplx(gauss(rng), gauss(rng));
  psi.normalize();
  return psi * psi.adjoint();
}

}  // namespace

TEST_CASE("origin maps to the maximally mixed state") {
  for (int dim : {2, 3, 5}) {
    CAPTURE(dim);
    auto basis = gell_mann_basis(dim);
    auto sc = structure_constants(basis);
    Rvec zero = Rvec::Zero(basis.size());
    CHECK(squaring_map(zero, sc).norm() == doctest::Approx(0.0));
    CHECK(max_abs(aux_to_density(zero, basis) - Cmat::Identity(dim, dim) / dim) <
          1e-15);
  }
}

TEST_CASE("squaring map agrees with the dense oracle") {
  std::mt19937_64 rng(11);
  for (int dim : {2, 3, 4}) {
    CAPTURE(dim);
    auto basis = gell_mann_basis(dim);
    auto sc = structure_constants(basis);
    for (int trial = 0; trial < 50; ++trial) {
      Rvec b = random_vec(basis.size(), rng);
      Rvec a = squaring_map(b, sc);
      CHECK((a - dense_bloch_oracle(b, basis)).lpNorm<Eigen::Infinity>() < 1e-10);
    }
  }
  auto basis = pauli_tensor_basis(3);  // D = 8
  auto sc = structure_constants(basis);
  for (int trial = 0; trial < 5; ++trial) {
    Rvec b = random_vec(basis.size(), rng);
    Rvec a = squaring_map(b, sc);
    CHECK((a - dense_bloch_oracle(b, basis)).lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("mapped states are always valid states") {
  std::mt19937_64 rng(13);
  for (int dim : {2, 3, 4}) {
    CAPTURE(dim);
    auto basis = gell_mann_basis(dim);
    for (int trial = 0; trial < 200; ++trial) {
      Rvec b = random_vec(basis.size(), rng, 5.0);
      auto rep = validate_density(aux_to_density(b, basis), 1e-10);
      CHECK(rep.min_eig >= -1e-10);
    }
  }
}

TEST_CASE("analytic jacobian matches central differences") {
  std::mt19937_64 rng(17);
  const double h = 1e-5;
  for (int dim : {2, 3}) {
    CAPTURE(dim);
    auto basis = gell_mann_basis(dim);
    auto sc = structure_constants(basis);
    const int n = basis.size();
    for (int trial = 0; trial < 10; ++trial) {
      Rvec b = random_vec(n, rng, 1.0);
      Rmat jac = jacobian(b, sc);
      for (int j = 0; j < n; ++j) {
        Rvec bp = b, bm = b;
        bp(j) += h;
        bm(j) -= h;
        Rvec col = (squaring_map(bp, sc) - squaring_map(bm, sc)) / (2 * h);
        CHECK((col - jac.col(j)).lpNorm<Eigen::Infinity>() < 1e-6);
      }
    }
  }
}

TEST_CASE("pure states are fixed points with singular jacobian") {
  std::mt19937_64 rng(19);
  for (int dim : {2, 3, 4}) {
    CAPTURE(dim);
    auto basis = gell_mann_basis(dim);
    auto sc = structure_constants(basis);
    for (int trial = 0; trial < 10; ++trial) {
      Cmat rho = random_pure_state(dim, rng);
      Rvec a(basis.size());
      for (int i = 0; i < basis.size(); ++i)
        a(i) = (basis.generators[i] * rho).trace().real();

      CHECK(pure_state_residual(a, sc, dim).lpNorm<Eigen::Infinity>() < 1e-9);
      CHECK((squaring_map(a, sc) - a).lpNorm<Eigen::Infinity>() < 1e-9);
      CHECK(first_bloch_inequality(a, dim) == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(std::abs(boundary_residual(a, sc)) < 1e-7);

      // the preimage of a pure state is its own Bloch vector; the zero
      // eigenvalues contribute sqrt-of-roundoff noise to the square root
      CHECK((density_to_aux(rho, basis) - a).lpNorm<Eigen::Infinity>() < 1e-6);
    }
  }
}

TEST_CASE("density roundtrip through the principal square root") {
  std::mt19937_64 rng(23);
  for (int dim : {2, 3, 4}) {
    CAPTURE(dim);
    auto basis = gell_mann_basis(dim);
    for (int trial = 0; trial < 30; ++trial) {
      Cmat rho = aux_to_density(random_vec(basis.size(), rng), basis);
      Rvec b2 = density_to_aux(rho, basis);
      CHECK(max_abs(aux_to_density(b2, basis) - rho) < 1e-8);
    }
  }
}

TEST_CASE("point classification distinguishes interior and boundary") {
  auto basis = gell_mann_basis(2);
  auto sc = structure_constants(basis);

  auto at_origin = classify_point(Rvec::Zero(3), basis, sc);
  CHECK(at_origin.cls == PointClass::Interior);
  CHECK(at_origin.det == doctest::Approx(8.0).epsilon(1e-12));

  Rvec pure(3);
  pure << 0, 0, 1;  // |0><0|
  auto at_pole = classify_point(pure, basis, sc);
  CHECK(at_pole.cls == PointClass::Boundary);
  CHECK(at_pole.zero_multiplicity == 1);
  CHECK(std::abs(at_pole.min_eig) < 1e-12);
}

TEST_CASE("degenerate tau is reported") {
  auto basis = gell_mann_basis(2);
  CHECK_THROWS_AS(density_to_aux(Cmat::Zero(2, 2), basis), Error);
}

TEST_CASE("descent reaches the ground state of sigma z") {
  auto basis = gell_mann_basis(2);
  auto sc = structure_constants(basis);
  auto res = minimize_expectation(pauli(3), basis, sc);
  CHECK(res.converged);
  CHECK(res.energy == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("descent is exact for a constant hamiltonian") {
  auto basis = gell_mann_basis(3);
  auto sc = structure_constants(basis);
  auto res = minimize_expectation(Cmat::Identity(3, 3), basis, sc);
  CHECK(res.converged);
  CHECK(res.energy == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("descent energy never undercuts the spectral bound") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> gauss;
  auto basis = gell_mann_basis(3);
  auto sc = structure_constants(basis);
  for (int trial = 0; trial < 5; ++trial) {
    Cmat g(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) g(r, c) = cplx(gauss(rng), gauss(rng));
    Cmat h = g + g.adjoint();
    Eigen::SelfAdjointEigenSolver<Cmat> es(h);
    DescentConfig cfg;
    cfg.seed = trial + 1;
    auto res = minimize_expectation(h, basis, sc, cfg);
    CHECK(res.energy >= es.eigenvalues()(0) - 1e-6);
    CHECK(res.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-4));
  }
}
