#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qsquare/state_geometry.hpp"

using namespace qsq;

namespace {

Cmat random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Cmat g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Cmat> qr(g);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("maximally mixed state report") {
  for (int dim : {2, 3, 5}) {
    CAPTURE(dim);
    auto rep = validate_density(Cmat::Identity(dim, dim) / dim);
    CHECK(rep.rank == dim);
    CHECK(rep.purity == doctest::Approx(1.0 / dim).epsilon(1e-14));
    CHECK(rep.min_eig == doctest::Approx(1.0 / dim).epsilon(1e-14));
    CHECK(rep.eigenvalues.size() == dim);
  }
}

TEST_CASE("spectrum survives a random unitary rotation") {
  std::mt19937_64 rng(7);
  Rvec spec(3);
  spec << 0.1, 0.3, 0.6;
  Cmat rho = Cmat::Zero(3, 3);
  for (int i = 0; i < 3; ++i) rho(i, i) = spec(i);
  Cmat u = random_unitary(3, rng);
  auto rep = validate_density(u * rho * u.adjoint());
  for (int i = 0; i < 3; ++i)
    CHECK(rep.eigenvalues(i) == doctest::Approx(spec(i)).epsilon(1e-12));
  CHECK(rep.purity == doctest::Approx(0.01 + 0.09 + 0.36).epsilon(1e-12));
  CHECK(rep.rank == 3);
}

TEST_CASE("rank counts only eigenvalues above the rank tolerance") {
  Cmat rho = Cmat::Zero(3, 3);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  auto rep = validate_density(rho);
  CHECK(rep.rank == 2);
  CHECK(rep.min_eig == doctest::Approx(0.0));
}

TEST_CASE("hermiticity and trace violations are rejected") {
  Cmat bad = Cmat::Identity(2, 2) / 2.0;
  bad(0, 1) = cplx(0.1, 0.0);  // (1,0) stays zero
  CHECK_THROWS_AS(validate_density(bad), Error);

  CHECK_THROWS_AS(validate_density(Cmat::Identity(2, 2)), Error);  // trace 2

  try {
    validate_density(Cmat::Identity(2, 2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_state);
  }
}

TEST_CASE("projector residual vanishes exactly on normalized projectors") {
  // rank-1: |0><0|
  Cmat p1 = Cmat::Zero(2, 2);
  p1(0, 0) = 1.0;
  CHECK(projector_residual(p1, 1) == doctest::Approx(0.0));

  // rank-2 inside dim 3, normalized state Pi/2 against r = 2
  Cmat rho = Cmat::Zero(3, 3);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  CHECK(projector_residual(rho, 2) == doctest::Approx(0.0));
  CHECK(projector_residual(rho, 1) > 0.1);

  // the maximally mixed state is the rank-D case
  CHECK(projector_residual(Cmat::Identity(4, 4) / 4.0, 4) == doctest::Approx(0.0));
}

TEST_CASE("projector residual rejects ranks outside 1..D") {
  Cmat rho = Cmat::Identity(2, 2) / 2.0;
  CHECK_THROWS_AS(projector_residual(rho, 0), Error);
  CHECK_THROWS_AS(projector_residual(rho, 3), Error);
}
