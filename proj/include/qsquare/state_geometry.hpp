#pragma once

#include "qsquare/linalg.hpp"

namespace qsq {

struct SpectralReport {
  Rvec eigenvalues;  // ascending
  double purity = 0;
  int rank = 0;
  double min_eig = 0;
};

// Checks hermiticity and unit trace (throws beyond tol) and reports the
// spectrum; positivity is left to the caller via min_eig.
SpectralReport validate_density(const Cmat& rho, double tol = 1e-12,
                                double rank_tol = 1e-9);

// max-norm of rho^2 - rho/r; zero iff rho is a rank-r projector over r.
double projector_residual(const Cmat& rho, int r);

}  // namespace qsq
