#include "qsquare/state_geometry.hpp"

#include <cmath>

namespace qsq {

SpectralReport validate_density(const Cmat& rho, double tol, double rank_tol) {
  if (rho.rows() != rho.cols())
    throw Error(ErrorCode::shape_mismatch, "validate_density: not square");
  if (herm_defect(rho) > tol)
    throw Error(ErrorCode::not_a_state, "validate_density: not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > tol)
    throw Error(ErrorCode::not_a_state, "validate_density: trace != 1");

  Eigen::SelfAdjointEigenSolver<Cmat> es(rho);
  SpectralReport rep;
  rep.eigenvalues = es.eigenvalues();
  rep.min_eig = rep.eigenvalues(0);
  rep.purity = rep.eigenvalues.squaredNorm();
  rep.rank = static_cast<int>((rep.eigenvalues.array() > rank_tol).count());
  return rep;
}

double projector_residual(const Cmat& rho, int r) {
  if (rho.rows() != rho.cols())
    throw Error(ErrorCode::shape_mismatch, "projector_residual: not square");
  if (r < 1 || r > rho.rows())
    throw Error(ErrorCode::invalid_argument, "projector_residual: rank out of range");
  return max_abs(rho * rho - rho / static_cast<double>(r));
}

}  // namespace qsq
