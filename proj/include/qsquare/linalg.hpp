#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qsq {

using cplx = std::complex<double>;
using Cmat = Eigen::MatrixXcd;
using Rvec = Eigen::VectorXd;
using Rmat = Eigen::MatrixXd;

enum class ErrorCode {
  invalid_argument = 1,
  invalid_dimension,
  resource_limit,
  shape_mismatch,
  inconsistent_basis,
  not_a_state,
  degenerate_tau,
  subspace_not_closed,
  domain_error,
  parse_error,
  unsupported_pattern,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// tr(AB)/dim for same-size square matrices.
inline double hs_inner(const Cmat& a, const Cmat& b, int dim) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() ||
      a.rows() != dim) {
    throw Error(ErrorCode::shape_mismatch, "hs_inner: shape mismatch");
  }
  // tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum().real() / dim;
}

inline double herm_defect(const Cmat& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline double max_abs(const Cmat& a) { return a.cwiseAbs().maxCoeff(); }

inline Cmat kron(const Cmat& a, const Cmat& b) {
  Cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline const Cmat& pauli(int mu) {
  static const Cmat mats[4] = {
      (Cmat(2, 2) << 1, 0, 0, 1).finished(),
      (Cmat(2, 2) << 0, 1, 1, 0).finished(),
      (Cmat(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
      (Cmat(2, 2) << 1, 0, 0, -1).finished()};
  if (mu < 0 || mu > 3) throw Error(ErrorCode::invalid_argument, "pauli index");
  return mats[mu];
}

}  // namespace qsq
