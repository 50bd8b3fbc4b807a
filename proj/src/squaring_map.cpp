#include "qsquare/squaring_map.hpp"

#include <cmath>
#include <random>

namespace qsq {

namespace {

void require_length(const Rvec& v, const HermitianBasis& basis, const char* op) {
  if (v.size() != basis.size())
    throw Error(ErrorCode::shape_mismatch, std::string(op) + ": coefficient length mismatch");
}

}  // namespace

Cmat bloch_to_density(const Rvec& a, const HermitianBasis& basis) {
  require_length(a, basis, "bloch_to_density");
  Cmat rho = Cmat::Identity(basis.dim, basis.dim);
  for (int i = 0; i < basis.size(); ++i) rho += a(i) * basis.generators[i];
  rho /= static_cast<double>(basis.dim);
  return rho;
}

Cmat aux_to_density(const Rvec& b, const HermitianBasis& basis) {
  require_length(b, basis, "aux_to_density");
  Cmat tau = bloch_to_density(b, basis);
  Cmat tau2 = tau * tau;
  double norm = tau2.trace().real();
  if (norm < 1e-300)
    throw Error(ErrorCode::degenerate_tau, "aux_to_density: tr(tau^2) vanishes");
  return tau2 / norm;
}

Rvec squaring_map(const Rvec& b, const StructureConstants& sc) {
  if (b.size() != sc.n)
    throw Error(ErrorCode::shape_mismatch, "squaring_map: length mismatch");
  Rvec num = 2.0 * b;
  for (const auto& e : sc.d) num(e.i) += e.value * b(e.j) * b(e.k);
  return num / (1.0 + b.squaredNorm());
}

Rvec density_to_aux(const Cmat& rho, const HermitianBasis& basis) {
  if (rho.rows() != basis.dim || rho.cols() != basis.dim)
    throw Error(ErrorCode::shape_mismatch, "density_to_aux: shape mismatch");
  Eigen::SelfAdjointEigenSolver<Cmat> es(rho);
  if (es.eigenvalues()(0) < -1e-8)
    throw Error(ErrorCode::not_a_state, "density_to_aux: negative eigenvalue");
  Rvec sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Cmat tau = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
  double tr = tau.trace().real();
  if (tr < 1e-150)
    throw Error(ErrorCode::degenerate_tau, "density_to_aux: square root has zero trace");
  tau /= tr;
  // tau = (1 + b_i g_i)/dim  =>  b_i = tr(g_i tau)
  Rvec b(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    b(i) = (basis.generators[i].array() * tau.transpose().array()).sum().real();
  return b;
}

Rmat jacobian(const Rvec& b, const StructureConstants& sc) {
  if (b.size() != sc.n)
    throw Error(ErrorCode::shape_mismatch, "jacobian: length mismatch");
  const double s = 1.0 + b.squaredNorm();
  Rvec num = 2.0 * b;
  Rmat db = Rmat::Zero(sc.n, sc.n);  // (d b)_ij = d_ijk b_k
  for (const auto& e : sc.d) {
    num(e.i) += e.value * b(e.j) * b(e.k);
    db(e.i, e.j) += e.value * b(e.k);
  }
  Rmat jac = (2.0 * Rmat::Identity(sc.n, sc.n) + 2.0 * db) / s;
  jac.noalias() -= (2.0 / (s * s)) * num * b.transpose();
  return jac;
}

double boundary_residual(const Rvec& b, const StructureConstants& sc) {
  return jacobian(b, sc).partialPivLu().determinant();
}

PointClassification classify_point(const Rvec& b, const HermitianBasis& basis,
                                   const StructureConstants& sc, double tol) {
  if (tol <= 0) throw Error(ErrorCode::invalid_argument, "classify_point: tol <= 0");
  PointClassification out{};
  out.det = boundary_residual(b, sc);
  Eigen::SelfAdjointEigenSolver<Cmat> es(aux_to_density(b, basis));
  out.min_eig = es.eigenvalues()(0);
  out.zero_multiplicity = static_cast<int>((es.eigenvalues().array() < tol).count());
  if (out.min_eig < tol)
    out.cls = PointClass::Boundary;
  else if (std::abs(out.det) < tol)
    out.cls = PointClass::CriticalButInterior;
  else
    out.cls = PointClass::Interior;
  return out;
}

Rvec pure_state_residual(const Rvec& a, const StructureConstants& sc, int dim) {
  if (a.size() != sc.n)
    throw Error(ErrorCode::shape_mismatch, "pure_state_residual: length mismatch");
  Rvec res(sc.n + 1);
  res(0) = a.squaredNorm() - (dim - 1);
  res.tail(sc.n) = (dim - 2) * a;
  for (const auto& e : sc.d) res(1 + e.i) -= e.value * a(e.j) * a(e.k);
  return res;
}

DescentResult minimize_expectation(const Cmat& h, const HermitianBasis& basis,
                                   const StructureConstants& sc,
                                   const DescentConfig& config) {
  if (h.rows() != basis.dim || h.cols() != basis.dim)
    throw Error(ErrorCode::shape_mismatch, "minimize_expectation: shape mismatch");
  if (herm_defect(h) > 1e-10)
    throw Error(ErrorCode::invalid_argument, "minimize_expectation: H not Hermitian");

  const int n = basis.size();
  const double h0 = h.trace().real() / basis.dim;
  Rvec hv(n);
  for (int i = 0; i < n; ++i)
    hv(i) = (basis.generators[i].array() * h.transpose().array()).sum().real() / basis.dim;

  auto energy = [&](const Rvec& b) { return h0 + squaring_map(b, sc).dot(hv); };

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 0.1);
  Rvec b = Rvec::Zero(n);
  double e = energy(b);
  // nudge off the origin if it happens to be a stationary point
  Rvec g0 = jacobian(b, sc).transpose() * hv;
  if (g0.norm() < config.grad_tol) {
    for (int i = 0; i < n; ++i) b(i) = gauss(rng);
    e = energy(b);
  }

  double step = config.init_step;
  int iter = 0;
  bool converged = false;
  for (; iter < config.max_iters; ++iter) {
    Rvec grad = jacobian(b, sc).transpose() * hv;
    double gnorm2 = grad.squaredNorm();
    if (std::sqrt(gnorm2) < config.grad_tol) {
      converged = true;
      break;
    }
    // backtracking line search with Armijo condition
    double s = step;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Rvec cand = b - s * grad;
      double ec = energy(cand);
      if (ec <= e - 1e-4 * s * gnorm2) {
        b = std::move(cand);
        e = ec;
        step = 1.5 * s;
        moved = true;
        break;
      }
      s *= 0.5;
    }
    if (!moved) {
      converged = true;  // no descent direction at working precision
      break;
    }
  }
  return {b, e, converged, iter};
}

}  // namespace qsq
