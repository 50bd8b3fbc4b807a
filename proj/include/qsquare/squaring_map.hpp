#pragma once

#include <cstdint>

#include "qsquare/herm_basis.hpp"

namespace qsq {

// rho = (1 + a_i g_i)/dim. Positivity is not guaranteed.
Cmat bloch_to_density(const Rvec& a, const HermitianBasis& basis);

// tau = (1 + b_i g_i)/dim, rho = tau^2 / tr(tau^2). Always a valid state.
Cmat aux_to_density(const Rvec& b, const HermitianBasis& basis);

// a_i = (2 b_i + d_ijk b_j b_k) / (1 + b.b)
Rvec squaring_map(const Rvec& b, const StructureConstants& sc);

// Principal square-root preimage: tau = sqrt(rho)/tr sqrt(rho), b_i = tr(g_i tau).
Rvec density_to_aux(const Cmat& rho, const HermitianBasis& basis);

// Analytic d a_i / d b_j of squaring_map.
Rmat jacobian(const Rvec& b, const StructureConstants& sc);

// det jacobian(b); zero is necessary (not sufficient) for a(b) on the boundary.
double boundary_residual(const Rvec& b, const StructureConstants& sc);

enum class PointClass { Interior, Boundary, CriticalButInterior };

struct PointClassification {
  PointClass cls;
  int zero_multiplicity;  // eigenvalues below tol (Boundary only)
  double min_eig;
  double det;
};

PointClassification classify_point(const Rvec& b, const HermitianBasis& basis,
                                   const StructureConstants& sc, double tol = 1e-8);

// Component 0: a.a - (dim-1); component i: (dim-2) a_i - d_ijk a_j a_k.
// All vanish iff bloch_to_density(a) is a rank-1 projector.
Rvec pure_state_residual(const Rvec& a, const StructureConstants& sc, int dim);

inline double first_bloch_inequality(const Rvec& a, int dim) {
  return a.squaredNorm() - (dim - 1);
}

struct DescentConfig {
  int max_iters = 5000;
  double grad_tol = 1e-9;
  double init_step = 0.5;
  uint64_t seed = 0;  // for the random restart perturbation
};

struct DescentResult {
  Rvec b;
  double energy;
  bool converged;
  int iterations;
};

// Gradient descent on E(b) = tr(aux_to_density(b) H) with the analytic
// chain-rule gradient through squaring_map. Backtracking line search.
DescentResult minimize_expectation(const Cmat& h, const HermitianBasis& basis,
                                   const StructureConstants& sc,
                                   const DescentConfig& config = {});

}  // namespace qsq
