#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qsquare/linalg.hpp"
#include "qsquare/squaring_map.hpp"

namespace qsq {

// Linear section of the state set spanned by {B_0 = 1, B_1, ...}. The basis
// is not assumed orthogonal; projections go through the Gram system.
struct ConstraintSubspace {
  int nqubits = 0;
  int D = 0;  // 2^nqubits
  std::vector<Cmat> ops;  // identity first
  std::vector<std::string> names;
  Rmat gram;

  int dim() const { return static_cast<int>(ops.size()); }
  int coord_dim() const { return dim() - 1; }

  // Least-squares coordinates of m in span{ops} and the max-norm residual.
  std::pair<Rvec, double> project(const Cmat& m) const;
};

ConstraintSubspace werner2_subspace();   // {1, (s1 s2)}
ConstraintSubspace ti3_subspace();       // {1, (s1s2)+(s2s3)+(s3s1), (s1s2s3)}
ConstraintSubspace tinv3_subspace();     // {1, (s1s2), (s2s3), (s1s3)}

// Full rotationally invariant operator basis on N qubits (N in 2..5).
// For N >= 4 the natural spanning set is linearly dependent; a maximal
// independent subset is selected greedily in deterministic order.
ConstraintSubspace werner_basis(int nqubits);

// Squaring map on the section, prefactor-free convention:
// tau = 1 + sum b_a B_a, rho = tau^2/tr tau^2, coords a with
// rho = (1/D)(1 + sum a_a B_a). Throws if the projection residual exceeds
// 1e-9 (subspace not closed under squaring).
Rvec section_squaring_map(const ConstraintSubspace& sub, const Rvec& b);

// Dense state realized by section coordinates (Bloch side).
Cmat section_bloch_to_density(const ConstraintSubspace& sub, const Rvec& a);

// Closed forms for the three worked sections.
double werner2_map(double b);
std::pair<double, double> ti3_map(double bs, double bt);
double ti3_boundary_residual(double bs, double bt);
std::array<double, 3> tinv3_map(double b12, double b23, double b13);
double tinv3_boundary_residual(double b12, double b23, double b13);

struct ScanSpec {
  std::vector<double> lo, hi;
  std::vector<int> res;  // per axis, each >= 2
  double det_tol = 1e-8;
  double eig_tol = 1e-8;
  double fd_step = 1e-5;
  bool refine = true;
  double refine_tol = 1e-10;
  int threads = 1;
};

struct ScanPoint {
  Rvec b, a;
  double det;
  double min_eig;
  PointClass cls;
  bool refined;
};

// Grid sweep of the section map with finite-difference Jacobian determinant
// and eigenvalue classification; sign changes of the determinant along grid
// edges are refined by bisection. Points are streamed to emit in a
// deterministic order (grid points first, refined points after).
void boundary_scan(const ConstraintSubspace& sub, const ScanSpec& spec,
                   const std::function<void(const ScanPoint&)>& emit);

// Finite-difference Jacobian determinant of the section map at b.
double section_boundary_residual(const ConstraintSubspace& sub, const Rvec& b,
                                 double fd_step = 1e-5);

}  // namespace qsq
