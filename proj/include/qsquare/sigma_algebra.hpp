#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsquare/linalg.hpp"

namespace qsq {

// One rotationally invariant building block over named qubits:
// Scalar(n,m)   = sum_alpha sigma_n^alpha sigma_m^alpha        (stored n < m)
// Triple(n,m,l) = eps_abc   sigma_n^a sigma_m^b sigma_l^c      (stored n < m < l,
//                 odd-permutation sign absorbed into the coefficient)
struct SigmaFactor {
  int a = 0, b = 0, c = 0;  // qubit labels >= 1; c == 0 marks a scalar product
  bool is_triple() const { return c != 0; }
  int overlap(const SigmaFactor& o) const;
  auto operator<=>(const SigmaFactor&) const = default;
};

// Ordered product of factors. Canonical monomials have pairwise disjoint
// factors sorted by label; overlapping products are reduced away.
using SigmaMonomial = std::vector<SigmaFactor>;

class SigmaExpr {
 public:
  SigmaExpr() = default;

  static SigmaExpr zero() { return {}; }
  static SigmaExpr one();
  static SigmaExpr scalar_product(int n, int m);
  static SigmaExpr triple_product(int n, int m, int l);

  SigmaExpr& operator+=(const SigmaExpr& o);
  SigmaExpr& operator*=(cplx s);
  friend SigmaExpr operator+(SigmaExpr a, const SigmaExpr& b) { return a += b; }
  friend SigmaExpr operator*(cplx s, SigmaExpr e) { return e *= s; }
  friend SigmaExpr operator*(SigmaExpr e, cplx s) { return e *= s; }

  // Reverses factor order and conjugates coefficients (every factor is
  // Hermitian, so this is the operator adjoint).
  SigmaExpr adjoint() const;

  int max_label() const;
  bool empty() const { return terms_.empty(); }
  const std::map<SigmaMonomial, cplx>& terms() const { return terms_; }

  void add_term(SigmaMonomial mono, cplx coef);

  std::string str() const;
  static SigmaExpr parse(const std::string& text);

 private:
  std::map<SigmaMonomial, cplx> terms_;
};

// Product with full reduction to canonical form via the pairwise convolution
// rules for overlapping scalar/triple factors.
SigmaExpr multiply(const SigmaExpr& x, const SigmaExpr& y);

// Dense realization on nqubits spins (nqubits <= 6).
Cmat to_dense(const SigmaExpr& x, int nqubits);

// Entrywise max difference of the dense realizations.
double verify_identity(const SigmaExpr& lhs, const SigmaExpr& rhs, int nqubits);

struct SigmaIdentity {
  std::string name;
  SigmaExpr lhs;  // raw (unreduced) product, realized densely factor by factor
  SigmaExpr rhs;
  int nqubits;
};

// The convolution identity table q1..q9 (plus the reversed-order companions
// q4a, q5a) used by the rewrite engine, as formal expressions for dense
// verification.
const std::vector<SigmaIdentity>& convolution_identities();

}  // namespace qsq
