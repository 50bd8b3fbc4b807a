#pragma once

#include <string>
#include <vector>

#include "qsquare/linalg.hpp"

namespace qsq {

// Identity-completed orthogonal generator basis: dim*dim - 1 traceless
// Hermitian matrices normalized to tr(g_i g_j) = dim * delta_ij.
struct HermitianBasis {
  int dim = 0;
  std::vector<Cmat> generators;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(generators.size()); }
};

struct SCEntry {
  int i, j, k;
  double value;
};

// Sparse f (totally antisymmetric) and d (totally symmetric) tensors closing
// g_i g_j = delta_ij 1 + (i f_ijk + d_ijk) g_k. All nonzero index triples are
// stored explicitly, so contractions need no symmetry bookkeeping.
struct StructureConstants {
  int n = 0;  // index range
  std::vector<SCEntry> f;
  std::vector<SCEntry> d;
};

HermitianBasis gell_mann_basis(int dim);
HermitianBasis pauli_tensor_basis(int nqubits);

// Throws on invariant violation (hermiticity, tracelessness, normalization).
void check_basis(const HermitianBasis& basis);

StructureConstants structure_constants(const HermitianBasis& basis);

std::string basis_to_json(const HermitianBasis& basis,
                          const StructureConstants* sc = nullptr);

}  // namespace qsq
