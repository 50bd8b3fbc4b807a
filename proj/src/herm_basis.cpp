#include "qsquare/herm_basis.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include <nlohmann/json.hpp>

namespace qsq {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kNormTol = 1e-10;
constexpr double kSparseTol = 1e-12;
constexpr double kResidueTol = 1e-8;

}  // namespace

HermitianBasis gell_mann_basis(int dim) {
  if (dim < 2)
    throw Error(ErrorCode::invalid_dimension, "gell_mann_basis: dim must be >= 2");
  if (dim > 64)
    throw Error(ErrorCode::resource_limit, "gell_mann_basis: dim > 64 unsupported");

  HermitianBasis basis;
  basis.dim = dim;
  // Standard construction has tr(g^2) = 2; rescale to tr(g^2) = dim.
  const double scale = std::sqrt(dim / 2.0);

  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Cmat s = Cmat::Zero(dim, dim);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      basis.generators.push_back(scale * s);
      basis.labels.push_back("s_" + std::to_string(j) + "_" + std::to_string(k));

      Cmat a = Cmat::Zero(dim, dim);
      a(j, k) = cplx(0, -1);
      a(k, j) = cplx(0, 1);
      basis.generators.push_back(scale * a);
      basis.labels.push_back("a_" + std::to_string(j) + "_" + std::to_string(k));
    }
  }
  for (int l = 1; l < dim; ++l) {
    Cmat h = Cmat::Zero(dim, dim);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int m = 0; m < l; ++m) h(m, m) = norm;
    h(l, l) = -l * norm;
    basis.generators.push_back(scale * h);
    basis.labels.push_back("d_" + std::to_string(l));
  }
  return basis;
}

HermitianBasis pauli_tensor_basis(int nqubits) {
  if (nqubits < 1)
    throw Error(ErrorCode::invalid_dimension, "pauli_tensor_basis: nqubits must be >= 1");
  if (nqubits > 6)
    throw Error(ErrorCode::resource_limit, "pauli_tensor_basis: nqubits > 6 unsupported");

  HermitianBasis basis;
  basis.dim = 1 << nqubits;
  const char* chars = "0xyz";

  const long total = 1L << (2 * nqubits);  // 4^N multi-indexes
  for (long idx = 1; idx < total; ++idx) {
    // lexicographic multi-index: leftmost qubit is the most significant digit
    Cmat m = Cmat::Ones(1, 1);
    std::string label;
    for (int q = nqubits - 1; q >= 0; --q) {
      int mu = static_cast<int>((idx >> (2 * q)) & 3);
      m = kron(m, pauli(mu));
      label += chars[mu];
    }
    basis.generators.push_back(std::move(m));
    basis.labels.push_back(label);
  }
  return basis;
}

void check_basis(const HermitianBasis& basis) {
  const int dim = basis.dim;
  if (dim < 2 || basis.size() != dim * dim - 1)
    throw Error(ErrorCode::inconsistent_basis, "check_basis: wrong generator count");
  for (const auto& g : basis.generators) {
    if (g.rows() != dim || g.cols() != dim)
      throw Error(ErrorCode::shape_mismatch, "check_basis: generator shape");
    if (herm_defect(g) > kHermTol)
      throw Error(ErrorCode::inconsistent_basis, "check_basis: generator not Hermitian");
    if (std::abs(g.trace()) > kTraceTol)
      throw Error(ErrorCode::inconsistent_basis, "check_basis: generator not traceless");
  }
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = i; j < basis.size(); ++j) {
      double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(hs_inner(basis.generators[i], basis.generators[j], dim) - expect) > kNormTol)
        throw Error(ErrorCode::inconsistent_basis, "check_basis: normalization violated");
    }
  }
}

StructureConstants structure_constants(const HermitianBasis& basis) {
  const int n = basis.size();
  const int dim = basis.dim;
  StructureConstants sc;
  sc.n = n;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Cmat prod = basis.generators[i] * basis.generators[j];
      // residue of the identity component
      cplx id_coef = prod.trace() / static_cast<double>(dim);
      double expect_id = (i == j) ? 1.0 : 0.0;
      if (std::abs(id_coef - expect_id) > kResidueTol)
        throw Error(ErrorCode::inconsistent_basis,
                    "structure_constants: identity component residue");
      Cmat rest = prod;
      for (int t = 0; t < dim; ++t) rest(t, t) -= expect_id;
      for (int k = 0; k < n; ++k) {
        // c_k = tr(g_k g_i g_j)/dim = i f_ijk + d_ijk
        cplx ck = (basis.generators[k].array() * rest.transpose().array()).sum() /
                  static_cast<double>(dim);
        if (std::abs(ck.real()) > kSparseTol)
          sc.d.push_back({i, j, k, ck.real()});
        if (std::abs(ck.imag()) > kSparseTol)
          sc.f.push_back({i, j, k, ck.imag()});
      }
    }
  }
  return sc;
}

std::string basis_to_json(const HermitianBasis& basis, const StructureConstants* sc) {
  nlohmann::json j;
  j["dim"] = basis.dim;
  j["labels"] = basis.labels;
  auto& gens = j["generators"] = nlohmann::json::array();
  for (const auto& g : basis.generators) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < g.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < g.cols(); ++c)
        row.push_back({g(r, c).real(), g(r, c).imag()});
      rows.push_back(std::move(row));
    }
    gens.push_back(std::move(rows));
  }
  if (sc) {
    auto& entries = j["structure_constants"] = nlohmann::json::array();
    // merge f and d entries on their index triple
    std::map<std::tuple<int, int, int>, std::pair<double, double>> merged;
    for (const auto& e : sc->f) merged[{e.i, e.j, e.k}].first = e.value;
    for (const auto& e : sc->d) merged[{e.i, e.j, e.k}].second = e.value;
    for (const auto& [key, fd] : merged) {
      entries.push_back({{"i", std::get<0>(key)},
                         {"j", std::get<1>(key)},
                         {"k", std::get<2>(key)},
                         {"f", fd.first},
                         {"d", fd.second}});
    }
  }
  return j.dump(2);
}

}  // namespace qsq
