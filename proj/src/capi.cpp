#include "qsquare.h"

#include <cstring>
#include <mutex>
#include <sstream>
#include <thread>

#include "qsquare/extremal_solver.hpp"
#include "qsquare/herm_basis.hpp"
#include "qsquare/sigma_algebra.hpp"
#include "qsquare/squaring_map.hpp"
#include "qsquare/state_geometry.hpp"
#include "qsquare/werner_sets.hpp"

namespace {

thread_local std::string g_last_error;

int code_of(const qsq::Error& e) {
  switch (e.code()) {
    case qsq::ErrorCode::invalid_argument: return QSQ_ERR_INVALID_ARGUMENT;
    case qsq::ErrorCode::invalid_dimension: return QSQ_ERR_INVALID_DIMENSION;
    case qsq::ErrorCode::resource_limit: return QSQ_ERR_RESOURCE_LIMIT;
    case qsq::ErrorCode::shape_mismatch: return QSQ_ERR_SHAPE_MISMATCH;
    case qsq::ErrorCode::inconsistent_basis: return QSQ_ERR_INCONSISTENT_BASIS;
    case qsq::ErrorCode::not_a_state: return QSQ_ERR_NOT_A_STATE;
    case qsq::ErrorCode::degenerate_tau: return QSQ_ERR_DEGENERATE_TAU;
    case qsq::ErrorCode::subspace_not_closed: return QSQ_ERR_SUBSPACE_NOT_CLOSED;
    case qsq::ErrorCode::domain_error: return QSQ_ERR_DOMAIN;
    case qsq::ErrorCode::parse_error: return QSQ_ERR_PARSE;
    case qsq::ErrorCode::unsupported_pattern: return QSQ_ERR_UNSUPPORTED_PATTERN;
    case qsq::ErrorCode::io_error: return QSQ_ERR_IO;
  }
  return QSQ_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return QSQ_OK;
  } catch (const qsq::Error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSQ_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QSQ_ERR_INTERNAL;
  }
}

int fail_arg(const char* msg) {
  g_last_error = msg;
  return QSQ_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_cmat(const qsq::Cmat& m, double* out) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      *out++ = m(r, c).real();
      *out++ = m(r, c).imag();
    }
}

qsq::Cmat read_cmat(const double* in, int dim) {
  qsq::Cmat m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      double re = *in++, im = *in++;
      m(r, c) = qsq::cplx(re, im);
    }
  return m;
}

}  // namespace

struct qsq_basis {
  qsq::HermitianBasis basis;
  std::unique_ptr<qsq::StructureConstants> sc;
  std::mutex sc_mutex;

  const qsq::StructureConstants& structure() {
    std::lock_guard lock(sc_mutex);
    if (!sc)
      sc = std::make_unique<qsq::StructureConstants>(qsq::structure_constants(basis));
    return *sc;
  }
};

struct qsq_section {
  qsq::ConstraintSubspace sub;
};

struct qsq_expr {
  qsq::SigmaExpr expr;
};

extern "C" {

const char* qsq_last_error(void) { return g_last_error.c_str(); }

const char* qsq_version(void) { return "0.1.0"; }

int qsq_basis_gell_mann(int dim, qsq_basis** out) {
  if (!out) return fail_arg("null output handle");
  return guarded([&] {
    auto* h = new qsq_basis{qsq::gell_mann_basis(dim), nullptr, {}};
    *out = h;
  });
}

int qsq_basis_pauli(int nqubits, qsq_basis** out) {
  if (!out) return fail_arg("null output handle");
  return guarded([&] {
    auto* h = new qsq_basis{qsq::pauli_tensor_basis(nqubits), nullptr, {}};
    *out = h;
  });
}

void qsq_basis_free(qsq_basis* b) { delete b; }

int qsq_basis_dim(const qsq_basis* b) { return b ? b->basis.dim : 0; }

int qsq_basis_count(const qsq_basis* b) { return b ? b->basis.size() : 0; }

const char* qsq_basis_label(const qsq_basis* b, int index) {
  if (!b || index < 0 || index >= b->basis.size()) return nullptr;
  return b->basis.labels[index].c_str();
}

int qsq_basis_generator(const qsq_basis* b, int index, double* out) {
  if (!b || !out) return fail_arg("null argument");
  if (index < 0 || index >= b->basis.size()) return fail_arg("generator index out of range");
  write_cmat(b->basis.generators[index], out);
  return QSQ_OK;
}

int qsq_basis_json(qsq_basis* b, int with_structure, char** out) {
  if (!b || !out) return fail_arg("null argument");
  return guarded([&] {
    const qsq::StructureConstants* sc = with_structure ? &b->structure() : nullptr;
    *out = dup_string(qsq::basis_to_json(b->basis, sc));
  });
}

int qsq_aux_to_density(const qsq_basis* b, const double* bvec, double* rho_out) {
  if (!b || !bvec || !rho_out) return fail_arg("null argument");
  return guarded([&] {
    Eigen::Map<const qsq::Rvec> bv(bvec, b->basis.size());
    write_cmat(qsq::aux_to_density(bv, b->basis), rho_out);
  });
}

int qsq_aux_to_bloch(qsq_basis* b, const double* bvec, double* a_out) {
  if (!b || !bvec || !a_out) return fail_arg("null argument");
  return guarded([&] {
    Eigen::Map<const qsq::Rvec> bv(bvec, b->basis.size());
    qsq::Rvec a = qsq::squaring_map(bv, b->structure());
    Eigen::Map<qsq::Rvec>(a_out, a.size()) = a;
  });
}

int qsq_density_to_aux(const qsq_basis* b, const double* rho, double* b_out) {
  if (!b || !rho || !b_out) return fail_arg("null argument");
  return guarded([&] {
    qsq::Rvec bv = qsq::density_to_aux(read_cmat(rho, b->basis.dim), b->basis);
    Eigen::Map<qsq::Rvec>(b_out, bv.size()) = bv;
  });
}

int qsq_jacobian(qsq_basis* b, const double* bvec, double* jac_out) {
  if (!b || !bvec || !jac_out) return fail_arg("null argument");
  return guarded([&] {
    Eigen::Map<const qsq::Rvec> bv(bvec, b->basis.size());
    qsq::Rmat j = qsq::jacobian(bv, b->structure());
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        jac_out, j.rows(), j.cols()) = j;
  });
}

int qsq_boundary_residual(qsq_basis* b, const double* bvec, double* det_out) {
  if (!b || !bvec || !det_out) return fail_arg("null argument");
  return guarded([&] {
    Eigen::Map<const qsq::Rvec> bv(bvec, b->basis.size());
    *det_out = qsq::boundary_residual(bv, b->structure());
  });
}

int qsq_classify_point(qsq_basis* b, const double* bvec, double tol, int* cls_out,
                       double* min_eig_out, double* det_out) {
  if (!b || !bvec) return fail_arg("null argument");
  return guarded([&] {
    Eigen::Map<const qsq::Rvec> bv(bvec, b->basis.size());
    auto res = qsq::classify_point(bv, b->basis, b->structure(), tol);
    if (cls_out) *cls_out = static_cast<int>(res.cls);
    if (min_eig_out) *min_eig_out = res.min_eig;
    if (det_out) *det_out = res.det;
  });
}

int qsq_spectral_report(const double* rho, int dim, double tol, double* eigs_out,
                        double* purity_out, int* rank_out, double* min_eig_out) {
  if (!rho || dim < 1) return fail_arg("null density or bad dim");
  return guarded([&] {
    auto rep = qsq::validate_density(read_cmat(rho, dim), tol > 0 ? tol : 1e-12);
    if (eigs_out)
      Eigen::Map<qsq::Rvec>(eigs_out, rep.eigenvalues.size()) = rep.eigenvalues;
    if (purity_out) *purity_out = rep.purity;
    if (rank_out) *rank_out = rep.rank;
    if (min_eig_out) *min_eig_out = rep.min_eig;
  });
}

int qsq_minimize_expectation(qsq_basis* b, const double* h, const qsq_opt_config* cfg,
                             double* b_out, double* energy_out, int* converged_out) {
  if (!b || !h) return fail_arg("null argument");
  return guarded([&] {
    qsq::DescentConfig dc;
    if (cfg) {
      if (cfg->max_iters > 0) dc.max_iters = cfg->max_iters;
      if (cfg->grad_tol > 0) dc.grad_tol = cfg->grad_tol;
      dc.seed = cfg->seed;
    }
    auto res = qsq::minimize_expectation(read_cmat(h, b->basis.dim), b->basis,
                                         b->structure(), dc);
    if (b_out) Eigen::Map<qsq::Rvec>(b_out, res.b.size()) = res.b;
    if (energy_out) *energy_out = res.energy;
    if (converged_out) *converged_out = res.converged ? 1 : 0;
  });
}

int qsq_section_create(const char* name, qsq_section** out) {
  if (!name || !out) return fail_arg("null argument");
  return guarded([&] {
    std::string n(name);
    qsq::ConstraintSubspace sub;
    if (n == "werner2")
      sub = qsq::werner2_subspace();
    else if (n == "ti3")
      sub = qsq::ti3_subspace();
    else if (n == "tinv3")
      sub = qsq::tinv3_subspace();
    else if (n.rfind("werner", 0) == 0 && n.size() == 7)
      sub = qsq::werner_basis(n[6] - '0');
    else
      throw qsq::Error(qsq::ErrorCode::invalid_argument,
                       "unknown section name: " + n);
    *out = new qsq_section{std::move(sub)};
  });
}

void qsq_section_free(qsq_section* s) { delete s; }

int qsq_section_coord_dim(const qsq_section* s) { return s ? s->sub.coord_dim() : 0; }

int qsq_section_nqubits(const qsq_section* s) { return s ? s->sub.nqubits : 0; }

const char* qsq_section_op_name(const qsq_section* s, int index) {
  if (!s || index < 0 || index >= s->sub.dim()) return nullptr;
  return s->sub.names[index].c_str();
}

int qsq_section_map(const qsq_section* s, const double* bvec, double* a_out,
                    double* min_eig_out) {
  if (!s || !bvec) return fail_arg("null argument");
  return guarded([&] {
    Eigen::Map<const qsq::Rvec> bv(bvec, s->sub.coord_dim());
    qsq::Rvec a = qsq::section_squaring_map(s->sub, bv);
    if (a_out) Eigen::Map<qsq::Rvec>(a_out, a.size()) = a;
    if (min_eig_out) {
      Eigen::SelfAdjointEigenSolver<qsq::Cmat> es(
          qsq::section_bloch_to_density(s->sub, a));
      *min_eig_out = es.eigenvalues()(0);
    }
  });
}

int qsq_section_det(const qsq_section* s, const double* bvec, double* det_out) {
  if (!s || !bvec || !det_out) return fail_arg("null argument");
  return guarded([&] {
    Eigen::Map<const qsq::Rvec> bv(bvec, s->sub.coord_dim());
    *det_out = qsq::section_boundary_residual(s->sub, bv);
  });
}

int qsq_boundary_scan(const qsq_section* s, const qsq_scan_spec* spec,
                      qsq_scan_callback cb, void* user) {
  if (!s || !spec || !cb || !spec->lo || !spec->hi || !spec->res)
    return fail_arg("null argument");
  return guarded([&] {
    const int m = s->sub.coord_dim();
    qsq::ScanSpec sp;
    sp.lo.assign(spec->lo, spec->lo + m);
    sp.hi.assign(spec->hi, spec->hi + m);
    sp.res.assign(spec->res, spec->res + m);
    if (spec->det_tol > 0) sp.det_tol = spec->det_tol;
    if (spec->eig_tol > 0) sp.eig_tol = spec->eig_tol;
    sp.refine = spec->refine != 0;
    sp.threads = spec->threads > 0
                     ? spec->threads
                     : static_cast<int>(std::thread::hardware_concurrency());
    qsq::boundary_scan(s->sub, sp, [&](const qsq::ScanPoint& p) {
      cb(user, p.b.data(), p.a.data(), p.det, p.min_eig, static_cast<int>(p.cls),
         p.refined ? 1 : 0);
    });
  });
}

int qsq_solve_extremes(const qsq_section* s, const qsq_solve_config* cfg,
                       char** json_out) {
  if (!s || !json_out) return fail_arg("null argument");
  return guarded([&] {
    qsq::SolveConfig sc;
    if (cfg) {
      if (cfg->seeds > 0) sc.seeds = cfg->seeds;
      if (cfg->rng_seed) sc.rng_seed = cfg->rng_seed;
    }
    auto sols = qsq::solve_projectors(s->sub, sc);
    *json_out = dup_string(qsq::solutions_to_json(sols, s->sub));
  });
}

int qsq_family_trace(const qsq_section* s, const char* family, double a12,
                     int branch, double* a_out, double* c_out, int* r_out) {
  if (!s || !family || !a_out) return fail_arg("null argument");
  return guarded([&] {
    qsq::ProjectorFamily fam;
    if (std::string(family) == "Pi3")
      fam = qsq::ProjectorFamily::Pi3;
    else if (std::string(family) == "Pi4")
      fam = qsq::ProjectorFamily::Pi4;
    else
      throw qsq::Error(qsq::ErrorCode::invalid_argument, "family must be Pi3 or Pi4");
    auto [plus, minus] = qsq::family_trace(s->sub, fam, a12);
    const auto& sol = branch >= 0 ? plus : minus;
    Eigen::Map<qsq::Rvec>(a_out, sol.coords_a.size()) = sol.coords_a;
    if (c_out) *c_out = sol.c;
    if (r_out) *r_out = sol.r;
  });
}

int qsq_expr_parse(const char* text, qsq_expr** out) {
  if (!text || !out) return fail_arg("null argument");
  return guarded([&] { *out = new qsq_expr{qsq::SigmaExpr::parse(text)}; });
}

void qsq_expr_free(qsq_expr* e) { delete e; }

int qsq_expr_multiply(const qsq_expr* x, const qsq_expr* y, qsq_expr** out) {
  if (!x || !y || !out) return fail_arg("null argument");
  return guarded([&] { *out = new qsq_expr{qsq::multiply(x->expr, y->expr)}; });
}

int qsq_expr_str(const qsq_expr* e, char** out) {
  if (!e || !out) return fail_arg("null argument");
  return guarded([&] { *out = dup_string(e->expr.str()); });
}

int qsq_expr_verify(const qsq_expr* lhs, const qsq_expr* rhs, int nqubits,
                    double* max_err_out) {
  if (!lhs || !rhs || !max_err_out) return fail_arg("null argument");
  return guarded(
      [&] { *max_err_out = qsq::verify_identity(lhs->expr, rhs->expr, nqubits); });
}

int qsq_verify_identities(char** report_out, double* max_err_out) {
  return guarded([&] {
    std::ostringstream report;
    double worst = 0;
    for (const auto& id : qsq::convolution_identities()) {
      double err = qsq::verify_identity(id.lhs, id.rhs, id.nqubits);
      worst = std::max(worst, err);
      report << id.name << ": max error " << err << (err < 1e-12 ? " pass" : " FAIL")
             << "\n";
    }
    if (report_out) *report_out = dup_string(report.str());
    if (max_err_out) *max_err_out = worst;
  });
}

void qsq_string_free(char* s) { delete[] s; }

}  // extern "C"
