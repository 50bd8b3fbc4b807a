#include "qsquare/werner_sets.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qsquare/sigma_algebra.hpp"

namespace qsq {

namespace {

constexpr double kClosureTol = 1e-9;

Cmat monomial_dense(const SigmaMonomial& mono, int nqubits) {
  SigmaExpr e;
  e.add_term(mono, 1.0);
  return to_dense(e, nqubits);
}

std::string monomial_name(const SigmaMonomial& mono) {
  if (mono.empty()) return "1";
  std::string s;
  for (const auto& f : mono) {
    s += "(" + std::to_string(f.a) + " " + std::to_string(f.b);
    if (f.is_triple()) s += " " + std::to_string(f.c);
    s += ")";
  }
  return s;
}

// All products of disjoint scalar/triple factors over labels 1..N,
// identity included, each exactly once.
void enum_invariant_monomials(std::vector<int> remaining, SigmaMonomial current,
                              std::vector<SigmaMonomial>& out) {
  if (remaining.empty()) {
    out.push_back(current);
    return;
  }
  int l = remaining.front();
  std::vector<int> rest(remaining.begin() + 1, remaining.end());
  // l unused
  enum_invariant_monomials(rest, current, out);
  // l in a scalar factor
  for (size_t i = 0; i < rest.size(); ++i) {
    std::vector<int> r2 = rest;
    int m = r2[i];
    r2.erase(r2.begin() + i);
    SigmaMonomial mono = current;
    mono.push_back(SigmaFactor{l, m, 0});
    enum_invariant_monomials(r2, mono, out);
    // l in a triple factor
    for (size_t j = i; j < r2.size(); ++j) {
      std::vector<int> r3 = r2;
      int k = r3[j];
      r3.erase(r3.begin() + j);
      SigmaMonomial mono3 = current;
      mono3.push_back(SigmaFactor{l, std::min(m, k), std::max(m, k), });
      enum_invariant_monomials(r3, mono3, out);
    }
  }
}

Rmat gram_of(const std::vector<Cmat>& ops, int D) {
  const int n = static_cast<int>(ops.size());
  Rmat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g(i, j) = g(j, i) = hs_inner(ops[i], ops[j], D);
  return g;
}

struct GridIter {
  const std::vector<int>& res;
  std::vector<int> idx;
  explicit GridIter(const std::vector<int>& r) : res(r), idx(r.size(), 0) {}
  void from_flat(long flat) {
    for (int ax = static_cast<int>(res.size()) - 1; ax >= 0; --ax) {
      idx[ax] = static_cast<int>(flat % res[ax]);
      flat /= res[ax];
    }
  }
};

}  // namespace

std::pair<Rvec, double> ConstraintSubspace::project(const Cmat& m) const {
  Rvec y(dim());
  for (int i = 0; i < dim(); ++i) y(i) = hs_inner(ops[i], m, D);
  Rvec x = gram.ldlt().solve(y);
  Cmat recon = Cmat::Zero(D, D);
  for (int i = 0; i < dim(); ++i) recon += x(i) * ops[i];
  return {x, max_abs(m - recon)};
}

ConstraintSubspace werner2_subspace() {
  ConstraintSubspace sub;
  sub.nqubits = 2;
  sub.D = 4;
  sub.ops = {Cmat::Identity(4, 4), to_dense(SigmaExpr::scalar_product(1, 2), 2)};
  sub.names = {"1", "(1 2)"};
  sub.gram = gram_of(sub.ops, 4);
  return sub;
}

ConstraintSubspace ti3_subspace() {
  ConstraintSubspace sub;
  sub.nqubits = 3;
  sub.D = 8;
  SigmaExpr s = SigmaExpr::scalar_product(1, 2) + SigmaExpr::scalar_product(2, 3) +
                SigmaExpr::scalar_product(3, 1);
  sub.ops = {Cmat::Identity(8, 8), to_dense(s, 3),
             to_dense(SigmaExpr::triple_product(1, 2, 3), 3)};
  sub.names = {"1", "(1 2)+(2 3)+(3 1)", "(1 2 3)"};
  sub.gram = gram_of(sub.ops, 8);
  return sub;
}

ConstraintSubspace tinv3_subspace() {
  ConstraintSubspace sub;
  sub.nqubits = 3;
  sub.D = 8;
  sub.ops = {Cmat::Identity(8, 8), to_dense(SigmaExpr::scalar_product(1, 2), 3),
             to_dense(SigmaExpr::scalar_product(2, 3), 3),
             to_dense(SigmaExpr::scalar_product(1, 3), 3)};
  sub.names = {"1", "(1 2)", "(2 3)", "(1 3)"};
  sub.gram = gram_of(sub.ops, 8);
  return sub;
}

ConstraintSubspace werner_basis(int nqubits) {
  if (nqubits < 2 || nqubits > 5)
    throw Error(ErrorCode::invalid_dimension, "werner_basis: nqubits must be in 2..5");
  const int D = 1 << nqubits;

  std::vector<int> labels(nqubits);
  for (int i = 0; i < nqubits; ++i) labels[i] = i + 1;
  std::vector<SigmaMonomial> monomials;
  enum_invariant_monomials(labels, {}, monomials);
  std::sort(monomials.begin(), monomials.end(),
            [](const SigmaMonomial& a, const SigmaMonomial& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  ConstraintSubspace sub;
  sub.nqubits = nqubits;
  sub.D = D;
  // greedy independent subset: keep a candidate if the Gram matrix stays
  // well-conditioned (for N >= 4 the spanning set is linearly dependent)
  for (const auto& mono : monomials) {
    Cmat op = monomial_dense(mono, nqubits);
    std::vector<Cmat> trial = sub.ops;
    trial.push_back(op);
    Rmat g = gram_of(trial, D);
    Eigen::SelfAdjointEigenSolver<Rmat> es(g);
    if (es.eigenvalues()(0) > 1e-8) {
      sub.ops.push_back(std::move(op));
      sub.names.push_back(monomial_name(mono));
    }
  }
  sub.gram = gram_of(sub.ops, D);
  return sub;
}

Cmat section_bloch_to_density(const ConstraintSubspace& sub, const Rvec& a) {
  if (a.size() != sub.coord_dim())
    throw Error(ErrorCode::shape_mismatch, "section_bloch_to_density: coord length");
  Cmat rho = sub.ops[0];
  for (int i = 0; i < sub.coord_dim(); ++i) rho += a(i) * sub.ops[i + 1];
  return rho / static_cast<double>(sub.D);
}

Rvec section_squaring_map(const ConstraintSubspace& sub, const Rvec& b) {
  if (b.size() != sub.coord_dim())
    throw Error(ErrorCode::shape_mismatch, "section_squaring_map: coord length");
  if (!b.allFinite())
    throw Error(ErrorCode::invalid_argument, "section_squaring_map: non-finite input");
  Cmat tau = sub.ops[0];
  for (int i = 0; i < sub.coord_dim(); ++i) tau += b(i) * sub.ops[i + 1];
  Cmat tau2 = tau * tau;
  double norm = tau2.trace().real();
  if (norm < 1e-300)
    throw Error(ErrorCode::degenerate_tau, "section_squaring_map: tr(tau^2) vanishes");
  Cmat rho = tau2 / norm;
  auto [x, residual] = sub.project(rho);
  if (residual > kClosureTol)
    throw Error(ErrorCode::subspace_not_closed,
                "section_squaring_map: projection residual " + std::to_string(residual));
  return sub.D * x.tail(sub.coord_dim());
}

double werner2_map(double b) { return 2.0 * b * (1.0 - b) / (1.0 + 3.0 * b * b); }

std::pair<double, double> ti3_map(double bs, double bt) {
  double den = 1.0 + 9.0 * bs * bs + 6.0 * bt * bt;
  return {2.0 * (bs - bt * bt) / den, 2.0 * bt * (1.0 - 3.0 * bs) / den};
}

double ti3_boundary_residual(double bs, double bt) {
  double den = 1.0 + 9.0 * bs * bs + 6.0 * bt * bt;
  double u = 1.0 - 3.0 * bs;
  return 4.0 * (1.0 + 3.0 * bs) * (u * u - 12.0 * bt * bt) / (den * den * den);
}

std::array<double, 3> tinv3_map(double b12, double b23, double b13) {
  double den = 1.0 + 3.0 * (b12 * b12 + b23 * b23 + b13 * b13);
  return {2.0 * (b12 - b12 * b12 + b23 * b13) / den,
          2.0 * (b23 - b23 * b23 + b13 * b12) / den,
          2.0 * (b13 - b13 * b13 + b12 * b23) / den};
}

double tinv3_boundary_residual(double b12, double b23, double b13) {
  double A = b12 + b23 + b13;
  double B = b12 * b12 + b23 * b23 + b13 * b13;
  double C = 2.0 * (b12 * b23 + b23 * b13 + b13 * b12);
  double den = 3.0 * B + 1.0;
  return 24.0 * (A - 1.0) * (A + 1.0) * (B + 2.0 / 3.0 * A - C - 1.0 / 3.0) /
         (den * den * den * den);
}

double section_boundary_residual(const ConstraintSubspace& sub, const Rvec& b,
                                 double fd_step) {
  const int m = sub.coord_dim();
  Rmat jac(m, m);
  for (int j = 0; j < m; ++j) {
    Rvec bp = b, bm = b;
    bp(j) += fd_step;
    bm(j) -= fd_step;
    jac.col(j) = (section_squaring_map(sub, bp) - section_squaring_map(sub, bm)) /
                 (2.0 * fd_step);
  }
  if (m == 1) return jac(0, 0);
  return jac.partialPivLu().determinant();
}

void boundary_scan(const ConstraintSubspace& sub, const ScanSpec& spec,
                   const std::function<void(const ScanPoint&)>& emit) {
  const int m = sub.coord_dim();
  if (static_cast<int>(spec.lo.size()) != m || static_cast<int>(spec.hi.size()) != m ||
      static_cast<int>(spec.res.size()) != m)
    throw Error(ErrorCode::shape_mismatch, "boundary_scan: grid spec dimension");
  for (int r : spec.res)
    if (r < 2) throw Error(ErrorCode::invalid_argument, "boundary_scan: resolution < 2");
  if (spec.det_tol <= 0 || spec.eig_tol <= 0)
    throw Error(ErrorCode::invalid_argument, "boundary_scan: tolerances must be > 0");

  long total = 1;
  for (int r : spec.res) total *= r;

  auto node_b = [&](const std::vector<int>& idx) {
    Rvec b(m);
    for (int ax = 0; ax < m; ++ax)
      b(ax) = spec.lo[ax] + (spec.hi[ax] - spec.lo[ax]) * idx[ax] / (spec.res[ax] - 1.0);
    return b;
  };

  auto evaluate = [&](const Rvec& b, bool refined) {
    ScanPoint p;
    p.b = b;
    p.a = section_squaring_map(sub, b);
    p.det = section_boundary_residual(sub, b, spec.fd_step);
    Eigen::SelfAdjointEigenSolver<Cmat> es(section_bloch_to_density(sub, p.a));
    p.min_eig = es.eigenvalues()(0);
    if (p.min_eig < spec.eig_tol)
      p.cls = PointClass::Boundary;
    else if (std::abs(p.det) < spec.det_tol)
      p.cls = PointClass::CriticalButInterior;
    else
      p.cls = PointClass::Interior;
    p.refined = refined;
    return p;
  };

  const int nthreads = std::max(1, spec.threads);
  std::vector<ScanPoint> points(total);
  {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        GridIter it(spec.res);
        for (long flat = t; flat < total; flat += nthreads) {
          it.from_flat(flat);
          points[flat] = evaluate(node_b(it.idx), false);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& p : points) emit(p);

  if (!spec.refine) return;

  // bisection along grid edges where the determinant changes sign
  std::vector<std::pair<long, int>> edges;  // (flat index, axis)
  {
    GridIter it(spec.res);
    for (long flat = 0; flat < total; ++flat) {
      it.from_flat(flat);
      long stride = 1;
      for (int ax = m - 1; ax >= 0; --ax) {
        if (it.idx[ax] + 1 < spec.res[ax]) {
          double d0 = points[flat].det, d1 = points[flat + stride].det;
          if ((d0 < 0) != (d1 < 0)) edges.emplace_back(flat, ax);
        }
        stride *= spec.res[ax];
      }
    }
  }

  std::vector<ScanPoint> refined(edges.size());
  {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        GridIter it(spec.res);
        for (size_t e = t; e < edges.size(); e += nthreads) {
          auto [flat, ax] = edges[e];
          it.from_flat(flat);
          Rvec b0 = node_b(it.idx);
          it.idx[ax] += 1;
          Rvec b1 = node_b(it.idx);
          it.idx[ax] -= 1;
          double d0 = points[flat].det;
          for (int iter = 0; iter < 80; ++iter) {
            Rvec mid = 0.5 * (b0 + b1);
            double dm = section_boundary_residual(sub, mid, spec.fd_step);
            if (std::abs(dm) < spec.refine_tol || (b1 - b0).norm() < 1e-14) {
              b0 = b1 = mid;
              break;
            }
            if ((dm < 0) == (d0 < 0)) {
              b0 = mid;
              d0 = dm;
            } else {
              b1 = mid;
            }
          }
          refined[e] = evaluate(0.5 * (b0 + b1), true);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& p : refined) emit(p);
}

}  // namespace qsq
