// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL]
// line; the exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qsquare/extremal_solver.hpp"
#include "qsquare/sigma_algebra.hpp"
#include "qsquare/squaring_map.hpp"
#include "qsquare/state_geometry.hpp"
#include "qsquare/werner_sets.hpp"

using namespace qsq;

namespace {

int g_failures = 0;

struct Criterion {
  std::string name;
  std::chrono::steady_clock::time_point start;
  bool ok = true;
  std::string detail;

  explicit Criterion(std::string n)
      : name(std::move(n)), start(std::chrono::steady_clock::now()) {}

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }

  ~Criterion() {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                start)
                      .count();
    if (ok) {
      std::printf("[PASS] %s (%.2fs)\n", name.c_str(), secs);
    } else {
      std::printf("[FAIL] %s (%.2fs): %s\n", name.c_str(), secs, detail.c_str());
      g_failures++;
    }
    std::fflush(stdout);
  }
};

Rvec random_vec(int n, std::mt19937_64& rng, double range) {
  std::uniform_real_distribution<double> uni(-range, range);
  Rvec v(n);
  for (int i = 0; i < n; ++i) v(i) = uni(rng);
  return v;
}

// ---- criterion 1 ------------------------------------------------------

void criterion_1() {
  Criterion c("1. two-qubit exchange section spans [-1, 1/3]");
  double amin = 1e9, amax = -1e9;
  const int pts = 100000;
  for (int i = 0; i < pts; ++i) {
    double b = -50.0 + 100.0 * i / (pts - 1);
    double a = werner2_map(b);
    amin = std::min(amin, a);
    amax = std::max(amax, a);
  }
  // critical points of a(b) = (2b - 2b^2)/(1 + 3b^2): quotient-rule numerator
  // is -2(3b^2 + 2b - 1), so b* = (-2 +- 4)/6
  for (double b : {(-2.0 + 4.0) / 6.0, (-2.0 - 4.0) / 6.0}) {
    double a = werner2_map(b);
    amin = std::min(amin, a);
    amax = std::max(amax, a);
  }
  c.require(std::abs(amax - 1.0 / 3.0) < 1e-9,
            "max a = " + std::to_string(amax));
  c.require(std::abs(amin + 1.0) < 1e-9, "min a = " + std::to_string(amin));
}

// ---- criterion 2 ------------------------------------------------------

struct Line {  // n . a = d with |n| = 1
  double nx, ny, d;
  double dist(double x, double y) const { return std::abs(nx * x + ny * y - d); }
};

Line fit_line(const std::vector<std::pair<double, double>>& pts) {
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  // normal = eigenvector of the scatter matrix with the smaller eigenvalue
  double tr = sxx + syy;
  double det = sxx * syy - sxy * sxy;
  double lam = tr / 2 - std::sqrt(std::max(0.0, tr * tr / 4 - det));
  double nx = sxy, ny = lam - sxx;
  if (std::abs(nx) + std::abs(ny) < 1e-12) {
    nx = lam - syy;
    ny = sxy;
  }
  double norm = std::hypot(nx, ny);
  nx /= norm;
  ny /= norm;
  return {nx, ny, nx * mx + ny * my};
}

std::pair<double, double> intersect(const Line& p, const Line& q) {
  double det = p.nx * q.ny - p.ny * q.nx;
  return {(p.d * q.ny - p.ny * q.d) / det, (p.nx * q.d - p.d * q.nx) / det};
}

void criterion_2() {
  Criterion c("2. translation-invariant section boundary is the triangle");
  auto sub = ti3_subspace();
  const double s3 = std::sqrt(3.0);

  // exact segment lines in (a_s, a_t) coordinates
  Line seg[3] = {{1.0, 0.0, -1.0 / 3.0},   // a_s = -1/3
                 {3.0, 2.0 * s3, 1.0},     // a_t = (1 - 3 a_s)/(2 sqrt 3)
                 {3.0, -2.0 * s3, 1.0}};   // the mirror image
  for (auto& l : seg) {
    double n = std::hypot(l.nx, l.ny);
    l.nx /= n;
    l.ny /= n;
    l.d /= n;
  }

  ScanSpec spec;
  spec.lo = {-2.0, -2.0};
  spec.hi = {2.0, 2.0};
  spec.res = {400, 400};
  spec.threads = 8;

  std::vector<std::pair<double, double>> groups[3];
  double worst = 0;
  long npts = 0;
  boundary_scan(sub, spec, [&](const ScanPoint& p) {
    if (!p.refined || p.cls != PointClass::Boundary) return;
    npts++;
    double x = p.a(0), y = p.a(1);
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (seg[i].dist(x, y) < seg[best].dist(x, y)) best = i;
    worst = std::max(worst, seg[best].dist(x, y));
    // keep fit samples away from the corners where segments meet
    bool clean = true;
    for (int i = 0; i < 3; ++i)
      if (i != best && seg[i].dist(x, y) < 0.1) clean = false;
    if (clean) groups[best].push_back({x, y});
  });

  c.require(npts > 100, "too few refined boundary points: " + std::to_string(npts));
  c.require(worst < 1e-4,
            "max segment deviation " + std::to_string(worst));
  for (auto& g : groups)
    c.require(g.size() > 20, "a segment collected too few points");
  if (!c.ok) return;

  Line fit[3] = {fit_line(groups[0]), fit_line(groups[1]), fit_line(groups[2])};
  auto v12 = intersect(fit[1], fit[2]);  // (1/3, 0)
  auto v01 = intersect(fit[0], fit[1]);  // (-1/3, 1/sqrt 3)
  auto v02 = intersect(fit[0], fit[2]);  // (-1/3, -1/sqrt 3)
  auto close = [](std::pair<double, double> v, double x, double y) {
    return std::abs(v.first - x) < 1e-6 && std::abs(v.second - y) < 1e-6;
  };
  c.require(close(v12, 1.0 / 3.0, 0.0), "vertex near (1/3, 0) is off");
  c.require(close(v01, -1.0 / 3.0, 1.0 / s3), "vertex near (-1/3, 1/sqrt3) is off");
  c.require(close(v02, -1.0 / 3.0, -1.0 / s3), "vertex near (-1/3, -1/sqrt3) is off");
}

// ---- criterion 3 ------------------------------------------------------

void criterion_3() {
  Criterion c("3. transposition-invariant boundary is a truncated cone");
  auto sub = tinv3_subspace();
  const double slope = std::sqrt(2.0 / 3.0) / 2.0;  // radius = slope (1 - sum a)

  auto cone_residual = [&](const Rvec& a) {
    double s = a.sum();
    double perp = std::sqrt(std::max(0.0, a.squaredNorm() - s * s / 3.0));
    double lateral = std::abs(perp - slope * (1.0 - s));
    double base = std::abs(s + 1.0);
    return std::min(lateral, base);
  };

  // vertex
  Rvec bv = Rvec::Constant(3, 1.0 / 3.0);
  Rvec av = section_squaring_map(sub, bv);
  c.require((av - Rvec::Constant(3, 1.0 / 3.0)).lpNorm<Eigen::Infinity>() < 1e-8,
            "vertex image is off");

  // plane sum b = +1: critical but interior
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    Rvec b = random_vec(3, rng, 1.2);
    b(2) = 1.0 - b(0) - b(1);
    if ((b - bv).norm() < 0.2) continue;  // the vertex preimage is the exception
    double det = tinv3_boundary_residual(b(0), b(1), b(2));
    Rvec a = section_squaring_map(sub, b);
    Eigen::SelfAdjointEigenSolver<Cmat> es(section_bloch_to_density(sub, a));
    double min_eig = es.eigenvalues()(0);
    c.require(std::abs(det) < 1e-8, "plane +1: |det| = " + std::to_string(det));
    c.require(min_eig > 1e-6, "plane +1: min eig = " + std::to_string(min_eig));
  }

  // plane sum b = -1 maps onto the base disk
  for (int trial = 0; trial < 200; ++trial) {
    Rvec b = random_vec(3, rng, 1.2);
    b(2) = -1.0 - b(0) - b(1);
    Rvec a = section_squaring_map(sub, b);
    double s = a.sum();
    double perp = std::sqrt(std::max(0.0, a.squaredNorm() - s * s / 3.0));
    c.require(std::abs(s + 1.0) < 1e-8, "plane -1: sum a = " + std::to_string(s));
    c.require(perp < 2.0 * slope + 1e-6,
              "plane -1: radius " + std::to_string(perp));
  }

  // full scan: every refined boundary point sits on the lateral surface or
  // the base plane
  ScanSpec spec;
  spec.lo = {-2.0, -2.0, -2.0};
  spec.hi = {2.0, 2.0, 2.0};
  spec.res = {80, 80, 80};
  spec.threads = 8;
  double worst = 0;
  long npts = 0;
  boundary_scan(sub, spec, [&](const ScanPoint& p) {
    if (!p.refined || p.cls != PointClass::Boundary) return;
    npts++;
    worst = std::max(worst, cone_residual(p.a));
  });
  c.require(npts > 1000, "too few refined boundary points: " + std::to_string(npts));
  c.require(worst < 1e-5, "max cone deviation " + std::to_string(worst));
}

// ---- criterion 4 ------------------------------------------------------

SigmaExpr engine_reduce(const SigmaExpr& raw) {
  SigmaExpr out;
  for (const auto& [mono, coef] : raw.terms()) {
    SigmaExpr acc = coef * SigmaExpr::one();
    for (const auto& f : mono) {
      SigmaExpr fe = f.is_triple() ? SigmaExpr::triple_product(f.a, f.b, f.c)
                                   : SigmaExpr::scalar_product(f.a, f.b);
      acc = multiply(acc, fe);
    }
    out += acc;
  }
  return out;
}

bool terms_equal(const SigmaExpr& x, const SigmaExpr& y, double tol) {
  if (x.terms().size() != y.terms().size()) return false;
  for (const auto& [mono, coef] : x.terms()) {
    auto it = y.terms().find(mono);
    if (it == y.terms().end() || std::abs(coef - it->second) > tol) return false;
  }
  return true;
}

void criterion_4() {
  Criterion c("4. convolution identities verify densely and symbolically");
  int rederived = 0;
  for (const auto& id : convolution_identities()) {
    double err = verify_identity(id.lhs, id.rhs, id.nqubits);
    c.require(err < 1e-12, id.name + ": dense error " + std::to_string(err));
    if (id.name == "q8" || id.name == "q9") {
      c.require(terms_equal(engine_reduce(id.lhs), id.rhs, 1e-11),
                id.name + ": symbolic rederivation mismatch");
      rederived++;
    }
  }
  c.require(rederived == 2, "q8/q9 missing from the table");
}

// ---- criterion 5 ------------------------------------------------------

void criterion_5() {
  Criterion c("5. translation-invariant section has 7 projector solutions");
  auto sub = ti3_subspace();
  SolveConfig cfg;  // 1000 seeds
  auto sols = solve_projectors(sub, cfg);
  c.require(sols.size() == 7,
            "found " + std::to_string(sols.size()) + " solutions");
  int extreme = 0;
  for (const auto& s : sols)
    if (s.classification == "Extreme") extreme++;
  c.require(extreme == 3, "found " + std::to_string(extreme) + " extreme");
  for (const auto& s : sols) {
    if (s.classification != "Composite") continue;
    Cmat sum = Cmat::Zero(sub.D, sub.D);
    for (int idx : s.decomposition) sum += solution_projector(sub, sols[idx]);
    c.require(s.remainder_rank == 0 &&
                  max_abs(sum - solution_projector(sub, s)) < 1e-7,
              "a composite decomposition fails densely");
  }
}

// ---- criterion 6 ------------------------------------------------------

void criterion_6() {
  Criterion c("6. transposition-invariant isolated solutions and families");
  auto sub = tinv3_subspace();
  auto sols = solve_projectors(sub);

  auto found = [&](int r, double v) {
    for (const auto& s : sols)
      if (s.r == r &&
          (s.coords_a - Rvec::Constant(3, v)).lpNorm<Eigen::Infinity>() < 1e-6)
        return true;
    return false;
  };
  c.require(found(8, 0.0), "identity solution missing");
  c.require(found(4, 1.0 / 3.0), "rank-4 vertex solution missing");
  c.require(found(4, -1.0 / 3.0), "rank-4 antisymmetric-side solution missing");

  const int res = 50;
  for (int i = 0; i < res; ++i) {
    double x3 = -1.0 + (1.0 / 3.0 + 1.0) * i / (res - 1);
    auto [p, m] = family_trace(sub, ProjectorFamily::Pi3, x3);
    double k2 = -3.0 * x3 * x3 - 2.0 * x3 + 1.0;
    for (const auto* s : {&p, &m}) {
      c.require(s->residual < 1e-9, "Pi3 projector residual too large");
      c.require(std::abs(std::pow(s->coords_a(1) - s->coords_a(2), 2) - k2) < 1e-8,
                "Pi3 discriminant mismatch at x = " + std::to_string(x3));
      c.require(std::abs(s->coords_a(1) + s->coords_a(2) + x3 + 1.0) < 1e-10,
                "Pi3 partner sum mismatch");
    }

    double x4 = -1.0 / 9.0 + (1.0 / 3.0 + 1.0 / 9.0) * i / (res - 1);
    auto [p4, m4] = family_trace(sub, ProjectorFamily::Pi4, x4);
    double l2 = -27.0 * x4 * x4 + 6.0 * x4 + 1.0;
    for (const auto* s : {&p4, &m4}) {
      c.require(s->residual < 1e-9, "Pi4 projector residual too large");
      c.require(
          std::abs(std::pow(3.0 * (s->coords_a(1) - s->coords_a(2)), 2) - l2) < 1e-8,
          "Pi4 discriminant mismatch at x = " + std::to_string(x4));
      c.require(std::abs(s->coords_a(1) + s->coords_a(2) - (1.0 - 3.0 * x4) / 3.0) <
                    1e-10,
                "Pi4 partner sum mismatch");
    }
  }
}

// ---- criterion 7 ------------------------------------------------------

void criterion_7() {
  Criterion c("7. core map properties across dimensions");
  std::mt19937_64 rng(202);

  struct Case {
    HermitianBasis basis;
    StructureConstants sc;
  };
  std::vector<Case> cases;
  for (int dim : {2, 3, 4}) {
    Case k{gell_mann_basis(dim), {}};
    k.sc = structure_constants(k.basis);
    cases.push_back(std::move(k));
  }
  {
    Case k{pauli_tensor_basis(3), {}};  // D = 8
    k.sc = structure_constants(k.basis);
    cases.push_back(std::move(k));
  }

  for (auto& k : cases) {
    const int n = k.basis.size();
    const int D = k.basis.dim;

    // positivity sweep, 2500 points per dimension
    for (int t = 0; t < 2500; ++t) {
      Rvec b = random_vec(n, rng, 3.0);
      Eigen::SelfAdjointEigenSolver<Cmat> es(aux_to_density(b, k.basis));
      c.require(es.eigenvalues()(0) >= -1e-10, "positivity violated");
    }

    // structure-constant map against the dense route
    for (int t = 0; t < 100; ++t) {
      Rvec b = random_vec(n, rng, 2.0);
      Cmat rho = aux_to_density(b, k.basis);
      Rvec a = squaring_map(b, k.sc);
      for (int i = 0; i < n; ++i) {
        double dense = (k.basis.generators[i] * rho).trace().real();
        c.require(std::abs(a(i) - dense) <= 1e-10, "dense oracle mismatch");
      }
      // roundtrip through the principal square root
      Rvec b2 = density_to_aux(rho, k.basis);
      c.require(max_abs(aux_to_density(b2, k.basis) - rho) <= 1e-8,
                "roundtrip mismatch");
    }

    // analytic jacobian vs central differences
    const double h = 1e-5;
    for (int t = 0; t < (D <= 4 ? 5 : 1); ++t) {
      Rvec b = random_vec(n, rng, 1.0);
      Rmat jac = jacobian(b, k.sc);
      for (int j = 0; j < n; ++j) {
        Rvec bp = b, bm = b;
        bp(j) += h;
        bm(j) -= h;
        Rvec col = (squaring_map(bp, k.sc) - squaring_map(bm, k.sc)) / (2 * h);
        c.require((col - jac.col(j)).lpNorm<Eigen::Infinity>() <= 1e-6,
                  "jacobian finite-difference mismatch");
      }
    }

    // pure states are fixed points
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXcd psi(D);
      for (int i = 0; i < D; ++i) psi(i) = cplx(gauss(rng), gauss(rng));
      psi.normalize();
      Cmat rho = psi * psi.adjoint();
      Rvec a(n);
      for (int i = 0; i < n; ++i)
        a(i) = (k.basis.generators[i] * rho).trace().real();
      c.require((squaring_map(a, k.sc) - a).lpNorm<Eigen::Infinity>() <= 1e-9,
                "pure state is not a fixed point");
      c.require(pure_state_residual(a, k.sc, D).lpNorm<Eigen::Infinity>() <= 1e-9,
                "pure state residual too large");
    }
  }
}

// ---- criterion 8 ------------------------------------------------------

void criterion_8() {
  Criterion c("8. optimizer reaches the known ground states");
  {
    auto basis = gell_mann_basis(2);
    auto sc = structure_constants(basis);
    auto res = minimize_expectation(pauli(3), basis, sc);
    c.require(res.converged, "sigma z descent did not converge");
    c.require(std::abs(res.energy + 1.0) < 1e-6,
              "sigma z energy " + std::to_string(res.energy));
  }
  {
    auto basis = pauli_tensor_basis(2);
    auto sc = structure_constants(basis);
    Cmat h = Cmat::Zero(4, 4);
    for (int mu = 1; mu <= 3; ++mu) h += kron(pauli(mu), pauli(mu));

    Eigen::SelfAdjointEigenSolver<Cmat> es(h);
    double lambda_min = es.eigenvalues()(0);  // exact diagonalization oracle
    c.require(std::abs(lambda_min + 3.0) < 1e-12, "oracle eigenvalue is not -3");

    auto res = minimize_expectation(h, basis, sc);
    c.require(res.converged, "heisenberg descent did not converge");
    c.require(std::abs(res.energy - lambda_min) < 1e-4,
              "heisenberg energy " + std::to_string(res.energy));
    c.require(res.energy >= lambda_min - 1e-6, "energy undercuts the spectrum");

    // every intermediate expectation is a state average, so no b can dip
    // below the spectral bound
    std::mt19937_64 rng(303);
    for (int t = 0; t < 200; ++t) {
      Rvec b = random_vec(basis.size(), rng, 3.0);
      double e = (aux_to_density(b, basis) * h).trace().real();
      c.require(e >= lambda_min - 1e-6, "a state average undercuts the spectrum");
    }
  }
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (g_failures == 0)
    std::printf("all 8 criteria passed\n");
  else
    std::printf("%d criteria failed\n", g_failures);
  return g_failures;
}
