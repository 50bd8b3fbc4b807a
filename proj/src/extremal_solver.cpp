#include "qsquare/extremal_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <nlohmann/json.hpp>

namespace qsq {

namespace {

constexpr double kDecompTol = 1e-8;
constexpr double kFamilyTol = 1e-8;

bool is_tinv3(const ConstraintSubspace& sub) {
  return sub.names == std::vector<std::string>{"1", "(1 2)", "(2 3)", "(1 3)"};
}

// Newton on F(a) = s(a) - a where s is the section squaring map; projector
// solutions are exactly the fixed points of s.
std::optional<Rvec> newton_fixed_point(const ConstraintSubspace& sub, Rvec a,
                                       const SolveConfig& cfg) {
  const int m = sub.coord_dim();
  const double fd = 1e-7;
  for (int iter = 0; iter < cfg.max_newton; ++iter) {
    if (!a.allFinite() || a.norm() > 1e3) return std::nullopt;
    Rvec f = section_squaring_map(sub, a) - a;
    if (f.lpNorm<Eigen::Infinity>() < cfg.newton_tol) return a;
    Rmat jac(m, m);
    for (int j = 0; j < m; ++j) {
      Rvec ap = a, am = a;
      ap(j) += fd;
      am(j) -= fd;
      jac.col(j) = (section_squaring_map(sub, ap) - section_squaring_map(sub, am)) /
                   (2.0 * fd);
    }
    jac -= Rmat::Identity(m, m);
    Eigen::FullPivLU<Rmat> lu(jac);
    if (!lu.isInvertible()) return std::nullopt;
    a -= lu.solve(f);
  }
  return std::nullopt;
}

std::optional<ProjectorSolution> realize(const ConstraintSubspace& sub, const Rvec& a,
                                         double residual_tol) {
  Cmat tau = sub.ops[0];
  for (int i = 0; i < sub.coord_dim(); ++i) tau += a(i) * sub.ops[i + 1];
  double tr_tau2 = (tau * tau).trace().real();
  if (tr_tau2 < 1e-300) return std::nullopt;
  double c = sub.D / tr_tau2;
  int r = static_cast<int>(std::lround(c * sub.D));
  if (r < 1 || r > sub.D || std::abs(c * sub.D - r) > 1e-6) return std::nullopt;

  Cmat pi = c * tau;
  double residual = max_abs(pi * pi - pi);
  if (residual > residual_tol) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Cmat> es(pi);
  for (int i = 0; i < sub.D; ++i) {
    double e = es.eigenvalues()(i);
    if (std::min(std::abs(e), std::abs(e - 1.0)) > 1e-8) return std::nullopt;
  }
  ProjectorSolution sol;
  sol.coords_a = a;
  sol.c = c;
  sol.r = r;
  sol.residual = residual;
  return sol;
}

void tag_family(ProjectorSolution& sol) {
  const Rvec& a = sol.coords_a;
  // roles: which coordinate plays the family parameter; the remaining two
  // are the +/- partner pair (coords order: (1 2), (2 3), (1 3))
  for (int role = 0; role < 3; ++role) {
    double x = a(role);
    double y = a((role + 1) % 3), z = a((role + 2) % 3);
    if (sol.r == 2) {
      double disc = -3.0 * x * x - 2.0 * x + 1.0;
      if (disc < -kFamilyTol) continue;
      double k = std::sqrt(std::max(0.0, disc));
      if (std::abs(y + z + (x + 1.0)) < kFamilyTol &&
          std::abs(std::abs(y - z) - k) < kFamilyTol) {
        sol.family = "Pi3";
        sol.param = x;
        return;
      }
    } else if (sol.r == 6) {
      double disc = -27.0 * x * x + 6.0 * x + 1.0;
      if (disc < -kFamilyTol) continue;
      double l = std::sqrt(std::max(0.0, disc));
      if (std::abs(y + z - (1.0 - 3.0 * x) / 3.0) < kFamilyTol &&
          std::abs(std::abs(y - z) - l / 3.0) < kFamilyTol) {
        sol.family = "Pi4";
        sol.param = x;
        return;
      }
    }
  }
}

}  // namespace

Cmat solution_projector(const ConstraintSubspace& sub, const ProjectorSolution& sol) {
  Cmat tau = sub.ops[0];
  for (int i = 0; i < sub.coord_dim(); ++i) tau += sol.coords_a(i) * sub.ops[i + 1];
  return sol.c * tau;
}

std::vector<ProjectorSolution> solve_projectors(const ConstraintSubspace& sub,
                                                const SolveConfig& config) {
  const int m = sub.coord_dim();
  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<double> uni(-config.seed_range, config.seed_range);

  std::vector<ProjectorSolution> sols;
  auto try_add = [&](const Rvec& seed) {
    auto root = newton_fixed_point(sub, seed, config);
    if (!root) return;
    for (const auto& s : sols)
      if ((s.coords_a - *root).norm() < config.dedupe_tol) return;
    auto sol = realize(sub, *root, config.residual_tol);
    if (sol) sols.push_back(std::move(*sol));
  };

  try_add(Rvec::Zero(m));  // the trivial projector 1
  for (int s = 0; s < config.seeds; ++s) {
    Rvec seed(m);
    for (int i = 0; i < m; ++i) seed(i) = uni(rng);
    try_add(seed);
  }

  std::sort(sols.begin(), sols.end(),
            [](const ProjectorSolution& a, const ProjectorSolution& b) {
              if (a.r != b.r) return a.r > b.r;
              return std::lexicographical_compare(
                  a.coords_a.data(), a.coords_a.data() + a.coords_a.size(),
                  b.coords_a.data(), b.coords_a.data() + b.coords_a.size());
            });

  if (is_tinv3(sub))
    for (auto& sol : sols) tag_family(sol);

  for (size_t i = 0; i < sols.size(); ++i)
    classify_extremality(sub, sols[i], sols, static_cast<int>(i));
  return sols;
}

std::pair<ProjectorSolution, ProjectorSolution> family_trace(
    const ConstraintSubspace& sub, ProjectorFamily family, double a12) {
  if (!is_tinv3(sub))
    throw Error(ErrorCode::invalid_argument,
                "family_trace: requires the T-invariant 3-qubit section");

  double c, disc;
  if (family == ProjectorFamily::Pi3) {
    if (a12 < -1.0 - 1e-12 || a12 > 1.0 / 3.0 + 1e-12)
      throw Error(ErrorCode::domain_error, "family_trace: a12 outside [-1, 1/3]");
    c = 0.25;
    disc = -3.0 * a12 * a12 - 2.0 * a12 + 1.0;
  } else {
    if (a12 < -1.0 / 9.0 - 1e-12 || a12 > 1.0 / 3.0 + 1e-12)
      throw Error(ErrorCode::domain_error, "family_trace: a12 outside [-1/9, 1/3]");
    c = 0.75;
    disc = -27.0 * a12 * a12 + 6.0 * a12 + 1.0;
  }
  if (disc < -1e-12)
    throw Error(ErrorCode::domain_error, "family_trace: negative discriminant");
  double root = std::sqrt(std::max(0.0, disc));

  auto build = [&](double sign) {
    ProjectorSolution sol;
    Rvec a(3);
    a(0) = a12;
    if (family == ProjectorFamily::Pi3) {
      // coords order ((1 2), (2 3), (1 3))
      a(1) = -(a12 + sign * root + 1.0) / 2.0;  // (2 3)
      a(2) = -(a12 - sign * root + 1.0) / 2.0;  // (1 3)
      sol.family = "Pi3";
    } else {
      a(1) = (-3.0 * a12 + sign * root + 1.0) / 6.0;
      a(2) = (-3.0 * a12 - sign * root + 1.0) / 6.0;
      sol.family = "Pi4";
    }
    sol.coords_a = a;
    sol.c = c;
    sol.r = static_cast<int>(std::lround(c * sub.D));
    sol.param = a12;
    Cmat pi = solution_projector(sub, sol);
    sol.residual = max_abs(pi * pi - pi);
    if (sol.residual > 1e-10)
      throw Error(ErrorCode::domain_error, "family_trace: projector residual too large");
    return sol;
  };
  return {build(1.0), build(-1.0)};
}

void classify_extremality(const ConstraintSubspace& sub, ProjectorSolution& sol,
                          const std::vector<ProjectorSolution>& others,
                          int self_index) {
  Cmat pi = solution_projector(sub, sol);
  const int n = static_cast<int>(others.size());
  std::vector<Cmat> dense(n);
  for (int i = 0; i < n; ++i) dense[i] = solution_projector(sub, others[i]);

  // candidates ordered by ascending rank so decompositions prefer the
  // lowest-rank (extreme) parts
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (i != self_index && others[i].r < sol.r) order.push_back(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return others[a].r < others[b].r; });

  // Backtracking: peel listed projectors with range inside R. A leftover
  // that is itself idempotent still witnesses compositeness (its partner
  // simply was not hit by the seeding), recorded as remainder_rank.
  int remainder_rank = 0;
  std::function<bool(const Cmat&, int, std::vector<int>&)> decompose =
      [&](const Cmat& rem, int rank, std::vector<int>& parts) -> bool {
    if (rank == 0) return max_abs(rem) < kDecompTol;
    for (int j : order) {
      if (others[j].r > rank) continue;
      if (others[j].r == rank && max_abs(rem - dense[j]) < kDecompTol) {
        parts.push_back(j);
        return true;
      }
      if (others[j].r < rank && max_abs(rem * dense[j] - dense[j]) < kDecompTol) {
        parts.push_back(j);
        if (decompose(rem - dense[j], rank - others[j].r, parts)) return true;
        parts.pop_back();
      }
    }
    if (!parts.empty() && herm_defect(rem) < kDecompTol &&
        max_abs(rem * rem - rem) < kDecompTol) {
      remainder_rank = rank;
      return true;
    }
    return false;
  };

  std::vector<int> parts;
  if (decompose(pi, sol.r, parts)) {
    sol.classification = "Composite";
    sol.decomposition = parts;
    sol.remainder_rank = remainder_rank;
  } else {
    sol.classification = "Extreme";
    sol.decomposition.clear();
    sol.remainder_rank = 0;
  }
}

std::string solutions_to_json(const std::vector<ProjectorSolution>& sols,
                              const ConstraintSubspace& sub) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : sols) {
    nlohmann::json e;
    e["coords"] = std::vector<double>(s.coords_a.data(),
                                      s.coords_a.data() + s.coords_a.size());
    e["coord_names"] = std::vector<std::string>(sub.names.begin() + 1, sub.names.end());
    e["c"] = s.c;
    e["r"] = s.r;
    e["residual"] = s.residual;
    e["class"] = s.classification;
    if (!s.decomposition.empty()) e["decomposition"] = s.decomposition;
    if (s.remainder_rank > 0) e["remainder_rank"] = s.remainder_rank;
    if (!s.family.empty()) e["family"] = s.family;
    if (s.param) e["param"] = *s.param;
    j.push_back(std::move(e));
  }
  return j.dump(2);
}

}  // namespace qsq
