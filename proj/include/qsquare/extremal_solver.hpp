#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsquare/werner_sets.hpp"

namespace qsq {

struct ProjectorSolution {
  Rvec coords_a;       // section Bloch coordinates
  double c = 0;        // prefactor, = r/D
  int r = 0;           // projector rank
  double residual = 0; // max-norm of Pi^2 - Pi

  std::string family;                 // "Pi3" / "Pi4" when on a known family
  std::optional<double> param;        // family parameter value

  std::string classification;         // "Extreme" or "Composite"
  std::vector<int> decomposition;     // indices into the solution list
  int remainder_rank = 0;             // rank of a projector remainder not in the list
};

struct SolveConfig {
  int seeds = 1000;
  uint64_t rng_seed = 20240901;
  double seed_range = 1.5;
  int max_newton = 100;
  double newton_tol = 1e-12;
  double dedupe_tol = 1e-6;
  double residual_tol = 1e-9;
};

// Dense projector realized by a solution: Pi = c (1 + sum a_i B_i).
Cmat solution_projector(const ConstraintSubspace& sub, const ProjectorSolution& sol);

// Newton iteration on the fixed-point system of the section squaring map
// (projector solutions are exactly its fixed points), seeded from a random
// grid, deduplicated and dense-verified. Classification (Extreme/Composite)
// is filled in over the returned list.
std::vector<ProjectorSolution> solve_projectors(const ConstraintSubspace& sub,
                                                const SolveConfig& config = {});

enum class ProjectorFamily { Pi3, Pi4 };

// Closed-form one-parameter families of the T-invariant three-qubit section.
// Returns the (+, -) branch pair; throws outside the printed parameter domain.
std::pair<ProjectorSolution, ProjectorSolution> family_trace(
    const ConstraintSubspace& sub, ProjectorFamily family, double a12);

// Attempts to write sol as a sum of other solutions with mutually orthogonal
// ranges; fills classification and decomposition.
void classify_extremality(const ConstraintSubspace& sub, ProjectorSolution& sol,
                          const std::vector<ProjectorSolution>& others,
                          int self_index = -1);

std::string solutions_to_json(const std::vector<ProjectorSolution>& sols,
                              const ConstraintSubspace& sub);

}  // namespace qsq
