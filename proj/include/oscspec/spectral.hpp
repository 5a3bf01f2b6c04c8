#pragma once

// Shooting solver: integrate classical trajectories from both ends, match
// log-derivatives at the rightmost interior turning point, bracket by node
// count, converge the energy.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oscspec/model.hpp"
#include "oscspec/oscillator.hpp"

namespace oscspec {

struct ShootingReport {
  double energy = 0.0;
  double mismatch = 0.0;  // scaled log-derivative defect at the match point
  std::size_t node_count = 0;
  std::size_t match_index = 0;
  // tail-growth indicator: log2(boundary magnitude / interior max) of the
  // single-direction sweep; diverges for non-eigen energies
  double growth_log2 = 0.0;
  std::optional<std::string> error;  // set by sweep_mismatch on failure
};

struct Eigenpair {
  std::size_t n = 0;
  double energy = 0.0;
  Trajectory trajectory;  // normalized
  double norm_residual = 0.0;
  std::size_t node_count = 0;
  double mismatch_residual = 0.0;
};

struct SolverSetup {
  PhysicalConstants constants;
  PotentialSpec potential = Harmonic{1.0};
  Grid grid{-12.0, 12.0, 24001};
  Convention convention = Convention::Faithful;
  double tol_energy = 1e-10;
  std::size_t max_iterations = 200;
  std::size_t max_bracket_expansions = 60;
  std::size_t max_domain_extensions = 5;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two-sided shot at a single energy.  Requires V(x_min), V(x_max) > E (both
// ends classically forbidden); the infinite well instead runs a one-sided
// Dirichlet shot rooting psi at the far wall.
ShootingReport shoot(double energy, const SolverSetup& setup);

// Same shot but also returns the assembled (unnormalized) trajectory.
ShootingReport shoot_assembled(double energy, const SolverSetup& setup, Trajectory* out);

// Interior strict sign changes; samples with |psi| <= 1e-14 max|psi| are
// treated as zero and skipped.
std::size_t count_nodes(const Trajectory& traj);

// Sub-interval with node count == n at the low end and == n+1 at the high end.
std::pair<double, double> bracket_level(std::size_t n, double e_lo, double e_hi,
                                        const SolverSetup& setup);

Eigenpair find_eigenvalue(std::size_t n, const SolverSetup& setup);

std::vector<Eigenpair> solve_spectrum(std::size_t k, const SolverSetup& setup);

std::vector<ShootingReport> sweep_mismatch(double e_min, double e_max, std::size_t samples,
                                           const SolverSetup& setup);

}  // namespace oscspec
