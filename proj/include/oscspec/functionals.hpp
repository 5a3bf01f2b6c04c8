#pragma once

// Variational layer: norm, Rayleigh quotient, discrete functional gradient,
// global normalization constraint and its multiplier.

#include <cstddef>
#include <vector>

#include "oscspec/model.hpp"
#include "oscspec/oscillator.hpp"

namespace oscspec {

enum class QuadratureRule { Trapezoid, Simpson };

struct FunctionalValue {
  double value = 0.0;
  QuadratureRule quadrature = QuadratureRule::Simpson;
  std::size_t grid_points = 0;
  bool boundary_warning = false;  // set when the decay precondition fails
};

struct ConstraintReport {
  double phi = 0.0;                    // 1 - integral(psi^2)
  double multiplier = 0.0;             // lambda = m E / hbar^2
  double stationarity_residual = 0.0;  // sup|H psi - E psi| / sup|psi|
};

// Quadrature weights on a uniform grid: composite Simpson when the point count
// is odd, trapezoid otherwise.
std::vector<double> quadrature_weights(const Grid& grid, QuadratureRule* rule_out = nullptr);

FunctionalValue norm(const Trajectory& traj);

Trajectory normalize(const Trajectory& traj);

FunctionalValue rayleigh_quotient(const Trajectory& traj, const PotentialSpec& spec,
                                  const PhysicalConstants& constants);

// E[psi] discretized purely in terms of the psi samples (forward-difference
// kinetic term, trapezoid potential and norm).  This is the functional whose
// analytic gradient functional_gradient returns; tests difference it directly.
double discrete_energy(const Trajectory& traj, const PotentialSpec& spec,
                       const PhysicalConstants& constants);

// Gradient of discrete_energy with respect to each interior sample; endpoint
// components are zero (boundary values held fixed).
std::vector<double> functional_gradient(const Trajectory& traj, const PotentialSpec& spec,
                                        const PhysicalConstants& constants);

ConstraintReport constraint_report(const Trajectory& traj, const PotentialSpec& spec,
                                   const PhysicalConstants& constants);

// Quadrature of (1/2)[(psi')^2 - omega^2 psi^2].
FunctionalValue action_value(const Trajectory& traj, const FrequencyProfile& profile);

// Quadrature overlap <t1, t2>.
double overlap(const Trajectory& t1, const Trajectory& t2);

}  // namespace oscspec
