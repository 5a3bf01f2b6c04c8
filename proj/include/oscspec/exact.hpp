#pragma once

// Closed-form eigenpairs (harmonic Hermite functions, infinite well) and the
// reverse direction: known spectra produce exact solutions of classical
// oscillators with x-dependent frequency, checked by residual.

#include <cstddef>
#include <functional>
#include <utility>

#include "oscspec/model.hpp"
#include "oscspec/oscillator.hpp"

namespace oscspec {

enum class ClosedFormFamily { HarmonicHermite, InfiniteWellSine };

struct ClosedFormLevel {
  ClosedFormFamily family;
  std::size_t n;
  double parameter;  // omega0 or well width
  double energy;
  std::function<std::pair<double, double>(double)> evaluator;  // x -> (psi, dpsi)
};

constexpr std::size_t kMaxHermiteLevel = 200;

// Normalized Hermite-function eigenstate sampled on the grid; dpsi from the
// ladder identity.
Trajectory hermite_eigenfunction(std::size_t n, const PhysicalConstants& constants,
                                 double omega0, const Grid& grid);

std::pair<double, double> hermite_point(std::size_t n, const PhysicalConstants& constants,
                                        double omega0, double x);

struct HarmonicEnergy {
  double energy;
  bool degenerate;  // omega0 == 0 free-particle limit
};

HarmonicEnergy harmonic_energy(std::size_t n, const PhysicalConstants& constants,
                               double omega0);

FrequencyProfile oscillator_frequency_for_level(std::size_t n,
                                                const PhysicalConstants& constants,
                                                double omega0, const Grid& grid,
                                                Convention convention);

struct ReverseDirectionReport {
  std::size_t n = 0;
  double energy = 0.0;
  double residual_faithful = 0.0;
  double residual_paper = 0.0;
  double turning_left = 0.0;
  double turning_right = 0.0;
};

ReverseDirectionReport verify_reverse_direction(std::size_t n,
                                                const PhysicalConstants& constants,
                                                double omega0, const Grid& grid);

// E = (n+1)^2 pi^2 hbar^2 / (2 m L^2), psi = sqrt(2/L) sin((n+1) pi x / L).
std::pair<double, Trajectory> infinite_well_level(std::size_t n,
                                                  const PhysicalConstants& constants,
                                                  double width, const Grid& grid);

}  // namespace oscspec
