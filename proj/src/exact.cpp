#include "oscspec/exact.hpp"

#include <cmath>
#include <numbers>

namespace oscspec {

namespace {

// Normalized Hermite-function recurrence at a single point.  phi_k includes
// the Gaussian factor, so every intermediate stays bounded by O(1) and the
// evaluation is overflow-safe point by point.
//   phi_0 = pi^{-1/4} e^{-xi^2/2}
//   phi_{k+1} = sqrt(2/(k+1)) xi phi_k - sqrt(k/(k+1)) phi_{k-1}
// Derivative from the ladder identity d/dxi phi_n = sqrt(n/2) phi_{n-1}
//                                                 - sqrt((n+1)/2) phi_{n+1}.
std::pair<double, double> hermite_scaled(std::size_t n, double xi) {
  const double phi0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
  double prev = 0.0, cur = phi0;
  for (std::size_t k = 0; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double next =
        std::sqrt(2.0 / (kd + 1.0)) * xi * cur - std::sqrt(kd / (kd + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  // phi_{n+1} for the ladder derivative
  const double nd = static_cast<double>(n);
  const double next =
      std::sqrt(2.0 / (nd + 1.0)) * xi * cur - std::sqrt(nd / (nd + 1.0)) * prev;
  const double dphi = std::sqrt(nd / 2.0) * prev - std::sqrt((nd + 1.0) / 2.0) * next;
  return {cur, dphi};
}

}  // namespace

std::pair<double, double> hermite_point(std::size_t n, const PhysicalConstants& constants,
                                        double omega0, double x) {
  if (n > kMaxHermiteLevel)
    throw std::invalid_argument("hermite_point: level beyond recurrence stability bound");
  const double alpha = std::sqrt(constants.mass * omega0 / constants.hbar);
  auto [phi, dphi] = hermite_scaled(n, alpha * x);
  // psi_n(x) = sqrt(alpha) phi_n(alpha x) keeps quadrature norm 1 in x
  return {std::sqrt(alpha) * phi, std::sqrt(alpha) * alpha * dphi};
}

Trajectory hermite_eigenfunction(std::size_t n, const PhysicalConstants& constants,
                                 double omega0, const Grid& grid) {
  if (n > kMaxHermiteLevel)
    throw std::invalid_argument("hermite_eigenfunction: level beyond stability bound");
  Trajectory traj;
  traj.grid = grid;
  traj.psi.resize(grid.n_points);
  traj.dpsi.resize(grid.n_points);
  traj.provenance = ClosedForm{"hermite_n" + std::to_string(n)};
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    auto [p, dp] = hermite_point(n, constants, omega0, grid.x(i));
    traj.psi[i] = p;
    traj.dpsi[i] = dp;
  }
  return traj;
}

HarmonicEnergy harmonic_energy(std::size_t n, const PhysicalConstants& constants,
                               double omega0) {
  if (omega0 == 0.0) return {0.0, true};
  return {(static_cast<double>(n) + 0.5) * constants.hbar * omega0, false};
}

FrequencyProfile oscillator_frequency_for_level(std::size_t n,
                                                const PhysicalConstants& constants,
                                                double omega0, const Grid& grid,
                                                Convention convention) {
  const double energy = harmonic_energy(n, constants, omega0).energy;
  return frequency_profile(constants, Harmonic{omega0}, energy, grid, convention);
}

ReverseDirectionReport verify_reverse_direction(std::size_t n,
                                                const PhysicalConstants& constants,
                                                double omega0, const Grid& grid) {
  const Trajectory psi = hermite_eigenfunction(n, constants, omega0, grid);
  ReverseDirectionReport report;
  report.n = n;
  report.energy = harmonic_energy(n, constants, omega0).energy;
  report.residual_faithful = residual(
      psi, oscillator_frequency_for_level(n, constants, omega0, grid, Convention::Faithful));
  report.residual_paper = residual(
      psi,
      oscillator_frequency_for_level(n, constants, omega0, grid, Convention::PaperEq11));
  // turning points from E = V: |x| = sqrt(2 E / (m omega0^2))
  const double xt = std::sqrt(2.0 * report.energy /
                              (constants.mass * omega0 * omega0));
  report.turning_left = -xt;
  report.turning_right = xt;
  return report;
}

std::pair<double, Trajectory> infinite_well_level(std::size_t n,
                                                  const PhysicalConstants& constants,
                                                  double width, const Grid& grid) {
  if (grid.x_min < 0.0 || grid.x_max > width)
    throw std::domain_error("infinite_well_level: grid outside [0, width]");
  const double nd = static_cast<double>(n) + 1.0;
  const double pi = std::numbers::pi;
  const double energy = nd * nd * pi * pi * constants.hbar * constants.hbar /
                        (2.0 * constants.mass * width * width);
  Trajectory traj;
  traj.grid = grid;
  traj.psi.resize(grid.n_points);
  traj.dpsi.resize(grid.n_points);
  traj.provenance = ClosedForm{"well_n" + std::to_string(n)};
  const double amp = std::sqrt(2.0 / width);
  const double k = nd * pi / width;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    traj.psi[i] = amp * std::sin(k * x);
    traj.dpsi[i] = amp * k * std::cos(k * x);
  }
  if (grid.x_min == 0.0) traj.psi.front() = 0.0;
  if (grid.x_max == width) traj.psi.back() = 0.0;
  return {energy, std::move(traj)};
}

}  // namespace oscspec
