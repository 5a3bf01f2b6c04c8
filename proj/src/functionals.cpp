#include "oscspec/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace oscspec {

namespace {

constexpr double kNormGuard = 1e-300;
constexpr double kDecayFraction = 1e-6;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> quadrature_weights(const Grid& grid, QuadratureRule* rule_out) {
  const std::size_t n = grid.n_points;
  const double h = grid.spacing();
  std::vector<double> w(n);
  if (n % 2 == 1) {
    if (rule_out) *rule_out = QuadratureRule::Simpson;
    w[0] = w[n - 1] = h / 3.0;
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = (i % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
  } else {
    if (rule_out) *rule_out = QuadratureRule::Trapezoid;
    w[0] = w[n - 1] = h / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = h;
  }
  return w;
}

FunctionalValue norm(const Trajectory& traj) {
  QuadratureRule rule;
  const auto w = quadrature_weights(traj.grid, &rule);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * traj.psi[i] * traj.psi[i];
  return {std::sqrt(std::max(s, 0.0)), rule, traj.grid.n_points, false};
}

Trajectory normalize(const Trajectory& traj) {
  const double n = norm(traj).value;
  if (!(n > kNormGuard)) throw std::invalid_argument("normalize: zero-norm trajectory");
  Trajectory out = traj;
  for (double& v : out.psi) v /= n;
  for (double& v : out.dpsi) v /= n;
  return out;
}

FunctionalValue rayleigh_quotient(const Trajectory& traj, const PotentialSpec& spec,
                                  const PhysicalConstants& constants) {
  QuadratureRule rule;
  const auto w = quadrature_weights(traj.grid, &rule);
  const double amax = max_abs(traj.psi);
  if (amax == 0.0) throw std::invalid_argument("rayleigh_quotient: zero trajectory");
  const bool warn = std::abs(traj.psi.front()) > kDecayFraction * amax ||
                    std::abs(traj.psi.back()) > kDecayFraction * amax;
  const double kin = constants.hbar * constants.hbar / (2.0 * constants.mass);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double p = traj.psi[i], dp = traj.dpsi[i];
    const double v = evaluate_potential(spec, constants, traj.grid.x(i));
    num += w[i] * (kin * dp * dp + v * p * p);
    den += w[i] * p * p;
  }
  return {num / den, rule, traj.grid.n_points, warn};
}

double discrete_energy(const Trajectory& traj, const PotentialSpec& spec,
                       const PhysicalConstants& constants) {
  const std::size_t n = traj.grid.n_points;
  const double h = traj.grid.spacing();
  const double kin = constants.hbar * constants.hbar / (2.0 * constants.mass);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = (traj.psi[i + 1] - traj.psi[i]) / h;
    num += kin * d * d * h;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double wt = (i == 0 || i + 1 == n) ? h / 2.0 : h;
    const double v = evaluate_potential(spec, constants, traj.grid.x(i));
    num += wt * v * traj.psi[i] * traj.psi[i];
    den += wt * traj.psi[i] * traj.psi[i];
  }
  if (!(den > kNormGuard)) throw std::invalid_argument("discrete_energy: zero-norm input");
  return num / den;
}

std::vector<double> functional_gradient(const Trajectory& traj, const PotentialSpec& spec,
                                        const PhysicalConstants& constants) {
  const std::size_t n = traj.grid.n_points;
  const double h = traj.grid.spacing();
  const double kin = constants.hbar * constants.hbar / (2.0 * constants.mass);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = (traj.psi[i + 1] - traj.psi[i]) / h;
    num += kin * d * d * h;
  }
  std::vector<double> vpot(n);
  for (std::size_t i = 0; i < n; ++i) {
    vpot[i] = evaluate_potential(spec, constants, traj.grid.x(i));
    const double wt = (i == 0 || i + 1 == n) ? h / 2.0 : h;
    num += wt * vpot[i] * traj.psi[i] * traj.psi[i];
    den += wt * traj.psi[i] * traj.psi[i];
  }
  if (!(den > kNormGuard))
    throw std::invalid_argument("functional_gradient: zero-norm input");
  const double energy = num / den;
  std::vector<double> grad(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lap = (traj.psi[i + 1] - 2.0 * traj.psi[i] + traj.psi[i - 1]) / h;
    const double dnum = -2.0 * kin * lap + 2.0 * h * vpot[i] * traj.psi[i];
    const double dden = 2.0 * h * traj.psi[i];
    grad[i] = (dnum - energy * dden) / den;
  }
  return grad;
}

ConstraintReport constraint_report(const Trajectory& traj, const PotentialSpec& spec,
                                   const PhysicalConstants& constants) {
  const double n2 = [&] {
    const double n = norm(traj).value;
    return n * n;
  }();
  const double energy = rayleigh_quotient(traj, spec, constants).value;
  ConstraintReport report;
  report.phi = 1.0 - n2;
  report.multiplier = constants.mass / (constants.hbar * constants.hbar) * energy;

  const std::size_t n = traj.grid.n_points;
  const double h2 = traj.grid.spacing() * traj.grid.spacing();
  const double kin = constants.hbar * constants.hbar / (2.0 * constants.mass);
  const double amax = max_abs(traj.psi);
  if (amax == 0.0) throw std::invalid_argument("constraint_report: zero trajectory");
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double d2 = (-traj.psi[i - 2] + 16.0 * traj.psi[i - 1] - 30.0 * traj.psi[i] +
                       16.0 * traj.psi[i + 1] - traj.psi[i + 2]) /
                      (12.0 * h2);
    const double v = evaluate_potential(spec, constants, traj.grid.x(i));
    worst = std::max(worst, std::abs(-kin * d2 + (v - energy) * traj.psi[i]));
  }
  report.stationarity_residual = worst / amax;
  return report;
}

FunctionalValue action_value(const Trajectory& traj, const FrequencyProfile& profile) {
  if (traj.grid != profile.grid)
    throw std::invalid_argument("action_value: grid mismatch");
  QuadratureRule rule;
  const auto w = quadrature_weights(traj.grid, &rule);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    s += w[i] * 0.5 *
         (traj.dpsi[i] * traj.dpsi[i] - profile.omega_sq[i] * traj.psi[i] * traj.psi[i]);
  return {s, rule, traj.grid.n_points, false};
}

double overlap(const Trajectory& t1, const Trajectory& t2) {
  if (t1.grid != t2.grid) throw std::invalid_argument("overlap: grid mismatch");
  const auto w = quadrature_weights(t1.grid);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * t1.psi[i] * t2.psi[i];
  return s;
}

}  // namespace oscspec
