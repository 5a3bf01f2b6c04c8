#include "oscspec/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "oscspec/io.hpp"

namespace oscspec {

namespace {

constexpr double kRescaleThreshold = 1e250;

// y'' = f(x) y with f = -omega^2.  One Numerov step from (y_prev, y_cur) at
// indices i-1, i to index i+1; h signed by direction.
inline double numerov_step(double y_prev, double y_cur, double f_prev, double f_cur,
                           double f_next, double h2) {
  const double c_prev = 1.0 - h2 / 12.0 * f_prev;
  const double c_cur = 1.0 + 5.0 * h2 / 12.0 * f_cur;
  const double c_next = 1.0 - h2 / 12.0 * f_next;
  return (2.0 * y_cur * c_cur - y_prev * c_prev) / c_next;
}

}  // namespace

Trajectory integrate(const FrequencyProfile& profile, const InitialConditions& ic) {
  const Grid& grid = profile.grid;
  const std::size_t n = grid.n_points;
  if (ic.start_index >= n)
    throw std::invalid_argument("integrate: start index outside grid");
  if (ic.psi0 == 0.0 && ic.dpsi0 == 0.0)
    throw std::invalid_argument("integrate: zero initial state");

  const bool forward = ic.direction == Direction::LeftToRight;
  const double h = forward ? grid.spacing() : -grid.spacing();
  const double h2 = h * h;

  // f_i = -omega^2_i
  const std::vector<double>& w2 = profile.omega_sq;
  auto f = [&](std::size_t i) { return -w2[i]; };

  Trajectory traj;
  traj.grid = grid;
  traj.psi.assign(n, 0.0);
  traj.dpsi.assign(n, 0.0);
  traj.provenance = Integrated{ic.direction};

  const std::size_t i0 = ic.start_index;
  traj.psi[i0] = ic.psi0;
  traj.dpsi[i0] = ic.dpsi0;

  const std::size_t steps = forward ? (n - 1 - i0) : i0;
  if (steps == 0) return traj;

  // Taylor first step; f' and f'' from one-sided second-order stencils.
  const auto idx = [&](std::size_t k) { return forward ? i0 + k : i0 - k; };
  double fp = 0.0, fpp = 0.0;
  if (steps >= 2) {
    fp = (-3.0 * f(idx(0)) + 4.0 * f(idx(1)) - f(idx(2))) / (2.0 * h);
    fpp = (f(idx(0)) - 2.0 * f(idx(1)) + f(idx(2))) / h2;
  } else {
    fp = (f(idx(1)) - f(idx(0))) / h;
  }
  {
    const double y = ic.psi0, yp = ic.dpsi0;
    const double f0 = f(i0);
    const double ypp = f0 * y;
    const double yppp = fp * y + f0 * yp;
    const double ypppp = fpp * y + 2.0 * fp * yp + f0 * ypp;
    traj.psi[idx(1)] =
        y + h * yp + h2 / 2.0 * ypp + h2 * h / 6.0 * yppp + h2 * h2 / 24.0 * ypppp;
  }

  int exponent = 0;
  std::size_t last = idx(1);
  for (std::size_t k = 1; k < steps; ++k) {
    const std::size_t ip = idx(k - 1), ic_ = idx(k), in = idx(k + 1);
    double y = numerov_step(traj.psi[ip], traj.psi[ic_], f(ip), f(ic_), f(in), h2);
    if (!std::isfinite(y)) throw IntegrationError("non-finite value", in);
    traj.psi[in] = y;
    last = in;
    if (std::abs(y) > kRescaleThreshold) {
      const int k2 = std::ilogb(std::abs(y));
      for (double& v : traj.psi) v = std::ldexp(v, -k2);
      traj.dpsi[i0] = std::ldexp(traj.dpsi[i0], -k2);
      exponent += k2;
    }
  }
  traj.rescale_exponent = exponent;
  traj.dpsi[i0] = std::ldexp(ic.dpsi0, -exponent);

  // Scheme-consistent derivative: y'_i = (y_{i+1}-y_{i-1})/(2h)
  //                                      - h/12 (f_{i+1} y_{i+1} - f_{i-1} y_{i-1})
  const double hs = grid.spacing();
  const std::size_t lo = forward ? i0 : last;
  const std::size_t hi = forward ? last : i0;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    traj.dpsi[i] = (traj.psi[i + 1] - traj.psi[i - 1]) / (2.0 * hs) -
                   hs / 12.0 * (f(i + 1) * traj.psi[i + 1] - f(i - 1) * traj.psi[i - 1]);
  }
  // far end: 5-point one-sided fourth-order stencil
  if (hi - lo >= 4) {
    const std::size_t e = forward ? hi : lo;
    const double s = forward ? 1.0 : -1.0;
    const auto p = [&](std::size_t k) -> double { return traj.psi[forward ? e - k : e + k]; };
    traj.dpsi[e] =
        s * (25.0 * p(0) - 48.0 * p(1) + 36.0 * p(2) - 16.0 * p(3) + 3.0 * p(4)) /
        (12.0 * hs);
  } else {
    const std::size_t e = forward ? hi : lo;
    traj.dpsi[e] = (hi > lo) ? (traj.psi[hi] - traj.psi[lo]) / (hs * (hi - lo)) : 0.0;
  }
  return traj;
}

double residual(const Trajectory& traj, const FrequencyProfile& profile) {
  if (traj.grid != profile.grid) throw std::invalid_argument("residual: grid mismatch");
  const std::size_t n = traj.grid.n_points;
  if (n < 5) throw std::invalid_argument("residual: need at least 5 points");
  double amax = 0.0;
  for (double v : traj.psi) amax = std::max(amax, std::abs(v));
  if (amax == 0.0) throw std::invalid_argument("residual: trajectory identically zero");
  const double h2 = traj.grid.spacing() * traj.grid.spacing();
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double d2 = (-traj.psi[i - 2] + 16.0 * traj.psi[i - 1] - 30.0 * traj.psi[i] +
                       16.0 * traj.psi[i + 1] - traj.psi[i + 2]) /
                      (12.0 * h2);
    worst = std::max(worst, std::abs(d2 + profile.omega_sq[i] * traj.psi[i]));
  }
  return worst / amax;
}

std::vector<double> wronskian(const Trajectory& t1, const Trajectory& t2) {
  if (t1.grid != t2.grid) throw std::invalid_argument("wronskian: grid mismatch");
  std::vector<double> w(t1.grid.n_points);
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = t1.psi[i] * t2.dpsi[i] - t2.psi[i] * t1.dpsi[i];
  return w;
}

void export_trajectory_csv(const Trajectory& traj, const FrequencyProfile& profile,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "# rescale_exponent=" << traj.rescale_exponent << "\n";
  out << "x,psi,dpsi,omega_sq\n";
  for (std::size_t i = 0; i < traj.grid.n_points; ++i)
    out << format_double(traj.grid.x(i)) << ',' << format_double(traj.psi[i]) << ','
        << format_double(traj.dpsi[i]) << ',' << format_double(profile.omega_sq[i])
        << '\n';
}

}  // namespace oscspec
