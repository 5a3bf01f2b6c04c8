#include "oscspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oscspec/functionals.hpp"

namespace oscspec {

namespace {

constexpr double kNodeZeroFraction = 1e-14;

bool is_well(const PotentialSpec& spec) {
  return std::holds_alternative<InfiniteWell>(spec);
}

double min_potential_on_grid(const SolverSetup& s) {
  double vmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.grid.n_points; ++i) {
    const double v = evaluate_potential(s.potential, s.constants, s.grid.x(i));
    if (!std::isfinite(v)) throw SolverError("potential is not finite on the grid");
    vmin = std::min(vmin, v);
  }
  return vmin;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Internal shot result: everything the root-finder needs.
struct Shot {
  ShootingReport report;
  // sign of the log-derivative defect dL - dR, computed pole-safely; the
  // defect is strictly decreasing in E between its poles, so within the
  // node-count plateau containing E_n it is positive below and negative above.
  int defect_sign = 0;
};

std::size_t count_nodes_range(const std::vector<double>& psi, std::size_t lo,
                              std::size_t hi) {
  double amax = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) amax = std::max(amax, std::abs(psi[i]));
  const double thr = kNodeZeroFraction * amax;
  std::size_t count = 0;
  int prev = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (std::abs(psi[i]) <= thr) continue;
    const int s = sign_of(psi[i]);
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

Shot shoot_impl(double energy, const SolverSetup& setup, Trajectory* assembled_out) {
  const Grid& grid = setup.grid;
  const std::size_t n = grid.n_points;
  const FrequencyProfile profile =
      frequency_profile(setup.constants, setup.potential, energy, grid, setup.convention);

  Shot shot;
  shot.report.energy = energy;

  if (is_well(setup.potential)) {
    // Dirichlet mode: one-sided integration from the left wall, rooting psi
    // at the far wall.
    Trajectory traj = integrate(profile, {0, 0.0, 1.0, Direction::LeftToRight});
    double amax = 0.0;
    for (double v : traj.psi) amax = std::max(amax, std::abs(v));
    shot.report.match_index = n - 1;
    shot.report.mismatch = traj.psi[n - 1] / amax;
    shot.report.node_count = count_nodes_range(traj.psi, 1, n - 2);
    shot.report.growth_log2 = 0.0;
    const int parity = (shot.report.node_count % 2 == 0) ? 1 : -1;
    shot.defect_sign = sign_of(traj.psi[n - 1]) * parity;
    if (assembled_out) *assembled_out = std::move(traj);
    return shot;
  }

  const double v_lo = evaluate_potential(setup.potential, setup.constants, grid.x_min);
  const double v_hi = evaluate_potential(setup.potential, setup.constants, grid.x_max);
  if (!(v_lo > energy) || !(v_hi > energy))
    throw SolverError("grid ends are not classically forbidden at E=" +
                      std::to_string(energy));

  // match at the rightmost interior turning point; an energy with no
  // classically allowed point (E below min V) has no bounded solution at all
  std::size_t m = 0;
  for (std::size_t i = n - 2; i >= 1; --i) {
    if (profile.omega_sq[i] >= 0.0) {
      m = i;
      break;
    }
    if (i == 1) break;
  }
  if (m == 0)
    throw SolverError("no classically allowed region at E=" + std::to_string(energy));

  const double decay_l = std::sqrt(std::max(-profile.omega_sq.front(), 0.0));
  const double decay_r = std::sqrt(std::max(-profile.omega_sq.back(), 0.0));
  Trajectory left = integrate(profile, {0, 1.0, decay_l, Direction::LeftToRight});
  Trajectory right =
      integrate(profile, {n - 1, 1.0, -decay_r, Direction::RightToLeft});

  // tail-growth indicator from the single-direction sweep
  double interior_max = 0.0;
  for (std::size_t i = 0; i <= m; ++i)
    interior_max = std::max(interior_max, std::abs(left.psi[i]));
  const double tail = std::max(std::abs(left.psi[n - 1]),
                               std::numeric_limits<double>::denorm_min());
  shot.report.growth_log2 = std::log2(tail) - std::log2(interior_max);

  const double pl = left.psi[m], dl = left.dpsi[m];
  const double pr = right.psi[m], dr = right.dpsi[m];
  const double log_l = dl / (pl != 0.0 ? pl : std::numeric_limits<double>::min());
  const double log_r = dr / (pr != 0.0 ? pr : std::numeric_limits<double>::min());
  shot.report.match_index = m;
  shot.report.mismatch =
      (log_l - log_r) / (std::abs(log_l) + std::abs(log_r) + 1.0);
  const double sl = std::hypot(pl, dl), sr = std::hypot(pr, dr);
  shot.defect_sign =
      sign_of((dl / sl) * (pr / sr) - (dr / sr) * (pl / sl)) * sign_of(pl) * sign_of(pr);
  if (shot.defect_sign == 0) shot.defect_sign = sign_of(shot.report.mismatch);

  // assemble: left piece up to m, right piece scaled to match at m
  Trajectory traj;
  traj.grid = grid;
  traj.psi.assign(n, 0.0);
  traj.dpsi.assign(n, 0.0);
  traj.provenance = Integrated{Direction::LeftToRight};
  traj.rescale_exponent = left.rescale_exponent;
  double scale = (pr != 0.0) ? pl / pr : dl / dr;
  if (!std::isfinite(scale)) scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    traj.psi[i] = left.psi[i];
    traj.dpsi[i] = left.dpsi[i];
  }
  for (std::size_t i = m; i < n; ++i) {
    traj.psi[i] = right.psi[i] * scale;
    traj.dpsi[i] = right.dpsi[i] * scale;
  }
  shot.report.node_count = count_nodes_range(traj.psi, 1, n - 2);
  if (assembled_out) *assembled_out = std::move(traj);
  return shot;
}

// true iff E lies above the n-th eigenvalue
bool above_level(const Shot& shot, std::size_t n) {
  if (shot.report.node_count != n) return shot.report.node_count > n;
  return shot.defect_sign < 0;
}

SolverSetup widened(const SolverSetup& setup, double factor) {
  SolverSetup out = setup;
  const double mid = 0.5 * (setup.grid.x_min + setup.grid.x_max);
  const double half = 0.5 * (setup.grid.x_max - setup.grid.x_min) * factor;
  const double h = setup.grid.spacing();
  std::size_t pts = static_cast<std::size_t>(std::ceil(2.0 * half / h)) + 1;
  if (pts % 2 == 0) ++pts;  // keep Simpson-compatible
  out.grid = Grid{mid - half, mid + half, pts};
  return out;
}

}  // namespace

ShootingReport shoot(double energy, const SolverSetup& setup) {
  return shoot_impl(energy, setup, nullptr).report;
}

ShootingReport shoot_assembled(double energy, const SolverSetup& setup, Trajectory* out) {
  return shoot_impl(energy, setup, out).report;
}

std::size_t count_nodes(const Trajectory& traj) {
  if (traj.grid.n_points < 3) return 0;
  return count_nodes_range(traj.psi, 1, traj.grid.n_points - 2);
}

std::pair<double, double> bracket_level(std::size_t n, double e_lo, double e_hi,
                                        const SolverSetup& setup) {
  if (!(e_lo < e_hi)) throw SolverError("bracket_level: empty energy range");
  auto nodes = [&](double e) { return shoot(e, setup).node_count; };

  const double vmin = min_potential_on_grid(setup);
  e_lo = std::max(e_lo, vmin);
  std::size_t lo_nodes = nodes(e_lo);
  std::size_t expansions = 0;
  while (lo_nodes > n) {
    const double w = e_hi - e_lo;
    e_lo = std::max(e_lo - w, vmin);
    if (++expansions > setup.max_bracket_expansions)
      throw SolverError("bracket_level: no bracket below for level " + std::to_string(n));
    lo_nodes = nodes(e_lo);
  }
  std::size_t hi_nodes = nodes(e_hi);
  while (hi_nodes <= n) {
    const double w = e_hi - e_lo;
    e_hi += w;
    if (++expansions > setup.max_bracket_expansions)
      throw SolverError("bracket_level: no bracket above for level " + std::to_string(n));
    hi_nodes = nodes(e_hi);
  }

  // bisect on node count until the counts pin exactly one level-n eigenvalue
  std::size_t iter = 0;
  while (lo_nodes != n || hi_nodes != n + 1) {
    if (++iter > setup.max_iterations)
      throw SolverError("bracket_level: node-count bisection stalled for level " +
                        std::to_string(n));
    const double mid = 0.5 * (e_lo + e_hi);
    const std::size_t c = nodes(mid);
    if (c <= n) {
      e_lo = mid;
      lo_nodes = c;
    } else {
      e_hi = mid;
      hi_nodes = c;
    }
  }
  return {e_lo, e_hi};
}

Eigenpair find_eigenvalue(std::size_t n, const SolverSetup& setup) {
  SolverSetup local = setup;
  const bool well = is_well(setup.potential);

  for (std::size_t extension = 0;; ++extension) {
    const double vmin = min_potential_on_grid(local);
    const double span0 = std::max(1.0, std::abs(vmin) * 0.5);
    auto [a, b] = bracket_level(n, vmin, vmin + span0, local);

    Shot sa = shoot_impl(a, local, nullptr);
    if (above_level(sa, n)) {
      // the count plateau extends past E_n; fall back to a point certainly below
      a = vmin;
      sa = shoot_impl(a, local, nullptr);
      if (above_level(sa, n))
        throw SolverError("find_eigenvalue: no lower bound for level " + std::to_string(n));
    }
    Shot sb = shoot_impl(b, local, nullptr);

    std::size_t iter = 0;
    while (b - a > local.tol_energy) {
      if (++iter > local.max_iterations)
        throw SolverError("find_eigenvalue: max iterations for level " + std::to_string(n));
      double e_next;
      const double w = b - a;
      const double fa = sa.report.mismatch, fb = sb.report.mismatch;
      if (w < 1e-4 * std::abs(a) + 1e-12 && fa * fb < 0.0) {
        // secant step on the mismatch, clamped inside the bracket
        e_next = a - fa * w / (fb - fa);
        e_next = std::clamp(e_next, a + 0.01 * w, b - 0.01 * w);
      } else {
        e_next = 0.5 * (a + b);
      }
      Shot sm = shoot_impl(e_next, local, nullptr);
      if (above_level(sm, n)) {
        b = e_next;
        sb = std::move(sm);
      } else {
        a = e_next;
        sa = std::move(sm);
      }
    }

    const double energy = 0.5 * (a + b);
    Trajectory assembled;
    Shot final_shot = shoot_impl(energy, local, &assembled);
    if (final_shot.report.node_count != n) {
      // converged midpoint landed a hair on the wrong side of the numerical
      // eigenvalue; the bracket endpoint with the right count is within tol_E
      const double side = (final_shot.report.node_count > n) ? a : b;
      final_shot = shoot_impl(side, local, &assembled);
    }

    Trajectory normalized = normalize(assembled);
    normalized.rescale_exponent = 0;

    double amax = 0.0;
    for (double v : normalized.psi) amax = std::max(amax, std::abs(v));
    const bool decayed = std::abs(normalized.psi.front()) <= 1e-6 * amax &&
                         std::abs(normalized.psi.back()) <= 1e-6 * amax;
    if (!well && !decayed && extension < local.max_domain_extensions) {
      local = widened(local, 1.25);
      continue;
    }

    Eigenpair pair;
    pair.n = n;
    pair.energy = final_shot.report.energy;
    pair.node_count = final_shot.report.node_count;
    pair.mismatch_residual = std::abs(final_shot.report.mismatch);
    pair.norm_residual = std::abs(norm(normalized).value - 1.0);
    pair.trajectory = std::move(normalized);
    return pair;
  }
}

std::vector<Eigenpair> solve_spectrum(std::size_t k, const SolverSetup& setup) {
  if (k < 1) throw SolverError("solve_spectrum: need at least one level");
  std::vector<Eigenpair> levels;
  levels.reserve(k);
  for (std::size_t n = 0; n < k; ++n) {
    try {
      levels.push_back(find_eigenvalue(n, setup));
    } catch (const std::exception& e) {
      throw SolverError("level " + std::to_string(n) + ": " + e.what());
    }
  }
  std::sort(levels.begin(), levels.end(),
            [](const Eigenpair& x, const Eigenpair& y) { return x.energy < y.energy; });
  return levels;
}

std::vector<ShootingReport> sweep_mismatch(double e_min, double e_max,
                                           std::size_t samples,
                                           const SolverSetup& setup) {
  if (!(e_min < e_max)) throw SolverError("sweep_mismatch: need e_min < e_max");
  if (samples < 2) throw SolverError("sweep_mismatch: need at least 2 samples");
  std::vector<ShootingReport> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double e =
        e_min + (e_max - e_min) * static_cast<double>(i) / static_cast<double>(samples - 1);
    try {
      out.push_back(shoot(e, setup));
    } catch (const std::exception& ex) {
      ShootingReport r;
      r.energy = e;
      r.error = ex.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace oscspec
